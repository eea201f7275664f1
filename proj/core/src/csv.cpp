#include "graphsync/csv.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "graphsync/errors.hpp"

namespace graphsync {

std::string format_double(double value) {
  std::ostringstream os;
  os << std::setprecision(17) << value;
  return os.str();
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  out << "t";
  for (const auto& l : trajectory.labels) out << ',' << l;
  for (const auto& d : trajectory.diagnostic_names) out << ',' << d;
  out << '\n';
  out << std::setprecision(17);
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    out << trajectory.times[k];
    for (double v : trajectory.states[k]) out << ',' << v;
    for (double v : trajectory.diagnostics[k]) out << ',' << v;
    out << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIoError, "cannot open " + path.string() + " for writing");
  write_trajectory_csv(out, trajectory);
  if (!out) throw Error(ErrorKind::kIoError, "failed writing " + path.string());
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw Error(ErrorKind::kInvalidArgument, "empty entry in '" + text + "'");
    const std::string trimmed = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(trimmed, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != trimmed.size()) {
      throw Error(ErrorKind::kInvalidArgument, "not a number: '" + trimmed + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::kInvalidArgument, "empty number list");
  return out;
}

}  // namespace graphsync
