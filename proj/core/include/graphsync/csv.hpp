#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "graphsync/integrators.hpp"

namespace graphsync {

// 17 significant digits.
std::string format_double(double value);

// Header "t,<labels...>,<diagnostics...>", one row per record.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);

// "0.3,0.2,0.5" -> {0.3, 0.2, 0.5}. Throws InvalidArgument on bad entries.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace graphsync
