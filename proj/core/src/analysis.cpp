#include "graphsync/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

constexpr double kGapFloor = 1e-14;

double gap_of(const std::vector<double>& state, std::size_t density_components) {
  if (density_components == 1) return std::min(state[0], 1.0 - state[0]);
  const std::size_t m = density_components == 0 ? state.size() : density_components;
  std::size_t top = 0;
  for (std::size_t j = 1; j < m; ++j) {
    if (state[j] > state[top]) top = j;
  }
  double rest = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (j != top) rest += state[j];
  }
  return rest;
}

struct Selection {
  std::vector<double> t;
  std::vector<double> gap;
  TimeWindow window;
  bool truncated = false;
};

Selection select(const Trajectory& traj, std::optional<TimeWindow> window) {
  if (traj.empty()) throw Error(ErrorKind::kInvalidArgument, "empty trajectory");
  const auto gaps = gap_series(traj);
  Selection sel;
  TimeWindow w;
  if (window) {
    w = *window;
  } else {
    std::size_t valid = 0;
    while (valid < gaps.size() && gaps[valid] >= kGapFloor) ++valid;
    if (valid < 3) throw Error(ErrorKind::kInvalidArgument, "gap underflows almost immediately");
    w.t_hi = traj.times[valid - 1];
    w.t_lo = traj.times[0] + 0.5 * (w.t_hi - traj.times[0]);
    sel.truncated = valid < gaps.size();
  }
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    const double t = traj.times[k];
    if (t < w.t_lo || t > w.t_hi) continue;
    if (!(gaps[k] >= kGapFloor)) {
      sel.truncated = true;
      continue;
    }
    sel.t.push_back(t);
    sel.gap.push_back(gaps[k]);
  }
  if (sel.t.size() < 3) throw Error(ErrorKind::kInvalidArgument, "too few records in fit window");
  sel.window = w;
  return sel;
}

}  // namespace

std::optional<std::vector<double>> detect_limit(const Trajectory& trajectory, double tol,
                                                double stall_window) {
  if (trajectory.empty()) throw Error(ErrorKind::kInvalidArgument, "empty trajectory");
  const auto final_density = trajectory.final_density();
  const double t_end = trajectory.final_time();
  const auto& last = trajectory.final_state();
  const std::size_t m =
      trajectory.density_components == 0 ? last.size() : trajectory.density_components;
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    if (trajectory.times[k] < t_end - stall_window) continue;
    for (std::size_t j = 0; j < m; ++j) {
      if (!(std::abs(trajectory.states[k][j] - last[j]) < tol)) return std::nullopt;
    }
  }
  return final_density;
}

std::vector<double> gap_series(const Trajectory& trajectory) {
  std::vector<double> out;
  out.reserve(trajectory.size());
  for (const auto& s : trajectory.states) out.push_back(gap_of(s, trajectory.density_components));
  return out;
}

std::string to_string(GapTransform transform) {
  switch (transform) {
    case GapTransform::kLogGap:
      return "log_gap";
    case GapTransform::kInverseGap:
      return "inverse_gap";
    case GapTransform::kInverseSqGap:
      return "inverse_sq_gap";
  }
  return "unknown";
}

GapTransform parse_transform(const std::string& text) {
  if (text == "log_gap") return GapTransform::kLogGap;
  if (text == "inverse_gap") return GapTransform::kInverseGap;
  if (text == "inverse_sq_gap") return GapTransform::kInverseSqGap;
  throw Error(ErrorKind::kInvalidArgument, "unknown gap transform '" + text + "'");
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "least squares needs matching series of length >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorKind::kInvalidArgument, "degenerate abscissa");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double e = y[k] - (fit.intercept + fit.slope * x[k]);
    ss_res += e * e;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  return fit;
}

RateFit fit_rate(const Trajectory& trajectory, GapTransform transform,
                 std::optional<TimeWindow> window) {
  const auto sel = select(trajectory, window);
  std::vector<double> y;
  y.reserve(sel.gap.size());
  for (double g : sel.gap) {
    switch (transform) {
      case GapTransform::kLogGap:
        y.push_back(std::log(g));
        break;
      case GapTransform::kInverseGap:
        y.push_back(1.0 / g);
        break;
      case GapTransform::kInverseSqGap:
        y.push_back(1.0 / (g * g));
        break;
    }
  }
  const auto line = least_squares(sel.t, y);
  RateFit fit;
  fit.transform = transform;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  fit.window = sel.window;
  fit.samples = sel.t.size();
  fit.truncated = sel.truncated;
  return fit;
}

PowerFit fit_power(const Trajectory& trajectory, std::optional<TimeWindow> window) {
  auto sel = select(trajectory, window);
  std::vector<double> lt;
  std::vector<double> lg;
  for (std::size_t k = 0; k < sel.t.size(); ++k) {
    if (sel.t[k] <= 0.0) continue;
    lt.push_back(std::log(sel.t[k]));
    lg.push_back(std::log(sel.gap[k]));
  }
  if (lt.size() < 3) throw Error(ErrorKind::kInvalidArgument, "too few positive times for power fit");
  const auto line = least_squares(lt, lg);
  PowerFit fit;
  fit.power = -line.slope;
  fit.intercept = line.intercept;
  fit.r_squared = line.r_squared;
  fit.window = sel.window;
  fit.samples = lt.size();
  fit.truncated = sel.truncated;
  return fit;
}

std::string to_string(EdgeVerdict verdict) {
  switch (verdict) {
    case EdgeVerdict::kValuesEqual:
      return "values_equal";
    case EdgeVerdict::kMinVanishes:
      return "min_vanishes";
    case EdgeVerdict::kViolation:
      return "violation";
  }
  return "unknown";
}

std::vector<EdgeReport> edge_dichotomy_report(const Graph& graph, std::span<const double> rho,
                                              double tol) {
  if (rho.size() != graph.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "density does not match the graph size");
  }
  std::vector<EdgeReport> out;
  for (const auto& e : graph.edges()) {
    EdgeReport rep;
    rep.i = e.i + 1;
    rep.j = e.j + 1;
    rep.min_value = std::min(rho[e.i], rho[e.j]);
    rep.abs_difference = std::abs(rho[e.i] - rho[e.j]);
    if (rep.min_value < tol) {
      rep.verdict = EdgeVerdict::kMinVanishes;
    } else if (rep.abs_difference < tol) {
      rep.verdict = EdgeVerdict::kValuesEqual;
    } else {
      rep.verdict = EdgeVerdict::kViolation;
    }
    out.push_back(rep);
  }
  return out;
}

nlohmann::json fit_to_json(const RateFit& fit) {
  return {{"transform", to_string(fit.transform)},
          {"slope", fit.slope},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"window", {fit.window.t_lo, fit.window.t_hi}},
          {"samples", fit.samples},
          {"truncated", fit.truncated}};
}

nlohmann::json fit_to_json(const PowerFit& fit) {
  return {{"power", fit.power},
          {"intercept", fit.intercept},
          {"r_squared", fit.r_squared},
          {"window", {fit.window.t_lo, fit.window.t_hi}},
          {"samples", fit.samples},
          {"truncated", fit.truncated}};
}

nlohmann::json dichotomy_to_json(const std::vector<EdgeReport>& report) {
  auto arr = nlohmann::json::array();
  for (const auto& r : report) {
    arr.push_back({{"edge", {r.i, r.j}},
                   {"verdict", to_string(r.verdict)},
                   {"min", r.min_value},
                   {"abs_difference", r.abs_difference}});
  }
  return arr;
}

}  // namespace graphsync
