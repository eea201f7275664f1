#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "graphsync/graph.hpp"
#include "graphsync/integrators.hpp"

namespace graphsync {

// Final recorded density if it moved by less than tol (sup-norm) over the
// trailing stall_window time units; nothing otherwise.
std::optional<std::vector<double>> detect_limit(const Trajectory& trajectory, double tol = 1e-8,
                                                double stall_window = 10.0);

// 1 - max_j rho_j per record, summed from the non-maximal components. For
// the reduced two-point coordinate this is min(r, 1 - r).
std::vector<double> gap_series(const Trajectory& trajectory);

enum class GapTransform { kLogGap, kInverseGap, kInverseSqGap };

std::string to_string(GapTransform transform);
// "log_gap" | "inverse_gap" | "inverse_sq_gap"
GapTransform parse_transform(const std::string& text);

struct TimeWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

struct RateFit {
  GapTransform transform = GapTransform::kLogGap;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  TimeWindow window;
  std::size_t samples = 0;
  // Set when records with gap < 1e-14 were dropped from the window.
  bool truncated = false;
};

// Least-squares line through the transformed gap against t. Without a
// window the trailing half of the span where the gap stays >= 1e-14 is used.
// Throws InvalidArgument when fewer than 3 usable records remain.
RateFit fit_rate(const Trajectory& trajectory, GapTransform transform,
                 std::optional<TimeWindow> window = std::nullopt);

// log(gap) against log(t) on the same default window; power = -slope.
struct PowerFit {
  double power = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  TimeWindow window;
  std::size_t samples = 0;
  bool truncated = false;
};

PowerFit fit_power(const Trajectory& trajectory, std::optional<TimeWindow> window = std::nullopt);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares; r_squared is 1 for a perfectly flat response.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

enum class EdgeVerdict { kValuesEqual, kMinVanishes, kViolation };

std::string to_string(EdgeVerdict verdict);

struct EdgeReport {
  std::size_t i = 0;  // 1-based
  std::size_t j = 0;
  EdgeVerdict verdict = EdgeVerdict::kViolation;
  double min_value = 0.0;
  double abs_difference = 0.0;
};

// Each edge either carries equal values or has a vanishing endpoint.
std::vector<EdgeReport> edge_dichotomy_report(const Graph& graph, std::span<const double> rho,
                                              double tol);

nlohmann::json fit_to_json(const RateFit& fit);
nlohmann::json fit_to_json(const PowerFit& fit);
nlohmann::json dichotomy_to_json(const std::vector<EdgeReport>& report);

}  // namespace graphsync
