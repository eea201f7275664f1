#include "graphsync/first_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

void check_dimension(const Graph& graph, std::size_t size) {
  if (size != graph.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "density has " + std::to_string(size) +
                                                   " components for a graph with " +
                                                   std::to_string(graph.size()) + " vertices");
  }
}

}  // namespace

void validate_density(std::span<const double> rho, double tol) {
  const double sum = std::accumulate(rho.begin(), rho.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= tol)) {
    throw Error(ErrorKind::kSimplexViolation, "density sums to " + std::to_string(sum));
  }
  for (double v : rho) {
    if (!(v >= -tol)) {
      std::ostringstream os;
      os << "negative density component " << v;
      throw Error(ErrorKind::kSimplexViolation, os.str());
    }
  }
}

void rhs_first_order(const Graph& graph, const WeightRule& rule, double kappa,
                     std::span<const double> rho, std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& e : graph.edges()) {
    const double flux = kappa * e.omega * theta(rule, rho[e.i], rho[e.j]) * (rho[e.i] - rho[e.j]);
    out[e.i] += flux;
    out[e.j] -= flux;
  }
}

std::vector<double> rhs_first_order(const Graph& graph, const WeightRule& rule, double kappa,
                                    std::span<const double> rho) {
  check_dimension(graph, rho.size());
  std::vector<double> out(rho.size());
  rhs_first_order(graph, rule, kappa, rho, out);
  return out;
}

Trajectory simulate_first_order(const Graph& graph, const WeightRule& rule, double kappa,
                                std::span<const double> rho0, const IntegratorSpec& spec,
                                const FirstOrderOptions& options) {
  check_dimension(graph, rho0.size());
  validate_density(rho0);
  const std::size_t n = graph.size();

  auto rhs = [&graph, &rule, kappa](StateView x, std::span<double> dx) {
    rhs_first_order(graph, rule, kappa, x, dx);
  };

  IntegrateHooks hooks;
  for (std::size_t j = 0; j < n; ++j) hooks.labels.push_back("rho_" + std::to_string(j + 1));
  hooks.density_components = n;
  hooks.observers.push_back({"sum_sq", [](double, StateView x) { return sum_of_squares(x); }});
  hooks.observers.push_back({"max_gap", [](double, StateView x) { return max_gap(x); }});
  const double clip_tol = options.clip_tol;
  hooks.post_step = [clip_tol](std::span<double> x) {
    const auto projected = project_simplex_clip(x, clip_tol);
    std::copy(projected.begin(), projected.end(), x.begin());
  };
  if (options.stop_when_converged) {
    hooks.stop_when.push_back([&graph, &rule, kappa, tol = options.converged_tol](
                                  double, StateView x) -> std::optional<std::string> {
      std::vector<double> dx(x.size());
      rhs_first_order(graph, rule, kappa, x, dx);
      double sup = 0.0;
      for (double v : dx) sup = std::max(sup, std::abs(v));
      if (sup < tol) return std::string("converged");
      return std::nullopt;
    });
  }
  return integrate(rhs, {rho0.begin(), rho0.end()}, spec, hooks);
}

EquilibriumClass classify_equilibrium(std::span<const double> rho, double tol) {
  EquilibriumClass out;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j] > tol) out.support.push_back(j);
  }
  out.m = out.support.size();
  if (out.m == 0) return out;
  out.value = 1.0 / static_cast<double>(out.m);
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const bool on = std::binary_search(out.support.begin(), out.support.end(), j);
    const double target = on ? out.value : 0.0;
    out.max_deviation = std::max(out.max_deviation, std::abs(rho[j] - target));
  }
  out.is_equilibrium = out.max_deviation <= tol;
  return out;
}

double max_gap(std::span<const double> rho) {
  if (rho.size() < 2) throw Error(ErrorKind::kInvalidArgument, "max_gap needs at least 2 components");
  double first = -std::numeric_limits<double>::infinity();
  double second = first;
  for (double v : rho) {
    if (v > first) {
      second = first;
      first = v;
    } else if (v > second) {
      second = v;
    }
  }
  return first - second;
}

double sum_of_squares(std::span<const double> rho) {
  return std::inner_product(rho.begin(), rho.end(), rho.begin(), 0.0);
}

}  // namespace graphsync
