#include "graphsync/second_order.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

MinBranch branch_of(int mode) {
  if (mode < 0) return MinBranch::kFirst;
  if (mode > 0) return MinBranch::kSecond;
  return MinBranch::kTie;
}

int natural_mode(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }

void check_state(const Graph& graph, const PhaseState& state) {
  if (state.rho.size() != graph.size() || state.S.size() != graph.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "phase state does not match the graph size");
  }
}

std::vector<double> flatten(const PhaseState& state) {
  std::vector<double> x(state.rho);
  x.insert(x.end(), state.S.begin(), state.S.end());
  return x;
}

}  // namespace

RuleEval edge_eval(const WeightRule& rule, double a, double b, int mode) {
  RuleEval ev = evaluate_rule(rule, a, b, branch_of(mode));
  if (!std::isfinite(ev.partials.d_first) || !std::isfinite(ev.partials.d_second)) {
    std::ostringstream os;
    os << "weight derivative is unbounded at (" << a << ", " << b << ")";
    throw Error(ErrorKind::kDegenerateDerivative, os.str());
  }
  return ev;
}

void rhs_second_order(const Graph& graph, const WeightRule& rule, const Potential& potential,
                      std::span<const double> x, std::span<const int> modes, std::span<double> dx) {
  const std::size_t n = graph.size();
  const auto rho = x.subspan(0, n);
  const auto S = x.subspan(n, n);
  auto drho = dx.subspan(0, n);
  auto dS = dx.subspan(n, n);
  std::fill(dx.begin(), dx.end(), 0.0);

  const auto g = node_gradient(potential, rho);
  const auto hess = node_hessian(potential, rho);
  std::vector<double> w(n, 0.0);

  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    const std::size_t i = edge.i;
    const std::size_t j = edge.j;
    const int mode = modes.empty() ? natural_mode(rho[i], rho[j]) : modes[e];
    const RuleEval ev = edge_eval(rule, rho[i], rho[j], mode);
    const double ds = S[i] - S[j];
    const double dg = g[i] - g[j];
    const double flux = edge.omega * ev.theta * ds;
    drho[i] += flux;
    drho[j] -= flux;
    const double kinetic = 0.5 * edge.omega * (dg * dg - ds * ds);
    dS[i] += kinetic * ev.partials.d_first;
    dS[j] += kinetic * ev.partials.d_second;
    const double gflux = edge.omega * ev.theta * dg;
    w[i] += gflux;
    w[j] -= gflux;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += hess(k, j) * w[k];
    dS[j] += acc;
  }
}

PhaseDerivative rhs_second_order(const Graph& graph, const WeightRule& rule,
                                 const Potential& potential, const PhaseState& state) {
  check_state(graph, state);
  const auto x = flatten(state);
  std::vector<double> dx(x.size());
  rhs_second_order(graph, rule, potential, x, {}, dx);
  const auto n = static_cast<std::ptrdiff_t>(graph.size());
  return {{dx.begin(), dx.begin() + n}, {dx.begin() + n, dx.end()}};
}

double hamiltonian(const Graph& graph, const WeightRule& rule, const Potential& potential,
                   const PhaseState& state) {
  check_state(graph, state);
  const auto g = node_gradient(potential, state.rho);
  double h = 0.0;
  for (const auto& e : graph.edges()) {
    const double ds = state.S[e.i] - state.S[e.j];
    const double dg = g[e.i] - g[e.j];
    h += e.omega * theta(rule, state.rho[e.i], state.rho[e.j]) * (ds * ds - dg * dg);
  }
  return 0.5 * h;
}

PhaseState gradient_flow_init(std::span<const double> rho0, const Potential& potential, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::kInvalidArgument, "sign must be +1 or -1");
  PhaseState out;
  out.rho.assign(rho0.begin(), rho0.end());
  out.S = node_gradient(potential, rho0);
  for (double& s : out.S) s *= -static_cast<double>(sign);
  return out;
}

SwitchingFn edge_switching(const Graph& graph) {
  return [&graph](StateView x, std::span<double> g) {
    const auto edges = graph.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) g[e] = x[edges[e].i] - x[edges[e].j];
  };
}

OdeProblem second_order_problem(const Graph& graph, const WeightRule& rule,
                                const Potential& potential) {
  OdeProblem p;
  p.dimension = 2 * graph.size();
  p.rhs = [&graph, &rule, &potential](StateView x, std::span<const int> modes,
                                      std::span<double> dx) {
    rhs_second_order(graph, rule, potential, x, modes, dx);
  };
  if (has_tie_kink(rule)) {
    p.switch_count = graph.edges().size();
    p.switching = edge_switching(graph);
  }
  return p;
}

void check_simplex(std::span<const double> rho, double tol) {
  const double sum = std::accumulate(rho.begin(), rho.end(), 0.0);
  const double lowest = *std::min_element(rho.begin(), rho.end());
  if (!(std::abs(sum - 1.0) <= tol) || !(lowest >= -tol)) {
    std::ostringstream os;
    os << "density left the simplex (sum " << sum << ", min " << lowest << ")";
    throw Error(ErrorKind::kSimplexViolation, os.str());
  }
}

Trajectory simulate_second_order(const Graph& graph, const WeightRule& rule,
                                 const Potential& potential, const PhaseState& state0,
                                 const IntegratorSpec& spec, const SecondOrderOptions& options) {
  check_state(graph, state0);
  const std::size_t n = graph.size();
  check_simplex(state0.rho, options.simplex_tol);

  IntegrateHooks hooks;
  for (std::size_t j = 0; j < n; ++j) hooks.labels.push_back("rho_" + std::to_string(j + 1));
  for (std::size_t j = 0; j < n; ++j) hooks.labels.push_back("S_" + std::to_string(j + 1));
  hooks.density_components = n;
  hooks.observers.push_back({"H", [&, n](double, StateView x) {
                               PhaseState s{{x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)},
                                            {x.begin() + static_cast<std::ptrdiff_t>(n), x.end()}};
                               return hamiltonian(graph, rule, potential, s);
                             }});
  hooks.post_step = [n, tol = options.simplex_tol](std::span<double> x) {
    check_simplex(x.subspan(0, n), tol);
  };
  if (options.synchronization_threshold > 0.0) {
    hooks.stop_when.push_back([n, level = options.synchronization_threshold](
                                  double, StateView x) -> std::optional<std::string> {
      const auto rho = x.subspan(0, n);
      const auto top = std::max_element(rho.begin(), rho.end());
      if (*top <= level) return std::nullopt;
      for (auto it = rho.begin(); it != rho.end(); ++it) {
        if (it != top && *it >= 1.0 - level) return std::nullopt;
      }
      return std::string("synchronized");
    });
  }
  if (options.min_density_stop > 0.0) {
    hooks.stop_when.push_back(
        [n, floor = options.min_density_stop](double, StateView x) -> std::optional<std::string> {
          const auto rho = x.subspan(0, n);
          if (*std::min_element(rho.begin(), rho.end()) < floor) return std::string("density_floor");
          return std::nullopt;
        });
  }
  return integrate(second_order_problem(graph, rule, potential), flatten(state0), spec, hooks);
}

}  // namespace graphsync
