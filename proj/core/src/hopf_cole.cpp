#include "graphsync/hopf_cole.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

int natural_mode(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }

void check_state(const Graph& graph, const HopfColeState& s) {
  const std::size_t n = graph.size();
  if (s.rho.size() != n || s.xi.size() != n || s.xi_star.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "Hopf-Cole state does not match the graph size");
  }
}

std::vector<double> flatten(const HopfColeState& s) {
  std::vector<double> x(s.rho);
  x.insert(x.end(), s.xi.begin(), s.xi.end());
  x.insert(x.end(), s.xi_star.begin(), s.xi_star.end());
  return x;
}

}  // namespace

HopfColeState to_hopf_cole(const PhaseState& state, const Potential& potential) {
  if (state.rho.size() != state.S.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "rho and S differ in size");
  }
  const auto g = node_gradient(potential, state.rho);
  HopfColeState out{state.rho, std::vector<double>(g.size()), std::vector<double>(g.size())};
  for (std::size_t j = 0; j < g.size(); ++j) {
    out.xi[j] = 0.5 * (g[j] + state.S[j]);
    out.xi_star[j] = 0.5 * (g[j] - state.S[j]);
  }
  return out;
}

double consistency_defect(const HopfColeState& state, const Potential& potential) {
  const auto g = node_gradient(potential, state.rho);
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    worst = std::max(worst, std::abs(state.xi[j] + state.xi_star[j] - g[j]));
  }
  return worst;
}

PhaseState from_hopf_cole(const HopfColeState& state, const Potential& potential, double tol) {
  if (state.xi.size() != state.rho.size() || state.xi_star.size() != state.rho.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "Hopf-Cole state components differ in size");
  }
  const double defect = consistency_defect(state, potential);
  if (!(defect <= tol)) {
    std::ostringstream os;
    os << "xi + xi_star differs from dF(rho) by " << defect;
    throw Error(ErrorKind::kConsistencyViolation, os.str());
  }
  PhaseState out;
  out.S.resize(state.xi.size());
  for (std::size_t j = 0; j < state.xi.size(); ++j) out.S[j] = state.xi[j] - state.xi_star[j];
  if (const auto* k = std::get_if<KuramotoQuadratic>(&potential)) {
    out.rho.resize(state.xi.size());
    for (std::size_t j = 0; j < state.xi.size(); ++j) {
      out.rho[j] = -(state.xi[j] + state.xi_star[j]) / k->kappa;
    }
  } else {
    out.rho = state.rho;
  }
  return out;
}

void rhs_hopf_cole(const Graph& graph, const WeightRule& rule, const Potential& potential,
                   std::span<const double> x, std::span<const int> modes, std::span<double> dx) {
  const std::size_t n = graph.size();
  const auto rho = x.subspan(0, n);
  const auto xi = x.subspan(n, n);
  const auto xs = x.subspan(2 * n, n);
  auto drho = dx.subspan(0, n);
  auto dxi = dx.subspan(n, n);
  auto dxs = dx.subspan(2 * n, n);
  std::fill(dx.begin(), dx.end(), 0.0);

  const auto hess = node_hessian(potential, rho);
  std::vector<double> v(n, 0.0);
  std::vector<double> vs(n, 0.0);

  const auto edges = graph.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    const std::size_t i = edge.i;
    const std::size_t j = edge.j;
    const int mode = modes.empty() ? natural_mode(rho[i], rho[j]) : modes[e];
    const RuleEval ev = edge_eval(rule, rho[i], rho[j], mode);
    const double dxi_e = xi[i] - xi[j];
    const double dxs_e = xs[i] - xs[j];
    const double wt = edge.omega * ev.theta;

    const double flux = wt * (dxi_e - dxs_e);
    drho[i] += flux;
    drho[j] -= flux;

    v[i] += wt * dxi_e;
    v[j] -= wt * dxi_e;
    vs[i] += wt * dxs_e;
    vs[j] -= wt * dxs_e;

    const double cross = edge.omega * dxs_e * dxi_e;
    dxi[i] += cross * ev.partials.d_first;
    dxi[j] += cross * ev.partials.d_second;
    dxs[i] -= cross * ev.partials.d_first;
    dxs[j] -= cross * ev.partials.d_second;
  }
  for (std::size_t j = 0; j < n; ++j) {
    double a = 0.0;
    double b = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      a += hess(j, k) * v[k];
      b += hess(j, k) * vs[k];
    }
    dxi[j] += a;
    dxs[j] -= b;
  }
}

HopfColeDerivative rhs_hopf_cole(const Graph& graph, const WeightRule& rule,
                                 const Potential& potential, const HopfColeState& state) {
  check_state(graph, state);
  const auto x = flatten(state);
  std::vector<double> dx(x.size());
  rhs_hopf_cole(graph, rule, potential, x, {}, dx);
  const auto n = static_cast<std::ptrdiff_t>(graph.size());
  return {{dx.begin(), dx.begin() + n},
          {dx.begin() + n, dx.begin() + 2 * n},
          {dx.begin() + 2 * n, dx.end()}};
}

HopfColeState hopf_cole_state(std::span<const double> x, std::size_t n) {
  if (x.size() != 3 * n) throw Error(ErrorKind::kDimensionMismatch, "expected [rho, xi, xi_star]");
  const auto at = [&](std::size_t k) { return x.begin() + static_cast<std::ptrdiff_t>(k * n); };
  return {{at(0), at(1)}, {at(1), at(2)}, {at(2), at(3)}};
}

Trajectory simulate_hopf_cole(const Graph& graph, const WeightRule& rule,
                              const Potential& potential, const HopfColeState& state0,
                              const IntegratorSpec& spec, double simplex_tol) {
  check_state(graph, state0);
  const std::size_t n = graph.size();
  check_simplex(state0.rho, simplex_tol);

  OdeProblem problem;
  problem.dimension = 3 * n;
  problem.rhs = [&](StateView x, std::span<const int> modes, std::span<double> dx) {
    rhs_hopf_cole(graph, rule, potential, x, modes, dx);
  };
  if (has_tie_kink(rule)) {
    problem.switch_count = graph.edges().size();
    problem.switching = edge_switching(graph);
  }

  IntegrateHooks hooks;
  for (const char* prefix : {"rho_", "xi_", "xistar_"}) {
    for (std::size_t j = 0; j < n; ++j) hooks.labels.push_back(prefix + std::to_string(j + 1));
  }
  hooks.density_components = n;
  hooks.observers.push_back({"max_abs_xi", [n](double, StateView x) {
                               double m = 0.0;
                               for (std::size_t j = n; j < 2 * n; ++j) m = std::max(m, std::abs(x[j]));
                               return m;
                             }});
  hooks.post_step = [n, simplex_tol](std::span<double> x) {
    check_simplex(x.subspan(0, n), simplex_tol);
  };
  return integrate(problem, flatten(state0), spec, hooks);
}

}  // namespace graphsync
