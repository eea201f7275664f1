#pragma once

#include <span>
#include <vector>

#include "graphsync/graph.hpp"
#include "graphsync/integrators.hpp"
#include "graphsync/potentials.hpp"
#include "graphsync/weight_rules.hpp"

namespace graphsync {

struct PhaseState {
  std::vector<double> rho;
  std::vector<double> S;
};

struct PhaseDerivative {
  std::vector<double> drho;
  std::vector<double> dS;
};

/// Second-order dynamics on a graph:
///   rho_j' = sum_l omega_jl theta_jl (S_j - S_l)
///   S_j'   = -1/2 sum_l omega_jl (S_j - S_l)^2 d theta_jl / d rho_j
///            + d/d rho_j [ 1/4 sum_{(k,l)} omega_kl theta_kl (dF_k - dF_l)^2 ]
/// where the last sum runs over ordered pairs.
PhaseDerivative rhs_second_order(const Graph& graph, const WeightRule& rule,
                                 const Potential& potential, const PhaseState& state);

// Same, on the flat layout [rho, S] with a frozen min-branch per edge
// (modes[e] < 0: first endpoint is the minimum, > 0: second, 0: tie).
void rhs_second_order(const Graph& graph, const WeightRule& rule, const Potential& potential,
                      std::span<const double> x, std::span<const int> modes, std::span<double> dx);

// H = 1/4 sum_{(i,j)} omega theta ((S_i - S_j)^2 - (dF_i - dF_j)^2), ordered pairs.
double hamiltonian(const Graph& graph, const WeightRule& rule, const Potential& potential,
                   const PhaseState& state);

// S_j = -sign * dF_j(rho0).
PhaseState gradient_flow_init(std::span<const double> rho0, const Potential& potential,
                              int sign = +1);

struct SecondOrderOptions {
  // Largest tolerated simplex defect before SimplexViolation.
  double simplex_tol = 1e-6;
  // Stop once one density exceeds this and all others are below 1 - it.
  // Disabled when <= 0.
  double synchronization_threshold = 0.0;
  // Stop once the smallest density drops below this. Disabled when <= 0.
  double min_density_stop = 0.0;
};

// Records the diagnostic H.
Trajectory simulate_second_order(const Graph& graph, const WeightRule& rule,
                                 const Potential& potential, const PhaseState& state0,
                                 const IntegratorSpec& spec, const SecondOrderOptions& options = {});

// Builds the switching problem used by simulate_second_order; exposed for
// the Hopf-Cole and benchmark code.
OdeProblem second_order_problem(const Graph& graph, const WeightRule& rule,
                                const Potential& potential);

// Per-edge switching functions rho_i - rho_j read from the leading n entries.
SwitchingFn edge_switching(const Graph& graph);

// Edge weight and partials on the branch selected by mode.
RuleEval edge_eval(const WeightRule& rule, double a, double b, int mode);

// Throws SimplexViolation when rho leaves the simplex by more than tol.
void check_simplex(std::span<const double> rho, double tol);

}  // namespace graphsync
