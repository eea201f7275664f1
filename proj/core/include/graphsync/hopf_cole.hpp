#pragma once

#include <span>
#include <vector>

#include "graphsync/graph.hpp"
#include "graphsync/integrators.hpp"
#include "graphsync/potentials.hpp"
#include "graphsync/second_order.hpp"
#include "graphsync/weight_rules.hpp"

namespace graphsync {

// rho is carried explicitly; xi + xi_star = dF(rho) componentwise.
struct HopfColeState {
  std::vector<double> rho;
  std::vector<double> xi;
  std::vector<double> xi_star;
};

struct HopfColeDerivative {
  std::vector<double> drho;
  std::vector<double> dxi;
  std::vector<double> dxi_star;
};

// xi = (dF + S) / 2, xi_star = (dF - S) / 2.
HopfColeState to_hopf_cole(const PhaseState& state, const Potential& potential);

// S = xi - xi_star. For KuramotoQuadratic rho is recovered as
// -(xi + xi_star) / kappa; otherwise the carried rho is returned.
// Throws ConsistencyViolation if xi + xi_star differs from dF(rho) by more
// than tol.
PhaseState from_hopf_cole(const HopfColeState& state, const Potential& potential,
                          double tol = 1e-6);

// Largest |xi + xi_star - dF(rho)| over the vertices.
double consistency_defect(const HopfColeState& state, const Potential& potential);

/// xi_j'      =  sum_{(k,l)} d2F_jk omega_kl theta_kl (xi_k - xi_l)
///             + sum_l omega_jl (xi*_l - xi*_j)(xi_l - xi_j) d theta_jl / d rho_j
/// xi*_j'     = -sum_{(k,l)} d2F_jk omega_kl theta_kl (xi*_k - xi*_l)
///             - sum_l omega_jl (xi*_l - xi*_j)(xi_l - xi_j) d theta_jl / d rho_j
/// with (k,l) ranging over ordered pairs and rho' taken from the
/// second-order system at S = xi - xi*.
HopfColeDerivative rhs_hopf_cole(const Graph& graph, const WeightRule& rule,
                                 const Potential& potential, const HopfColeState& state);

// Flat layout [rho, xi, xi_star], frozen branches as in rhs_second_order.
void rhs_hopf_cole(const Graph& graph, const WeightRule& rule, const Potential& potential,
                   std::span<const double> x, std::span<const int> modes, std::span<double> dx);

// Records max_abs_xi.
Trajectory simulate_hopf_cole(const Graph& graph, const WeightRule& rule,
                              const Potential& potential, const HopfColeState& state0,
                              const IntegratorSpec& spec, double simplex_tol = 1e-6);

// Unpacks one recorded [rho, xi, xi_star] state.
HopfColeState hopf_cole_state(std::span<const double> x, std::size_t n);

}  // namespace graphsync
