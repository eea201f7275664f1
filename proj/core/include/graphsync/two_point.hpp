#pragma once

#include <functional>
#include <optional>
#include <string>

#include "graphsync/integrators.hpp"
#include "graphsync/potentials.hpp"
#include "graphsync/quadrature.hpp"
#include "graphsync/weight_rules.hpp"

namespace graphsync {

// r is the density on vertex 1, S = S_1 - S_2.
struct TwoPointState {
  double r = 0.5;
  double S = 0.0;
};

struct TwoPointDerivative {
  double dr = 0.0;
  double dS = 0.0;
};

// theta(r, 1 - r) and its derivative in r. mode selects the min-branch as
// in rhs_second_order (0 picks the natural one, with the tie averaged).
double two_point_theta(const WeightRule& rule, double r);
double two_point_theta_derivative(const WeightRule& rule, double r, int mode = 0);

/// r' = S theta(r)
/// S' = -(theta'(r) / 2)(S^2 - F'(r)^2) + theta(r) F'(r) F''(r)
TwoPointDerivative rhs_two_point(const WeightRule& rule, const Potential& potential,
                                 const TwoPointState& state, int mode = 0);
TwoPointDerivative rhs_two_point(const WeightRule& rule, double kappa, const TwoPointState& state);

// (theta / 2)(S^2 - F'(r)^2)
double hamiltonian_two_point(const WeightRule& rule, const Potential& potential,
                             const TwoPointState& state);
double hamiltonian_two_point(const WeightRule& rule, double kappa, const TwoPointState& state);

enum class RateKind { kFiniteTimeExtinction, kExponential, kAlgebraic };

std::string to_string(RateKind kind);

struct RateClass {
  RateKind kind = RateKind::kExponential;
  std::optional<double> rate;   // exponential decay rate, when known
  std::optional<double> power;  // gap ~ t^(-power)
};

// Decay law of the gap 1 - r for theta = min^alpha. |H0| <= h0_tol counts as
// H0 = 0. Throws OutOfScope for H0 < -h0_tol.
RateClass rate_class(double alpha, double h0, double h0_tol = 0.0);

using ThetaFn = std::function<double(double)>;

ThetaFn theta_function(const WeightRule& rule);
// Entropy-induced weight of an entropy potential.
ThetaFn theta_function(const Potential& entropy);

// x(r) = integral from 1/2 to r of 1/sqrt(theta). Endpoints within 1e-8 of
// 0 or 1 are clipped and the remaining sliver is extrapolated from a power
// law fit of the integrand (clipped = true). Throws QuadratureDivergence if
// the integrand is not integrable at the boundary.
QuadratureResult x_of_r(const ThetaFn& theta_fn, double r, double tol = 1e-10);

// r with x(r) = x. Throws RangeError if x lies outside x([0, 1]).
double r_of_x(const ThetaFn& theta_fn, double x);

// r(t) with x(r(t)) = [sinh(1 - t) x(r0) + sinh(t) x(r1)] / sinh(1).
double analytic_solution(const ThetaFn& theta_fn, double r0, double r1, double t);

struct ActionValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

// (coth(1)/2)(x0^2 + x1^2) - x0 x1 / sinh(1)
ActionValue action(const ThetaFn& theta_fn, double r0, double r1);

// (x1 - x0)^2 / (2 sinh(1))
ActionValue divergence(const ThetaFn& theta_fn, double r0, double r1);

// Solution of x' = C (1 - x)^alpha, x(0) = x0, for alpha >= 1.
double closed_form_gap(double alpha, double C, double x0, double t);

struct TwoPointOptions {
  bool stop_at_boundary = true;
};

// State layout [r, S]; records the diagnostic H. Stops with reason
// "boundary_hit" once r leaves (0, 1).
Trajectory simulate_two_point(const WeightRule& rule, const Potential& potential,
                              const TwoPointState& state0, const IntegratorSpec& spec,
                              const TwoPointOptions& options = {});

}  // namespace graphsync
