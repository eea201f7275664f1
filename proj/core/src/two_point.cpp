#include "graphsync/two_point.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

constexpr double kClip = 1e-8;
constexpr double kProbe = 1e-6;
constexpr double kExponentTol = 1e-12;
constexpr double kInverseTol = 1e-13;

MinBranch branch_for(const WeightRule& rule, double r, int mode) {
  if (mode < 0) return MinBranch::kFirst;
  if (mode > 0) return MinBranch::kSecond;
  (void)rule;
  return natural_branch(r, 1.0 - r);
}

double integrand(const ThetaFn& theta_fn, double s) { return 1.0 / std::sqrt(theta_fn(s)); }

// Integral of the integrand over the sliver between the clip point and r,
// both within kClip of boundary b, assuming f ~ C d^(-p) in the distance d to b.
QuadratureResult boundary_tail(const ThetaFn& theta_fn, double b, double r) {
  const double dir = b > 0.5 ? -1.0 : 1.0;
  const double f1 = integrand(theta_fn, b + dir * kProbe);
  const double f2 = integrand(theta_fn, b + dir * kClip);
  if (!std::isfinite(f1) || !std::isfinite(f2)) {
    throw Error(ErrorKind::kQuadratureDivergence, "weight vanishes before the boundary");
  }
  const double p = std::log(f2 / f1) / std::log(kProbe / kClip);
  if (p >= 0.99) {
    std::ostringstream os;
    os << "1/sqrt(theta) is not integrable at r = " << b << " (local exponent " << p << ")";
    throw Error(ErrorKind::kQuadratureDivergence, os.str());
  }
  const double d_end = std::abs(r - b);
  const double c = f2 * std::pow(kClip, p);
  const double sliver = c * (std::pow(kClip, 1.0 - p) - std::pow(d_end, 1.0 - p)) / (1.0 - p);
  QuadratureResult out;
  out.value = b > 0.5 ? sliver : -sliver;
  out.error_estimate = std::abs(sliver - f2 * (kClip - d_end));
  out.clipped = true;
  return out;
}

void check_r(double r, const char* what) {
  if (!(r >= 0.0 && r <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << r << " outside [0, 1]";
    throw Error(ErrorKind::kDomainError, os.str());
  }
}

}  // namespace

double two_point_theta(const WeightRule& rule, double r) { return theta(rule, r, 1.0 - r); }

double two_point_theta_derivative(const WeightRule& rule, double r, int mode) {
  const auto ev = evaluate_rule(rule, r, 1.0 - r, branch_for(rule, r, mode));
  const double d = ev.partials.d_first - ev.partials.d_second;
  if (!std::isfinite(d)) {
    std::ostringstream os;
    os << "weight derivative is unbounded at r = " << r;
    throw Error(ErrorKind::kDegenerateDerivative, os.str());
  }
  return d;
}

TwoPointDerivative rhs_two_point(const WeightRule& rule, const Potential& potential,
                                 const TwoPointState& state, int mode) {
  const double r = state.r;
  const auto ev = evaluate_rule(rule, r, 1.0 - r, branch_for(rule, r, mode));
  const double th = ev.theta;
  const double dth = ev.partials.d_first - ev.partials.d_second;
  if (!std::isfinite(dth)) {
    std::ostringstream os;
    os << "weight derivative is unbounded at r = " << r;
    throw Error(ErrorKind::kDegenerateDerivative, os.str());
  }
  const double f1 = reduced_grad(potential, r);
  const double f2 = reduced_hess(potential, r);
  const double S = state.S;
  return {S * th, -0.5 * dth * (S * S - f1 * f1) + th * f1 * f2};
}

TwoPointDerivative rhs_two_point(const WeightRule& rule, double kappa, const TwoPointState& state) {
  return rhs_two_point(rule, KuramotoQuadratic{kappa}, state);
}

double hamiltonian_two_point(const WeightRule& rule, const Potential& potential,
                             const TwoPointState& state) {
  const double f1 = reduced_grad(potential, state.r);
  return 0.5 * two_point_theta(rule, state.r) * (state.S * state.S - f1 * f1);
}

double hamiltonian_two_point(const WeightRule& rule, double kappa, const TwoPointState& state) {
  return hamiltonian_two_point(rule, KuramotoQuadratic{kappa}, state);
}

std::string to_string(RateKind kind) {
  switch (kind) {
    case RateKind::kFiniteTimeExtinction:
      return "finite_time_extinction";
    case RateKind::kExponential:
      return "exponential";
    case RateKind::kAlgebraic:
      return "algebraic";
  }
  return "unknown";
}

RateClass rate_class(double alpha, double h0, double h0_tol) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::kInvalidArgument, "alpha must be positive");
  }
  if (!std::isfinite(h0)) throw Error(ErrorKind::kInvalidArgument, "H0 must be finite");
  if (h0 < -h0_tol) {
    throw Error(ErrorKind::kOutOfScope, "negative H0 is not covered by the rate classification");
  }
  RateClass out;
  const bool zero = std::abs(h0) <= h0_tol;
  const double pivot = zero ? 1.0 : 2.0;
  if (alpha < pivot - kExponentTol) {
    out.kind = RateKind::kFiniteTimeExtinction;
  } else if (alpha <= pivot + kExponentTol) {
    out.kind = RateKind::kExponential;
    if (!zero) out.rate = std::sqrt(2.0 * h0);
  } else {
    out.kind = RateKind::kAlgebraic;
    out.power = zero ? 1.0 / (alpha - 1.0) : 1.0 / (alpha / 2.0 - 1.0);
  }
  return out;
}

ThetaFn theta_function(const WeightRule& rule) {
  return [rule](double r) { return two_point_theta(rule, r); };
}

ThetaFn theta_function(const Potential& entropy) {
  if (!is_entropy(entropy)) {
    throw Error(ErrorKind::kInvalidArgument, "entropy-induced weight needs an entropy potential");
  }
  validate_potential(entropy);
  return theta_function(WeightRule{EntropyInduced{entropy}});
}

QuadratureResult x_of_r(const ThetaFn& theta_fn, double r, double tol) {
  check_r(r, "r");
  const auto f = [&theta_fn](double s) { return integrand(theta_fn, s); };
  if (r > 1.0 - kClip) {
    auto bulk = adaptive_simpson(f, 0.5, 1.0 - kClip, tol);
    const auto tail = boundary_tail(theta_fn, 1.0, r);
    return {bulk.value + tail.value, bulk.error_estimate + tail.error_estimate, true};
  }
  if (r < kClip) {
    auto bulk = adaptive_simpson(f, 0.5, kClip, tol);
    const auto tail = boundary_tail(theta_fn, 0.0, r);
    return {bulk.value + tail.value, bulk.error_estimate + tail.error_estimate, true};
  }
  return adaptive_simpson(f, 0.5, r, tol);
}

double r_of_x(const ThetaFn& theta_fn, double x) {
  if (!std::isfinite(x)) throw Error(ErrorKind::kRangeError, "target x is not finite");
  if (x == 0.0) return 0.5;
  const double edge = x > 0.0 ? 1.0 : 0.0;
  double x_edge = std::numeric_limits<double>::infinity();
  try {
    x_edge = std::abs(x_of_r(theta_fn, edge).value);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kQuadratureDivergence) throw;
  }
  if (std::abs(x) > x_edge + 1e-12) {
    std::ostringstream os;
    os << "x = " << x << " is outside the range of x(r) (|x| <= " << x_edge << ")";
    throw Error(ErrorKind::kRangeError, os.str());
  }
  if (std::abs(x) >= x_edge) return edge;

  const auto f = [&theta_fn](double s) { return integrand(theta_fn, s); };
  double lo = x > 0.0 ? 0.5 : 0.0;
  double hi = x > 0.0 ? 1.0 : 0.5;
  double r = 0.5;
  double xr = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double resid = xr - x;
    if (std::abs(resid) <= kInverseTol) break;
    (resid < 0.0 ? lo : hi) = r;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    const double th = theta_fn(r);
    double next = th > 0.0 ? r - resid * std::sqrt(th) : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    xr += adaptive_simpson(f, r, next, kInverseTol).value;
    r = next;
  }
  return r;
}

double analytic_solution(const ThetaFn& theta_fn, double r0, double r1, double t) {
  check_r(r0, "r0");
  check_r(r1, "r1");
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorKind::kInvalidArgument, "t must lie in [0, 1]");
  if (t == 0.0) return r0;
  if (t == 1.0) return r1;
  const double x0 = x_of_r(theta_fn, r0).value;
  const double x1 = x_of_r(theta_fn, r1).value;
  const double xt = (std::sinh(1.0 - t) * x0 + std::sinh(t) * x1) / std::sinh(1.0);
  return r_of_x(theta_fn, xt);
}

ActionValue action(const ThetaFn& theta_fn, double r0, double r1) {
  const auto q0 = x_of_r(theta_fn, r0);
  const auto q1 = x_of_r(theta_fn, r1);
  const double x0 = q0.value;
  const double x1 = q1.value;
  const double sh = std::sinh(1.0);
  const double half_coth = 0.5 * std::cosh(1.0) / sh;
  const double value = half_coth * (x0 * x0 + x1 * x1) - x0 * x1 / sh;
  const double d0 = std::abs(2.0 * half_coth * x0 - x1 / sh);
  const double d1 = std::abs(2.0 * half_coth * x1 - x0 / sh);
  return {value, d0 * q0.error_estimate + d1 * q1.error_estimate};
}

ActionValue divergence(const ThetaFn& theta_fn, double r0, double r1) {
  const auto q0 = x_of_r(theta_fn, r0);
  const auto q1 = x_of_r(theta_fn, r1);
  const double diff = q1.value - q0.value;
  const double sh = std::sinh(1.0);
  return {diff * diff / (2.0 * sh),
          std::abs(diff) / sh * (q0.error_estimate + q1.error_estimate)};
}

double closed_form_gap(double alpha, double C, double x0, double t) {
  if (!(alpha >= 1.0)) throw Error(ErrorKind::kOutOfScope, "closed form needs alpha >= 1");
  if (!(C > 0.0)) throw Error(ErrorKind::kInvalidArgument, "C must be positive");
  if (!(x0 >= 0.0 && x0 < 1.0)) throw Error(ErrorKind::kInvalidArgument, "x0 must lie in [0, 1)");
  if (!(t >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "t must be nonnegative");
  if (alpha == 1.0) return 1.0 - (1.0 - x0) * std::exp(-C * t);
  const double base = std::pow(1.0 - x0, 1.0 - alpha) + C * (alpha - 1.0) * t;
  return 1.0 - std::pow(base, -1.0 / (alpha - 1.0));
}

Trajectory simulate_two_point(const WeightRule& rule, const Potential& potential,
                              const TwoPointState& state0, const IntegratorSpec& spec,
                              const TwoPointOptions& options) {
  check_r(state0.r, "r0");
  OdeProblem problem;
  problem.dimension = 2;
  problem.rhs = [&](StateView x, std::span<const int> modes, std::span<double> dx) {
    const int mode = modes.empty() ? 0 : modes[0];
    const auto d = rhs_two_point(rule, potential, {x[0], x[1]}, mode);
    dx[0] = d.dr;
    dx[1] = d.dS;
  };
  if (has_tie_kink(rule)) {
    problem.switch_count = 1;
    problem.switching = [](StateView x, std::span<double> g) { g[0] = 2.0 * x[0] - 1.0; };
  }

  IntegrateHooks hooks;
  hooks.labels = {"r", "S"};
  hooks.density_components = 1;
  hooks.observers.push_back({"H", [&](double, StateView x) {
                               return hamiltonian_two_point(rule, potential, {x[0], x[1]});
                             }});
  if (options.stop_at_boundary) {
    hooks.stop_when.push_back([](double, StateView x) -> std::optional<std::string> {
      if (x[0] >= 1.0 || x[0] <= 0.0) return std::string("boundary_hit");
      return std::nullopt;
    });
  }
  return integrate(problem, {state0.r, state0.S}, spec, hooks);
}

}  // namespace graphsync
