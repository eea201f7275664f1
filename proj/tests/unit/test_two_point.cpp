#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "graphsync/errors.hpp"
#include "graphsync/two_point.hpp"

namespace gs = graphsync;

namespace {

gs::IntegratorSpec rk4(double dt, double t_final, int record_every = 1) {
  return {gs::Scheme::kRK4, dt, t_final, record_every, true};
}

double shannon_F(double r) {
  return std::log(2.0) + r * std::log(r) + (1 - r) * std::log(1 - r);
}

template <class F>
gs::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const gs::Error& e) {
    return e.kind();
  }
  return gs::ErrorKind::kInvalidArgument;
}

}  // namespace

TEST(TwoPointRhs, RestPoint) {
  const auto d = gs::rhs_two_point(gs::MinPower{1.0}, 1.0, {0.5, 0.0});
  EXPECT_EQ(d.dr, 0.0);
  EXPECT_EQ(d.dS, 0.0);
}

TEST(TwoPointRhs, HandValue) {
  const auto d = gs::rhs_two_point(gs::MinPower{1.0}, 1.0, {0.7, 1.0});
  EXPECT_NEAR(d.dr, 0.3, 1e-15);
  // 2 * 0.4 * 0.3 - (1 - 0.16) * (-1) / 2
  EXPECT_NEAR(d.dS, 0.66, 1e-15);
}

TEST(TwoPointRhs, IsMinusHamiltonianGradient) {
  const gs::MinPower rule{2.0};
  const double h = 1e-6;
  for (double r : {0.2, 0.4, 0.6, 0.85}) {
    for (double S : {-1.0, 0.3, 2.0}) {
      const auto d = gs::rhs_two_point(rule, 1.0, {r, S});
      const double dHdS = (gs::hamiltonian_two_point(rule, 1.0, {r, S + h}) -
                           gs::hamiltonian_two_point(rule, 1.0, {r, S - h})) / (2 * h);
      const double dHdr = (gs::hamiltonian_two_point(rule, 1.0, {r + h, S}) -
                           gs::hamiltonian_two_point(rule, 1.0, {r - h, S})) / (2 * h);
      EXPECT_NEAR(d.dr, dHdS, 1e-8);
      EXPECT_NEAR(d.dS, -dHdr, 1e-8);
    }
  }
}

TEST(TwoPointHamiltonian, Values) {
  EXPECT_EQ(gs::hamiltonian_two_point(gs::MinPower{1.0}, 1.0, {0.5, 0.0}), 0.0);
  EXPECT_NEAR(gs::hamiltonian_two_point(gs::MinPower{1.0}, 1.0, {0.7, 1.0}), 0.126, 1e-15);
  for (double r : {0.1, 0.35, 0.8}) {
    EXPECT_NEAR(gs::hamiltonian_two_point(gs::MinPower{2.0}, 1.5, {r, 1.5 * (2 * r - 1)}), 0.0, 1e-15);
  }
}

TEST(TwoPoint, HamiltonianDrift) {
  for (double alpha : {1.0, 2.0, 3.0}) {
    const gs::MinPower rule{alpha};
    const gs::TwoPointState x0{0.55, 0.4};
    const auto traj = gs::simulate_two_point(rule, gs::KuramotoQuadratic{1.0}, x0, rk4(1e-4, 1.0, 100));
    const auto H = traj.diagnostic("H");
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const double r = traj.states[k][0];
      if (r < 0.05 || r > 0.95) break;
      EXPECT_LT(std::abs(H[k] - H[0]), 1e-8);
    }
  }
}

TEST(TwoPoint, SignPreservation) {
  const gs::TwoPointState x0{0.6, 1.0};
  const auto traj = gs::simulate_two_point(gs::MinPower{2.0}, gs::KuramotoQuadratic{1.0}, x0, rk4(1e-3, 5.0, 10));
  EXPECT_GT(gs::hamiltonian_two_point(gs::MinPower{2.0}, 1.0, x0), 0.0);
  for (std::size_t k = 1; k < traj.size(); ++k) {
    EXPECT_GT(traj.states[k][1], 0.0);
    EXPECT_GT(traj.states[k][0], traj.states[k - 1][0]);
  }
}

TEST(TwoPoint, FiniteTimeExtinctionForLinearWeight) {
  bool terminated = false;
  try {
    const auto traj = gs::simulate_two_point(gs::MinPower{1.0}, gs::KuramotoQuadratic{1.0}, {0.6, 1.0},
                                             rk4(1e-3, 50.0, 10));
    terminated = traj.stop_reason == "boundary_hit" && traj.final_time() < 50.0;
  } catch (const gs::Error& e) {
    terminated = e.kind() == gs::ErrorKind::kNonFiniteState;
  }
  EXPECT_TRUE(terminated);
}

TEST(RateClass, Branches) {
  auto c = gs::rate_class(1.0, 0.0);
  EXPECT_EQ(c.kind, gs::RateKind::kExponential);
  EXPECT_FALSE(c.rate.has_value());

  c = gs::rate_class(2.0, 0.0);
  EXPECT_EQ(c.kind, gs::RateKind::kAlgebraic);
  EXPECT_DOUBLE_EQ(*c.power, 1.0);

  c = gs::rate_class(2.0, 0.5);
  EXPECT_EQ(c.kind, gs::RateKind::kExponential);
  EXPECT_DOUBLE_EQ(*c.rate, 1.0);

  EXPECT_EQ(gs::rate_class(1.5, 0.2).kind, gs::RateKind::kFiniteTimeExtinction);
  EXPECT_EQ(gs::rate_class(0.5, 0.0).kind, gs::RateKind::kFiniteTimeExtinction);
  c = gs::rate_class(3.0, 0.2);
  EXPECT_EQ(c.kind, gs::RateKind::kAlgebraic);
  EXPECT_DOUBLE_EQ(*c.power, 2.0);
  c = gs::rate_class(3.0, 0.0);
  EXPECT_DOUBLE_EQ(*c.power, 0.5);

  // bifurcation at H0 = 0
  EXPECT_NE(gs::rate_class(2.0, 1e-12).kind, gs::rate_class(2.0, 0.0).kind);
  EXPECT_EQ(gs::rate_class(2.0, 1e-12, 1e-9).kind, gs::RateKind::kAlgebraic);

  EXPECT_EQ(kind_of([] { gs::rate_class(2.0, -0.1); }), gs::ErrorKind::kOutOfScope);
}

TEST(XOfR, Values) {
  const gs::ThetaFn one = [](double) { return 1.0; };
  EXPECT_EQ(gs::x_of_r(one, 0.5).value, 0.0);
  EXPECT_NEAR(gs::x_of_r(one, 0.9).value, 0.4, 1e-12);
  EXPECT_NEAR(gs::x_of_r(one, 0.2).value, -0.3, 1e-12);

  const auto shannon = gs::theta_function(gs::Potential{gs::ShannonPotential{}});
  for (double r : {0.1, 0.3, 0.6, 0.9, 0.99}) {
    const double want = std::copysign(std::sqrt(2 * shannon_F(r)), r - 0.5);
    EXPECT_NEAR(gs::x_of_r(shannon, r).value, want, 1e-8) << r;
  }
}

TEST(XOfR, MonotoneAndInvertible) {
  const auto theta = gs::theta_function(gs::Potential{gs::TsallisPotential{2.0}});
  double prev = -1e300;
  for (int k = 1; k < 40; ++k) {
    const double r = k / 40.0;
    const double x = gs::x_of_r(theta, r).value;
    EXPECT_GT(x, prev);
    prev = x;
    EXPECT_NEAR(gs::r_of_x(theta, x), r, 1e-8);
  }
}

TEST(XOfR, BoundaryBehaviour) {
  const auto quad = gs::theta_function(gs::WeightRule{gs::MinPower{2.0}});
  EXPECT_EQ(kind_of([&] { gs::x_of_r(quad, 1.0); }), gs::ErrorKind::kQuadratureDivergence);

  const auto lin = gs::theta_function(gs::WeightRule{gs::MinPower{1.0}});
  const auto end = gs::x_of_r(lin, 1.0);
  EXPECT_TRUE(end.clipped);
  EXPECT_NEAR(end.value, std::sqrt(2.0), 1e-6);
  EXPECT_EQ(kind_of([&] { gs::r_of_x(lin, 2.0); }), gs::ErrorKind::kRangeError);
}

TEST(AnalyticSolution, EndpointsAndSymmetricPoint) {
  const auto theta = gs::theta_function(gs::Potential{gs::ShannonPotential{}});
  EXPECT_NEAR(gs::analytic_solution(theta, 0.3, 0.8, 0.0), 0.3, 1e-10);
  EXPECT_NEAR(gs::analytic_solution(theta, 0.3, 0.8, 1.0), 0.8, 1e-10);
  for (double t : {0.0, 0.4, 1.0}) EXPECT_NEAR(gs::analytic_solution(theta, 0.5, 0.5, t), 0.5, 1e-14);
}

TEST(AnalyticSolution, SatisfiesLinearEquation) {
  const auto theta = gs::theta_function(gs::Potential{gs::ShannonPotential{}});
  const double h = 1e-3;
  auto x_at = [&](double t) { return gs::x_of_r(theta, gs::analytic_solution(theta, 0.3, 0.8, t), 1e-13).value; };
  for (double t : {0.2, 0.5, 0.8}) {
    const double xdd = (x_at(t + h) - 2 * x_at(t) + x_at(t - h)) / (h * h);
    EXPECT_NEAR(xdd, x_at(t), 1e-4);
  }
}

TEST(Action, Properties) {
  const auto theta = gs::theta_function(gs::Potential{gs::ShannonPotential{}});
  EXPECT_EQ(gs::action(theta, 0.5, 0.5).value, 0.0);
  EXPECT_NEAR(gs::action(theta, 0.3, 0.8).value, gs::action(theta, 0.8, 0.3).value, 1e-15);
  EXPECT_GT(gs::action(theta, 0.5, 0.6).value, 0.0);
  EXPECT_GT(gs::action(theta, 0.3, 0.3).value, 0.0);

  // theta = 1: x = r - 1/2 and the closed form is elementary
  const gs::ThetaFn one = [](double) { return 1.0; };
  const double x0 = -0.2, x1 = 0.3;
  const double want = std::cosh(1.0) / (2 * std::sinh(1.0)) * (x0 * x0 + x1 * x1) - x0 * x1 / std::sinh(1.0);
  EXPECT_NEAR(gs::action(one, 0.3, 0.8).value, want, 1e-12);
}

TEST(Divergence, Properties) {
  const auto theta = gs::theta_function(gs::Potential{gs::ShannonPotential{}});
  EXPECT_EQ(gs::divergence(theta, 0.7, 0.7).value, 0.0);
  EXPECT_NEAR(gs::divergence(theta, 0.3, 0.8).value, gs::divergence(theta, 0.8, 0.3).value, 1e-15);
  const double lhs = gs::divergence(theta, 0.3, 0.8).value;
  const double rhs = gs::action(theta, 0.3, 0.8).value - 0.5 * gs::action(theta, 0.3, 0.3).value -
                     0.5 * gs::action(theta, 0.8, 0.8).value;
  EXPECT_NEAR(lhs, rhs, 1e-10);
}

TEST(ClosedFormGap, Values) {
  EXPECT_EQ(gs::closed_form_gap(1.0, 1.0, 0.0, 0.0), 0.0);
  EXPECT_NEAR(gs::closed_form_gap(2.0, 1.0, 0.0, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(gs::closed_form_gap(1.0, 2.0, 0.5, std::numbers::ln2 / 2), 0.75, 1e-15);
  EXPECT_EQ(kind_of([] { gs::closed_form_gap(0.5, 1.0, 0.0, 1.0); }), gs::ErrorKind::kOutOfScope);
}
