#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "graphsync/errors.hpp"
#include "graphsync/first_order.hpp"
#include "graphsync/graph.hpp"
#include "graphsync/second_order.hpp"
#include "graphsync/two_point.hpp"

namespace gs = graphsync;

namespace {

gs::IntegratorSpec rk4(double dt, double t_final, int record_every = 1) {
  return {gs::Scheme::kRK4, dt, t_final, record_every, true};
}

std::vector<double> random_interior(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  return v;
}

std::vector<double> random_potential(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(gen);
  return v;
}

}  // namespace

TEST(SecondOrderRhs, UniformStateIsStationary) {
  const auto g = gs::complete_graph(2);
  for (double c : {0.0, 1.5, -3.0}) {
    const auto d = gs::rhs_second_order(g, gs::MinPower{1.0}, gs::KuramotoQuadratic{1.0},
                                        {{0.5, 0.5}, {c, c}});
    EXPECT_EQ(d.drho[0], 0.0);
    EXPECT_EQ(d.drho[1], 0.0);
    EXPECT_NEAR(d.dS[0], 0.0, 1e-15);
    EXPECT_NEAR(d.dS[1], 0.0, 1e-15);
  }
}

TEST(SecondOrderRhs, GradientFlowPointMatchesFirstOrder) {
  const auto g = gs::complete_graph(2);
  const auto d = gs::rhs_second_order(g, gs::MinPower{1.0}, gs::KuramotoQuadratic{1.0},
                                      {{0.7, 0.3}, {0.7, 0.3}});
  EXPECT_NEAR(d.drho[0], 0.12, 1e-15);
  EXPECT_NEAR(d.drho[1], -0.12, 1e-15);
  const std::vector<double> rho = {0.7, 0.3};
  const auto f = gs::rhs_first_order(g, gs::MinPower{1.0}, 1.0, rho);
  EXPECT_NEAR(d.drho[0], f[0], 1e-15);
}

TEST(SecondOrderRhs, TwoPointReduction) {
  const auto g = gs::complete_graph(2);
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ur(0.05, 0.95), us(-2.0, 2.0);
  for (double alpha : {1.0, 2.0, 3.0}) {
    for (double kappa : {1.0, 0.5}) {
      for (int k = 0; k < 20; ++k) {
        const double r = ur(gen);
        const double s1 = us(gen), s2 = us(gen);
        const gs::MinPower rule{alpha};
        const auto d = gs::rhs_second_order(g, rule, gs::KuramotoQuadratic{kappa}, {{r, 1 - r}, {s1, s2}});
        const auto t = gs::rhs_two_point(rule, kappa, {r, s1 - s2});
        EXPECT_NEAR(d.drho[0], t.dr, 1e-12);
        EXPECT_NEAR(d.dS[0] - d.dS[1], t.dS, 1e-12);
      }
    }
  }
}

TEST(SecondOrderRhs, MassConservation) {
  std::mt19937_64 gen(11);
  for (const char* name : {"cycle6", "lattice6", "ribbon6", "complete:6"}) {
    const auto g = gs::named_graph(name);
    const auto d = gs::rhs_second_order(g, gs::MinPower{2.0}, gs::KuramotoQuadratic{1.0},
                                        {random_interior(gen, 6), random_potential(gen, 6)});
    EXPECT_NEAR(std::accumulate(d.drho.begin(), d.drho.end(), 0.0), 0.0, 1e-12);
  }
}

TEST(SecondOrderRhs, DegenerateDerivativeBelowOne) {
  const auto g = gs::complete_graph(2);
  try {
    gs::rhs_second_order(g, gs::MinPower{0.5}, gs::KuramotoQuadratic{1.0}, {{1.0, 0.0}, {0.3, 0.0}});
    FAIL();
  } catch (const gs::Error& e) {
    EXPECT_EQ(e.kind(), gs::ErrorKind::kDegenerateDerivative);
  }
}

TEST(SecondOrderRhs, DimensionMismatch) {
  const auto g = gs::complete_graph(3);
  EXPECT_THROW(gs::rhs_second_order(g, gs::MinPower{1.0}, gs::KuramotoQuadratic{1.0},
                                    {{0.5, 0.5}, {0.0, 0.0}}),
               gs::Error);
}

TEST(Hamiltonian, HandValues) {
  const auto g2 = gs::complete_graph(2);
  const gs::KuramotoQuadratic k1{1.0};
  EXPECT_NEAR(gs::hamiltonian(g2, gs::MinPower{1.0}, k1, {{0.7, 0.3}, {1.0, 0.0}}), 0.126, 1e-15);
  EXPECT_EQ(gs::hamiltonian(g2, gs::MinPower{1.0}, k1, {{0.5, 0.5}, {2.0, 2.0}}), 0.0);

  const auto g = gs::complete_graph(4);
  const std::vector<double> rho = {0.5, 0.3, 0.15, 0.05};
  EXPECT_EQ(gs::hamiltonian(g, gs::MinPower{2.0}, k1, gs::gradient_flow_init(rho, k1)), 0.0);

  // agrees with the reduced formula for n = 2
  for (double r : {0.2, 0.45, 0.8}) {
    const double h = gs::hamiltonian(g2, gs::MinPower{2.0}, k1, {{r, 1 - r}, {0.4, -0.3}});
    EXPECT_NEAR(h, gs::hamiltonian_two_point(gs::MinPower{2.0}, 1.0, {r, 0.7}), 1e-15);
  }
}

TEST(GradientFlowInit, Examples) {
  const std::vector<double> rho = {0.5, 0.3, 0.2};
  auto s = gs::gradient_flow_init(rho, gs::KuramotoQuadratic{1.0});
  EXPECT_NEAR(s.S[0], 0.5, 1e-15);
  EXPECT_NEAR(s.S[1], 0.3, 1e-15);
  EXPECT_NEAR(s.S[2], 0.2, 1e-15);
  EXPECT_EQ(s.rho, rho);

  const std::vector<double> corner = {1.0, 0.0};
  s = gs::gradient_flow_init(corner, gs::KuramotoQuadratic{2.0});
  EXPECT_NEAR(s.S[0], 2.0, 1e-15);
  EXPECT_NEAR(s.S[1], 0.0, 1e-15);

  const auto up = gs::gradient_flow_init(rho, gs::KuramotoQuadratic{1.0}, +1);
  const auto down = gs::gradient_flow_init(rho, gs::KuramotoQuadratic{1.0}, -1);
  for (std::size_t j = 0; j < rho.size(); ++j) EXPECT_EQ(down.S[j], -up.S[j]);
}

TEST(SecondOrder, CanonicalStructure) {
  const auto g = gs::complete_graph(3);
  const gs::MinPower rule{2.0};
  const gs::KuramotoQuadratic pot{1.0};
  std::mt19937_64 gen(3);
  const double h = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const gs::PhaseState x{random_interior(gen, 3), random_potential(gen, 3)};
    const auto d = gs::rhs_second_order(g, rule, pot, x);
    double err = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < 3; ++j) {
      auto sp = x, sm = x;
      sp.S[j] += h;
      sm.S[j] -= h;
      const double dHdS = (gs::hamiltonian(g, rule, pot, sp) - gs::hamiltonian(g, rule, pot, sm)) / (2 * h);
      auto rp = x, rm = x;
      rp.rho[j] += h;
      rm.rho[j] -= h;
      const double dHdr = (gs::hamiltonian(g, rule, pot, rp) - gs::hamiltonian(g, rule, pot, rm)) / (2 * h);
      err = std::max({err, std::abs(d.drho[j] - dHdS), std::abs(d.dS[j] + dHdr)});
      scale = std::max({scale, std::abs(d.drho[j]), std::abs(d.dS[j])});
    }
    EXPECT_LT(err / scale, 1e-5);
  }
}

TEST(SecondOrder, HamiltonianConservation) {
  const auto g = gs::complete_graph(3);
  std::mt19937_64 gen(5);
  gs::SecondOrderOptions opts;
  opts.min_density_stop = 1e-3;
  for (int trial = 0; trial < 3; ++trial) {
    const gs::PhaseState x{random_interior(gen, 3), random_potential(gen, 3)};
    const auto traj = gs::simulate_second_order(g, gs::MinPower{2.0}, gs::KuramotoQuadratic{1.0}, x,
                                                rk4(1e-3, 5.0, 100), opts);
    const auto H = traj.diagnostic("H");
    for (double v : H) EXPECT_LT(std::abs(v - H[0]), 1e-6 * std::max(1.0, std::abs(H[0])));
    for (const auto& s : traj.states) {
      EXPECT_NEAR(s[0] + s[1] + s[2], 1.0, 1e-12);
    }
  }
}

TEST(SecondOrder, GradientFlowReduction) {
  const auto g = gs::complete_graph(4);
  const std::vector<double> rho0 = {0.5, 0.3, 0.15, 0.05};
  const gs::KuramotoQuadratic pot{1.0};
  const auto spec = rk4(1e-3, 3.0, 50);
  const auto second = gs::simulate_second_order(g, gs::MinPower{1.0}, pot, gs::gradient_flow_init(rho0, pot), spec);
  const auto first = gs::simulate_first_order(g, gs::MinPower{1.0}, 1.0, rho0, spec);
  ASSERT_EQ(second.size(), first.size());
  for (std::size_t k = 0; k < first.size(); ++k) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(second.states[k][j], first.states[k][j], 1e-6);
      EXPECT_NEAR(second.states[k][4 + j], second.states[k][j], 1e-6);
    }
  }
}

TEST(SecondOrder, RejectsOffSimplexStart) {
  const auto g = gs::complete_graph(3);
  try {
    gs::simulate_second_order(g, gs::MinPower{2.0}, gs::KuramotoQuadratic{1.0},
                              {{0.5, 0.5, 0.5}, {0.0, 0.0, 0.0}}, rk4(0.01, 0.1));
    FAIL();
  } catch (const gs::Error& e) {
    EXPECT_EQ(e.kind(), gs::ErrorKind::kSimplexViolation);
  }
}

TEST(SecondOrder, SynchronizationStop) {
  const auto g = gs::complete_graph(6);
  std::vector<double> rho0 = {0.3224, 0.2108, 0.1071, 0.0713, 0.2518, 0.0366};
  const double s = std::accumulate(rho0.begin(), rho0.end(), 0.0);
  for (auto& v : rho0) v /= s;
  gs::SecondOrderOptions opts;
  opts.synchronization_threshold = 0.99;
  const auto traj = gs::simulate_second_order(
      g, gs::MinPower{2.0}, gs::KuramotoQuadratic{1.0},
      {rho0, {0.1597, -1.1129, 0.5929, 0.4568, 0.8299, -0.2499}}, rk4(0.01, 200.0, 100), opts);
  EXPECT_EQ(traj.stop_reason, "synchronized");
  const auto rho = traj.final_density();
  EXPECT_EQ(std::count_if(rho.begin(), rho.end(), [](double v) { return v > 0.99; }), 1);
  EXPECT_EQ(std::count_if(rho.begin(), rho.end(), [](double v) { return v < 0.01; }), 5);
}
