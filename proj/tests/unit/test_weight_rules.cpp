#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "graphsync/errors.hpp"
#include "graphsync/weight_rules.hpp"

namespace gs = graphsync;

TEST(WeightRules, ThetaValues) {
  EXPECT_DOUBLE_EQ(gs::theta(gs::MinPower{1.0}, 0.3, 0.2), 0.2);
  EXPECT_NEAR(gs::theta(gs::MinPower{2.0}, 0.3, 0.2), 0.04, 1e-15);
  EXPECT_DOUBLE_EQ(gs::theta(gs::MinPower{3.0}, 0.5, 0.5), 0.125);
  EXPECT_DOUBLE_EQ(gs::theta(gs::ArithmeticMean{}, 0.0, 0.4), 0.2);
}

TEST(WeightRules, EntropyInducedNeedsUnitSum) {
  const gs::WeightRule rule = gs::EntropyInduced{gs::ShannonPotential{}};
  EXPECT_NO_THROW(gs::theta(rule, 0.75, 0.25));
  try {
    gs::theta(rule, 0.5, 0.4);
    FAIL();
  } catch (const gs::Error& e) {
    EXPECT_EQ(e.kind(), gs::ErrorKind::kDomainError);
  }
}

TEST(WeightRules, PartialsExamples) {
  auto p = gs::theta_partials(gs::MinPower{2.0}, 0.2, 0.3);
  EXPECT_NEAR(p.d_first, 0.4, 1e-15);
  EXPECT_EQ(p.d_second, 0.0);

  p = gs::theta_partials(gs::MinPower{1.0}, 0.5, 0.5);
  EXPECT_DOUBLE_EQ(p.d_first, 0.5);
  EXPECT_DOUBLE_EQ(p.d_second, 0.5);

  p = gs::theta_partials(gs::MinPower{3.0}, 0.1, 0.9);
  EXPECT_NEAR(p.d_first, 0.03, 1e-15);
  EXPECT_EQ(p.d_second, 0.0);

  p = gs::theta_partials(gs::MinPower{2.0}, 0.7, 0.3);
  EXPECT_EQ(p.d_first, 0.0);
  EXPECT_NEAR(p.d_second, 0.6, 1e-15);
}

TEST(WeightRules, SublinearExponentAtZeroIsInfinite) {
  const auto p = gs::theta_partials(gs::MinPower{0.5}, 0.0, 0.4);
  EXPECT_TRUE(std::isinf(p.d_first));
  EXPECT_FALSE(gs::is_lipschitz(gs::MinPower{0.5}));
  EXPECT_TRUE(gs::is_lipschitz(gs::MinPower{1.0}));
}

TEST(WeightRules, TwoPointDerivativeMatchesFiniteDifference) {
  for (double alpha : {1.0, 2.0, 3.0}) {
    const gs::WeightRule rule = gs::MinPower{alpha};
    for (double r : {0.1, 0.3, 0.45, 0.55, 0.7, 0.9}) {
      const double h = 1e-6;
      const double fd = (gs::theta(rule, r + h, 1 - r - h) - gs::theta(rule, r - h, 1 - r + h)) / (2 * h);
      const auto p = gs::theta_partials(rule, r, 1 - r);
      EXPECT_NEAR(p.d_first - p.d_second, fd, 1e-7 * std::max(1.0, std::abs(fd)))
          << "alpha " << alpha << " r " << r;
    }
  }
}

TEST(WeightRules, PartialsMatchOneSidedDifferences) {
  const double h = 1e-9;
  for (double alpha : {0.5, 1.0, 2.0, 3.5}) {
    const gs::WeightRule rule = gs::MinPower{alpha};
    for (int i = 1; i <= 20; ++i) {
      for (int j = 1; j <= 20; ++j) {
        const double a = 0.05 * i - 0.013;
        const double b = 0.05 * j - 0.021;
        if (a == b || std::min(a, b) <= 1e-3) continue;
        const auto p = gs::theta_partials(rule, a, b);
        const double t0 = gs::theta(rule, a, b);
        const double fa = (gs::theta(rule, a + h, b) - t0) / h;
        const double fb = (gs::theta(rule, a, b + h) - t0) / h;
        const double scale_a = std::max(std::abs(p.d_first), 1e-12);
        const double scale_b = std::max(std::abs(p.d_second), 1e-12);
        if (p.d_first != 0.0) EXPECT_LT(std::abs(fa - p.d_first) / scale_a, 1e-6);
        if (p.d_second != 0.0) EXPECT_LT(std::abs(fb - p.d_second) / scale_b, 1e-6);
        if (p.d_first == 0.0) EXPECT_EQ(fa, 0.0);
        if (p.d_second == 0.0) EXPECT_EQ(fb, 0.0);
      }
    }
  }
}

TEST(WeightRules, ForcedBranchUsesSmoothExtension) {
  const gs::WeightRule rule = gs::MinPower{2.0};
  const auto ev = gs::evaluate_rule(rule, 0.31, 0.3, gs::MinBranch::kFirst);
  EXPECT_NEAR(ev.theta, 0.31 * 0.31, 1e-15);
  EXPECT_NEAR(ev.partials.d_first, 0.62, 1e-15);
  EXPECT_EQ(ev.partials.d_second, 0.0);
  EXPECT_EQ(gs::natural_branch(0.2, 0.3), gs::MinBranch::kFirst);
  EXPECT_EQ(gs::natural_branch(0.3, 0.2), gs::MinBranch::kSecond);
  EXPECT_EQ(gs::natural_branch(0.3, 0.3), gs::MinBranch::kTie);
}

TEST(WeightRules, ArithmeticMeanPartials) {
  const auto p = gs::theta_partials(gs::ArithmeticMean{}, 0.1, 0.6);
  EXPECT_DOUBLE_EQ(p.d_first, 0.5);
  EXPECT_DOUBLE_EQ(p.d_second, 0.5);
  EXPECT_FALSE(gs::has_tie_kink(gs::ArithmeticMean{}));
  EXPECT_TRUE(gs::has_tie_kink(gs::MinPower{1.0}));
}

TEST(WeightRules, ValidateMinPower) {
  for (double alpha : {1.0, 2.0}) {
    const auto report = gs::validate_rule(gs::MinPower{alpha}, 100);
    EXPECT_TRUE(report.all_passed()) << gs::report_to_json(report).dump();
    EXPECT_EQ(report.checks.size(), 4u);
    for (const auto& c : report.checks) EXPECT_EQ(c.worst_violation, 0.0) << c.property;
  }
}

TEST(WeightRules, ValidateArithmeticMeanFailsVanishing) {
  const auto report = gs::validate_rule(gs::ArithmeticMean{}, 10);
  EXPECT_FALSE(report.all_passed());
  EXPECT_FALSE(report.check("vanishing_only_at_boundary").passed);
  EXPECT_TRUE(report.check("symmetry").passed);
  EXPECT_TRUE(report.check("nonnegativity").passed);
  EXPECT_GE(report.check("vanishing_only_at_boundary").worst_violation, 0.2);
  // theta(0, 0.4) = 0.2 != 0
  EXPECT_DOUBLE_EQ(gs::theta(gs::ArithmeticMean{}, 0.0, 0.4), 0.2);
}

TEST(WeightRules, ValidateRejectsCoarseGrid) {
  EXPECT_THROW(gs::validate_rule(gs::MinPower{1.0}, 9), gs::Error);
}

TEST(WeightRules, SymmetryExactOnGrid) {
  const gs::WeightRule rule = gs::MinPower{2.5};
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 50; ++j) {
      const double a = i / 50.0;
      const double b = j / 50.0;
      EXPECT_EQ(gs::theta(rule, a, b), gs::theta(rule, b, a));
    }
  }
}

TEST(WeightRules, MonotoneInMin) {
  const gs::WeightRule rule = gs::MinPower{3.0};
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      for (int k = 0; k <= 20; ++k) {
        const double a = i / 20.0, b = j / 20.0, c = k / 20.0, d = 0.35;
        if (std::min(a, b) >= std::min(c, d)) {
          EXPECT_GE(gs::theta(rule, a, b), gs::theta(rule, c, d));
        }
      }
    }
  }
}

TEST(WeightRules, JsonAndParsing) {
  const auto rule = gs::rule_from_json(nlohmann::json::parse(R"({"kind": "min_power", "alpha": 2.0})"));
  ASSERT_TRUE(std::holds_alternative<gs::MinPower>(rule));
  EXPECT_EQ(std::get<gs::MinPower>(rule).alpha, 2.0);
  const auto back = gs::rule_from_json(gs::rule_to_json(rule));
  EXPECT_EQ(std::get<gs::MinPower>(back).alpha, 2.0);

  EXPECT_TRUE(std::holds_alternative<gs::ArithmeticMean>(gs::parse_rule("arithmetic_mean")));
  EXPECT_EQ(std::get<gs::MinPower>(gs::parse_rule("min")).alpha, 1.0);
  EXPECT_EQ(std::get<gs::MinPower>(gs::parse_rule("min_power:3")).alpha, 3.0);
  const auto ent = gs::parse_rule("entropy:tsallis:2");
  ASSERT_TRUE(std::holds_alternative<gs::EntropyInduced>(ent));
  EXPECT_THROW(gs::parse_rule("entropy:kuramoto"), gs::Error);
  EXPECT_THROW(gs::parse_rule("geometric_mean"), gs::Error);
  EXPECT_THROW(gs::parse_rule("min_power:abc"), gs::Error);
  EXPECT_THROW(gs::rule_from_json(nlohmann::json::parse(R"({"kind": "min_power", "alpha": -1})")),
               gs::Error);
}
