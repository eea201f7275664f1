#pragma once

#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "graphsync/potentials.hpp"

namespace graphsync {

// theta(a, b) = min(a, b)^alpha
struct MinPower {
  double alpha = 1.0;
};

// theta(a, b) = (a + b) / 2. Symmetric and positive but does not vanish when
// only one argument is zero, so it fails the admissibility conditions.
struct ArithmeticMean {};

// Two-point weight induced by an entropy potential, theta(r) = 2F / (F')^2.
// Only defined for a + b = 1.
struct EntropyInduced {
  Potential potential = ShannonPotential{};
};

using WeightRule = std::variant<MinPower, ArithmeticMean, EntropyInduced>;

std::string describe(const WeightRule& rule);

// Which argument is treated as the minimum. Used to freeze the smooth branch
// of a min-based rule for the duration of an integration step.
enum class MinBranch { kFirst, kSecond, kTie };

MinBranch natural_branch(double a, double b) noexcept;

struct ThetaPartials {
  double d_first = 0.0;   // d theta / d a
  double d_second = 0.0;  // d theta / d b
};

struct RuleEval {
  double theta = 0.0;
  ThetaPartials partials;
};

double theta(const WeightRule& rule, double a, double b);

// MinPower: (alpha a^(alpha-1), 0) when a < b, mirrored when a > b, and half
// of each on the tie. With alpha < 1 and a zero minimum the derivative is
// reported as +infinity; callers needing finite values raise
// DegenerateDerivative.
ThetaPartials theta_partials(const WeightRule& rule, double a, double b);

// Value and partials on the given branch. For MinPower a forced branch
// evaluates the smooth extension (e.g. a^alpha even when a > b slightly);
// other rules ignore the branch.
RuleEval evaluate_rule(const WeightRule& rule, double a, double b, MinBranch branch);
RuleEval evaluate_rule(const WeightRule& rule, double a, double b);

// True when the partial derivatives jump across the tie set a == b.
bool has_tie_kink(const WeightRule& rule) noexcept;

// MinPower with alpha < 1 is not Lipschitz at 0.
bool is_lipschitz(const WeightRule& rule) noexcept;

struct PropertyCheck {
  std::string property;
  bool passed = true;
  double worst_violation = 0.0;
};

struct RuleReport {
  std::string rule;
  int grid_resolution = 0;
  std::vector<PropertyCheck> checks;  // symmetry, nonnegativity, vanishing, monotonicity
  bool lipschitz = true;

  bool all_passed() const;
  const PropertyCheck& check(const std::string& property) const;
};

// Sweeps a uniform grid over [0,1]^2 (the antidiagonal a + b = 1 for
// entropy-induced rules). grid_resolution >= 10.
RuleReport validate_rule(const WeightRule& rule, int grid_resolution);

nlohmann::json report_to_json(const RuleReport& report);

// {"kind": "min_power", "alpha": 2.0} | {"kind": "arithmetic_mean"} |
// {"kind": "entropy", "potential": {...}}
WeightRule rule_from_json(const nlohmann::json& doc);
nlohmann::json rule_to_json(const WeightRule& rule);

// CLI shorthand: min_power:alpha | min | arithmetic_mean | entropy:<potential>
WeightRule parse_rule(const std::string& text);

}  // namespace graphsync
