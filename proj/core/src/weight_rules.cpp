#include "graphsync/weight_rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "graphsync/entropy_theta.hpp"
#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPairSumTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_pair_sum(double a, double b) {
  if (std::abs(a + b - 1.0) > kPairSumTol) {
    throw Error(ErrorKind::kDomainError,
                "entropy-induced weight needs a + b = 1 (got " + std::to_string(a + b) + ")");
  }
}

// alpha * m^(alpha - 1), with the alpha < 1, m = 0 case reported as +inf.
double min_power_slope(double alpha, double m) {
  if (m <= 0.0) {
    if (alpha < 1.0) return kInf;
    return alpha == 1.0 ? 1.0 : 0.0;
  }
  return alpha * std::pow(m, alpha - 1.0);
}

RuleEval min_power_eval(double alpha, double a, double b, MinBranch branch) {
  RuleEval out;
  switch (branch) {
    case MinBranch::kFirst:
      out.theta = std::pow(std::max(a, 0.0), alpha);
      out.partials = {min_power_slope(alpha, a), 0.0};
      break;
    case MinBranch::kSecond:
      out.theta = std::pow(std::max(b, 0.0), alpha);
      out.partials = {0.0, min_power_slope(alpha, b)};
      break;
    case MinBranch::kTie: {
      const double m = std::max(std::min(a, b), 0.0);
      out.theta = std::pow(m, alpha);
      const double half = 0.5 * min_power_slope(alpha, m);
      out.partials = {half, half};
      break;
    }
  }
  return out;
}

}  // namespace

std::string describe(const WeightRule& rule) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const MinPower& m) { os << "min_power(alpha=" << m.alpha << ")"; },
                 [&](const ArithmeticMean&) { os << "arithmetic_mean"; },
                 [&](const EntropyInduced& e) { os << "entropy(" << describe(e.potential) << ")"; },
             },
             rule);
  return os.str();
}

MinBranch natural_branch(double a, double b) noexcept {
  if (a < b) return MinBranch::kFirst;
  if (a > b) return MinBranch::kSecond;
  return MinBranch::kTie;
}

RuleEval evaluate_rule(const WeightRule& rule, double a, double b, MinBranch branch) {
  return std::visit(
      Overloaded{
          [&](const MinPower& m) { return min_power_eval(m.alpha, a, b, branch); },
          [&](const ArithmeticMean&) { return RuleEval{0.5 * (a + b), {0.5, 0.5}}; },
          [&](const EntropyInduced& e) {
            require_pair_sum(a, b);
            const double d = entropy_induced_theta_derivative(e.potential, a);
            return RuleEval{entropy_induced_theta(e.potential, a), {0.5 * d, -0.5 * d}};
          },
      },
      rule);
}

RuleEval evaluate_rule(const WeightRule& rule, double a, double b) {
  return evaluate_rule(rule, a, b, natural_branch(a, b));
}

double theta(const WeightRule& rule, double a, double b) {
  return std::visit(Overloaded{
                        [&](const MinPower& m) { return std::pow(std::min(a, b), m.alpha); },
                        [&](const ArithmeticMean&) { return 0.5 * (a + b); },
                        [&](const EntropyInduced& e) {
                          require_pair_sum(a, b);
                          return entropy_induced_theta(e.potential, a);
                        },
                    },
                    rule);
}

ThetaPartials theta_partials(const WeightRule& rule, double a, double b) {
  return evaluate_rule(rule, a, b).partials;
}

bool has_tie_kink(const WeightRule& rule) noexcept {
  return std::holds_alternative<MinPower>(rule);
}

bool is_lipschitz(const WeightRule& rule) noexcept {
  if (const auto* m = std::get_if<MinPower>(&rule)) return m->alpha >= 1.0;
  return true;
}

bool RuleReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const PropertyCheck& RuleReport::check(const std::string& property) const {
  for (const auto& c : checks) {
    if (c.property == property) return c;
  }
  throw Error(ErrorKind::kInvalidArgument, "no property '" + property + "' in report");
}

RuleReport validate_rule(const WeightRule& rule, int grid_resolution) {
  if (grid_resolution < 10) {
    throw Error(ErrorKind::kInvalidArgument, "grid_resolution must be >= 10");
  }
  const bool antidiagonal = std::holds_alternative<EntropyInduced>(rule);
  const int n = grid_resolution;

  struct Sample {
    double a, b, theta, swapped;
  };
  std::vector<Sample> samples;
  for (int i = 0; i <= n; ++i) {
    const double a = static_cast<double>(i) / n;
    if (antidiagonal) {
      const double b = 1.0 - a;
      samples.push_back({a, b, theta(rule, a, b), theta(rule, b, a)});
      continue;
    }
    for (int j = 0; j <= n; ++j) {
      const double b = static_cast<double>(j) / n;
      samples.push_back({a, b, theta(rule, a, b), theta(rule, b, a)});
    }
  }

  PropertyCheck symmetry{"symmetry"};
  PropertyCheck nonneg{"nonnegativity"};
  PropertyCheck vanishing{"vanishing_only_at_boundary"};
  PropertyCheck monotone{"monotone_in_min"};

  for (const auto& s : samples) {
    const double asym = std::abs(s.theta - s.swapped);
    if (asym > 0.0) {
      symmetry.passed = false;
      symmetry.worst_violation = std::max(symmetry.worst_violation, asym);
    }
    if (s.theta < 0.0) {
      nonneg.passed = false;
      nonneg.worst_violation = std::max(nonneg.worst_violation, -s.theta);
    }
    const bool on_boundary = s.a == 0.0 || s.b == 0.0;
    if (on_boundary && s.theta != 0.0) {
      vanishing.passed = false;
      vanishing.worst_violation = std::max(vanishing.worst_violation, std::abs(s.theta));
    } else if (!on_boundary && !(s.theta > 0.0)) {
      vanishing.passed = false;
    }
  }

  // theta must be a nondecreasing function of min(a, b) alone: samples sharing
  // a min must agree, and no sample may fall below one with a smaller min.
  std::vector<std::pair<double, double>> by_min;
  by_min.reserve(samples.size());
  for (const auto& s : samples) by_min.emplace_back(std::min(s.a, s.b), s.theta);
  std::sort(by_min.begin(), by_min.end());
  double running_max = -kInf;
  for (std::size_t lo = 0; lo < by_min.size();) {
    std::size_t hi = lo;
    double group_max = -kInf;
    while (hi < by_min.size() && by_min[hi].first == by_min[lo].first) {
      group_max = std::max(group_max, by_min[hi].second);
      ++hi;
    }
    const double ceiling = std::max(running_max, group_max);
    for (std::size_t k = lo; k < hi; ++k) {
      const double drop = ceiling - by_min[k].second;
      if (drop > 0.0) {
        monotone.passed = false;
        monotone.worst_violation = std::max(monotone.worst_violation, drop);
      }
    }
    running_max = ceiling;
    lo = hi;
  }

  RuleReport report;
  report.rule = describe(rule);
  report.grid_resolution = grid_resolution;
  report.checks = {symmetry, nonneg, vanishing, monotone};
  report.lipschitz = is_lipschitz(rule);
  return report;
}

nlohmann::json report_to_json(const RuleReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back(
        {{"property", c.property}, {"passed", c.passed}, {"worst_violation", c.worst_violation}});
  }
  return {{"rule", report.rule},
          {"grid_resolution", report.grid_resolution},
          {"lipschitz", report.lipschitz},
          {"all_passed", report.all_passed()},
          {"checks", std::move(checks)}};
}

WeightRule rule_from_json(const nlohmann::json& doc) {
  const auto kind = doc.value("kind", std::string("min_power"));
  if (kind == "min_power" || kind == "min") {
    const double alpha = doc.value("alpha", 1.0);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw Error(ErrorKind::kDomainError, "min_power alpha must be positive");
    }
    return MinPower{alpha};
  }
  if (kind == "arithmetic_mean") return ArithmeticMean{};
  if (kind == "entropy") {
    auto p = potential_from_json(doc.at("potential"));
    if (!is_entropy(p)) {
      throw Error(ErrorKind::kConfigError, "entropy-induced weight needs an entropy potential");
    }
    return EntropyInduced{p};
  }
  throw Error(ErrorKind::kConfigError, "unknown theta kind '" + kind + "'");
}

nlohmann::json rule_to_json(const WeightRule& rule) {
  return std::visit(Overloaded{
                        [](const MinPower& m) -> nlohmann::json {
                          return {{"kind", "min_power"}, {"alpha", m.alpha}};
                        },
                        [](const ArithmeticMean&) -> nlohmann::json {
                          return {{"kind", "arithmetic_mean"}};
                        },
                        [](const EntropyInduced& e) -> nlohmann::json {
                          return {{"kind", "entropy"}, {"potential", potential_to_json(e.potential)}};
                        },
                    },
                    rule);
}

WeightRule parse_rule(const std::string& text) {
  if (text == "min") return MinPower{1.0};
  if (text == "arithmetic_mean") return ArithmeticMean{};
  if (text.starts_with("entropy:")) {
    auto p = parse_potential(text.substr(8));
    if (!is_entropy(p)) {
      throw Error(ErrorKind::kConfigError, "entropy-induced weight needs an entropy potential");
    }
    return EntropyInduced{p};
  }
  if (text.starts_with("min_power:")) {
    try {
      return rule_from_json({{"kind", "min_power"}, {"alpha", std::stod(text.substr(10))}});
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::kConfigError, "bad alpha in '" + text + "'");
    }
  }
  throw Error(ErrorKind::kConfigError, "unknown theta rule '" + text + "'");
}

}  // namespace graphsync
