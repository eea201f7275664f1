#include "graphsync/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kSimplexTol = 1e-9;

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Extracts r from rho = (r, 1 - r) for the entropy kinds.
double two_point_coordinate(std::span<const double> rho) {
  if (rho.size() != 2) {
    throw Error(ErrorKind::kUnsupportedDimension,
                "entropy potentials are defined on two-point graphs only (got n=" +
                    std::to_string(rho.size()) + ")");
  }
  if (std::abs(rho[0] + rho[1] - 1.0) > kSimplexTol || rho[0] < -kSimplexTol ||
      rho[1] < -kSimplexTol) {
    throw Error(ErrorKind::kDomainError, "rho must satisfy rho_1 + rho_2 = 1, rho >= 0");
  }
  return std::clamp(0.5 * (1.0 + rho[0] - rho[1]), 0.0, 1.0);
}

void require_interior(double r, const char* what) {
  if (r <= 0.0 || r >= 1.0) {
    throw Error(ErrorKind::kBoundarySingularity,
                std::string(what) + " is singular at r=" + std::to_string(r));
  }
}

double checked(double v, double r, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::kBoundarySingularity,
                std::string(what) + " is not finite at r=" + std::to_string(r));
  }
  return v;
}

}  // namespace

bool is_entropy(const Potential& p) noexcept {
  return !std::holds_alternative<KuramotoQuadratic>(p);
}

std::string describe(const Potential& p) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const KuramotoQuadratic& k) { os << "kuramoto(kappa=" << k.kappa << ")"; },
                 [&](const ShannonPotential&) { os << "shannon"; },
                 [&](const RenyiPotential& x) { os << "renyi(alpha=" << x.alpha << ")"; },
                 [&](const TsallisPotential& x) { os << "tsallis(q=" << x.q << ")"; },
             },
             p);
  return os.str();
}

double reduced_value(const Potential& p, double r) {
  return std::visit(
      Overloaded{
          [r](const KuramotoQuadratic& k) { return -0.5 * k.kappa * (r * r + (1 - r) * (1 - r)); },
          [r](const ShannonPotential&) { return std::numbers::ln2 + xlogx(r) + xlogx(1.0 - r); },
          [r](const RenyiPotential& x) {
            const double g = std::pow(r, x.alpha) + std::pow(1.0 - r, x.alpha);
            return std::numbers::ln2 - std::log(g) / (1.0 - x.alpha);
          },
          [r](const TsallisPotential& x) {
            return (std::pow(r, x.q) + std::pow(1.0 - r, x.q) - std::pow(2.0, 1.0 - x.q)) /
                   (x.q - 1.0);
          },
      },
      p);
}

double reduced_grad(const Potential& p, double r) {
  return std::visit(
      Overloaded{
          [r](const KuramotoQuadratic& k) { return -k.kappa * (2.0 * r - 1.0); },
          [r](const ShannonPotential&) {
            require_interior(r, "Shannon gradient");
            return std::log(r) - std::log1p(-r);
          },
          [r](const RenyiPotential& x) {
            require_interior(r, "Renyi gradient");
            const double a = x.alpha;
            const double g = std::pow(r, a) + std::pow(1.0 - r, a);
            const double dg = a * (std::pow(r, a - 1.0) - std::pow(1.0 - r, a - 1.0));
            return -dg / ((1.0 - a) * g);
          },
          [r](const TsallisPotential& x) {
            const double q = x.q;
            return checked(q * (std::pow(r, q - 1.0) - std::pow(1.0 - r, q - 1.0)) / (q - 1.0), r,
                           "Tsallis gradient");
          },
      },
      p);
}

double reduced_hess(const Potential& p, double r) {
  return std::visit(
      Overloaded{
          [](const KuramotoQuadratic& k) { return -2.0 * k.kappa; },
          [r](const ShannonPotential&) {
            require_interior(r, "Shannon Hessian");
            return 1.0 / r + 1.0 / (1.0 - r);
          },
          [r](const RenyiPotential& x) {
            require_interior(r, "Renyi Hessian");
            const double a = x.alpha;
            const double g = std::pow(r, a) + std::pow(1.0 - r, a);
            const double dg = a * (std::pow(r, a - 1.0) - std::pow(1.0 - r, a - 1.0));
            const double lead = a * (std::pow(r, a - 2.0) + std::pow(1.0 - r, a - 2.0)) / g;
            return checked(lead + (dg / g) * (dg / g) / (1.0 - a), r, "Renyi Hessian");
          },
          [r](const TsallisPotential& x) {
            const double q = x.q;
            return checked(q * (std::pow(r, q - 2.0) + std::pow(1.0 - r, q - 2.0)), r,
                           "Tsallis Hessian");
          },
      },
      p);
}

double potential_value(const Potential& p, std::span<const double> rho) {
  if (const auto* k = std::get_if<KuramotoQuadratic>(&p)) {
    double s = 0.0;
    for (double x : rho) s += x * x;
    return -0.5 * k->kappa * s;
  }
  return reduced_value(p, two_point_coordinate(rho));
}

std::vector<double> potential_grad(const Potential& p, std::span<const double> rho) {
  if (const auto* k = std::get_if<KuramotoQuadratic>(&p)) {
    std::vector<double> g(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) g[j] = -k->kappa * rho[j];
    return g;
  }
  return {reduced_grad(p, two_point_coordinate(rho))};
}

SquareMatrix potential_hess(const Potential& p, std::span<const double> rho) {
  if (const auto* k = std::get_if<KuramotoQuadratic>(&p)) {
    SquareMatrix h(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) h(j, j) = -k->kappa;
    return h;
  }
  SquareMatrix h(1);
  h(0, 0) = reduced_hess(p, two_point_coordinate(rho));
  return h;
}

std::vector<double> node_gradient(const Potential& p, std::span<const double> rho) {
  if (std::holds_alternative<KuramotoQuadratic>(p)) return potential_grad(p, rho);
  const double d = reduced_grad(p, two_point_coordinate(rho));
  return {0.5 * d, -0.5 * d};
}

SquareMatrix node_hessian(const Potential& p, std::span<const double> rho) {
  if (std::holds_alternative<KuramotoQuadratic>(p)) return potential_hess(p, rho);
  const double d2 = 0.25 * reduced_hess(p, two_point_coordinate(rho));
  SquareMatrix h(2);
  h(0, 0) = d2;
  h(1, 1) = d2;
  h(0, 1) = -d2;
  h(1, 0) = -d2;
  return h;
}

void validate_potential(const Potential& p) {
  std::visit(
      Overloaded{
          [](const KuramotoQuadratic& k) {
            if (!(k.kappa > 0.0) || !std::isfinite(k.kappa)) {
              throw Error(ErrorKind::kDomainError, "kappa must be positive");
            }
          },
          [](const ShannonPotential&) {},
          [&p](const RenyiPotential& x) {
            if (!(x.alpha > 0.0) || !std::isfinite(x.alpha) || x.alpha == 1.0) {
              throw Error(ErrorKind::kDomainError, "Renyi alpha must be > 0 and != 1");
            }
            constexpr int kGrid = 200;
            for (int i = 0; i <= kGrid; ++i) {
              const double r = static_cast<double>(i) / kGrid;
              const double v = reduced_value(p, r);
              if (!std::isfinite(v) || v < -1e-12) {
                throw Error(ErrorKind::kDomainError,
                            "Renyi potential negative at r=" + std::to_string(r) +
                                " for alpha=" + std::to_string(x.alpha));
              }
            }
          },
          [](const TsallisPotential& x) {
            if (!(x.q > 1.0) || !std::isfinite(x.q)) {
              throw Error(ErrorKind::kDomainError, "Tsallis q must be > 1");
            }
          },
      },
      p);
}

Potential potential_from_json(const nlohmann::json& doc) {
  const auto kind = doc.value("kind", std::string("kuramoto"));
  Potential p;
  if (kind == "kuramoto") {
    p = KuramotoQuadratic{doc.value("kappa", 1.0)};
  } else if (kind == "shannon") {
    p = ShannonPotential{};
  } else if (kind == "renyi") {
    p = RenyiPotential{doc.value("alpha", 2.0)};
  } else if (kind == "tsallis") {
    p = TsallisPotential{doc.value("q", 2.0)};
  } else {
    throw Error(ErrorKind::kConfigError, "unknown potential kind '" + kind + "'");
  }
  validate_potential(p);
  return p;
}

nlohmann::json potential_to_json(const Potential& p) {
  return std::visit(Overloaded{
                        [](const KuramotoQuadratic& k) -> nlohmann::json {
                          return {{"kind", "kuramoto"}, {"kappa", k.kappa}};
                        },
                        [](const ShannonPotential&) -> nlohmann::json {
                          return {{"kind", "shannon"}};
                        },
                        [](const RenyiPotential& x) -> nlohmann::json {
                          return {{"kind", "renyi"}, {"alpha", x.alpha}};
                        },
                        [](const TsallisPotential& x) -> nlohmann::json {
                          return {{"kind", "tsallis"}, {"q", x.q}};
                        },
                    },
                    p);
}

Potential parse_potential(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  nlohmann::json doc = {{"kind", kind}};
  if (colon != std::string::npos) {
    double value = 0.0;
    try {
      value = std::stod(text.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kConfigError, "bad potential parameter in '" + text + "'");
    }
    if (kind == "kuramoto") doc["kappa"] = value;
    else if (kind == "renyi") doc["alpha"] = value;
    else if (kind == "tsallis") doc["q"] = value;
  }
  return potential_from_json(doc);
}

}  // namespace graphsync
