#include "graphsync/entropy_theta.hpp"

#include <cmath>
#include <string>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

// Below this distance from r = 1/2 the ratio 2F/F'^2 loses too many digits
// and the series is used instead.
constexpr double kSeriesRadius = 2e-3;

// F(1/2 + u) = a u^2 + b u^4 + c u^6 + O(u^8)
struct EvenSeries {
  double a;
  double b;
  double c;
};

EvenSeries series_of(const Potential& p) {
  if (std::holds_alternative<ShannonPotential>(p)) return {2.0, 4.0 / 3.0, 32.0 / 15.0};
  if (const auto* t = std::get_if<TsallisPotential>(&p)) {
    const double q = t->q;
    const double s = std::pow(2.0, 1.0 - q);
    return {2.0 * q * s, s * 16.0 * q * (q - 2.0) * (q - 3.0) / 24.0,
            s * 64.0 * q * (q - 2.0) * (q - 3.0) * (q - 4.0) * (q - 5.0) / 720.0};
  }
  if (const auto* rn = std::get_if<RenyiPotential>(&p)) {
    // Binomial coefficients C(alpha, 2k) with the common factor (alpha - 1)
    // divided out so the expansion stays finite as alpha -> 1.
    const double al = rn->alpha;
    const double a2 = al / 2.0;
    const double a4 = al * (al - 2.0) * (al - 3.0) / 24.0;
    const double a6 = al * (al - 2.0) * (al - 3.0) * (al - 4.0) * (al - 5.0) / 720.0;
    const double m = al - 1.0;
    return {4.0 * a2, 16.0 * (a4 - m * a2 * a2 / 2.0),
            64.0 * (a6 - m * a2 * a4 + m * m * a2 * a2 * a2 / 3.0)};
  }
  throw Error(ErrorKind::kDomainError, "entropy-induced weight needs an entropy potential");
}

// F evaluated as a sum of small terms to avoid cancellation against log 2.
double entropy_value(const Potential& p, double r) {
  if (r <= 0.0 || r >= 1.0) return reduced_value(p, r);
  const double v = 2.0 * r - 1.0;
  if (std::holds_alternative<ShannonPotential>(p)) {
    return r * std::log1p(v) + (1.0 - r) * std::log1p(-v);
  }
  if (const auto* rn = std::get_if<RenyiPotential>(&p)) {
    const double al = rn->alpha;
    const double x =
        0.5 * (std::expm1(al * std::log1p(v)) + std::expm1(al * std::log1p(-v)));
    return -std::log1p(x) / (1.0 - al);
  }
  const double q = std::get<TsallisPotential>(p).q;
  return std::pow(2.0, -q) * (std::expm1(q * std::log1p(v)) + std::expm1(q * std::log1p(-v))) /
         (q - 1.0);
}

// F'(r), allowed to be infinite at the boundary.
double entropy_grad(const Potential& p, double r) {
  if (std::holds_alternative<ShannonPotential>(p)) return std::log(r) - std::log1p(-r);
  if (const auto* rn = std::get_if<RenyiPotential>(&p)) {
    const double al = rn->alpha;
    const double g = std::pow(r, al) + std::pow(1.0 - r, al);
    return -al * (std::pow(r, al - 1.0) - std::pow(1.0 - r, al - 1.0)) / ((1.0 - al) * g);
  }
  const double q = std::get<TsallisPotential>(p).q;
  return q * (std::pow(r, q - 1.0) - std::pow(1.0 - r, q - 1.0)) / (q - 1.0);
}

void require_entropy(const Potential& p) {
  if (!is_entropy(p)) {
    throw Error(ErrorKind::kDomainError, "entropy-induced weight needs an entropy potential");
  }
}

void require_unit_interval(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "r=" + std::to_string(r) + " outside [0, 1]");
  }
}

}  // namespace

double entropy_induced_theta(const Potential& p, double r) {
  require_entropy(p);
  require_unit_interval(r);
  const double u = r - 0.5;
  if (std::abs(u) < kSeriesRadius) {
    const auto [a, b, c] = series_of(p);
    const double w = u * u;
    const double num = a + b * w + c * w * w;
    const double den = 4.0 * a * a + 16.0 * a * b * w + (16.0 * b * b + 24.0 * a * c) * w * w;
    return 2.0 * num / den;
  }
  const double d = entropy_grad(p, r);
  if (std::isinf(d)) return 0.0;
  return 2.0 * entropy_value(p, r) / (d * d);
}

double entropy_induced_theta_derivative(const Potential& p, double r) {
  require_entropy(p);
  require_unit_interval(r);
  const double u = r - 0.5;
  if (std::abs(u) < kSeriesRadius) {
    const auto [a, b, c] = series_of(p);
    const double w = u * u;
    const double num = a + b * w + c * w * w;
    const double dnum = b + 2.0 * c * w;
    const double e2 = 16.0 * b * b + 24.0 * a * c;
    const double den = 4.0 * a * a + 16.0 * a * b * w + e2 * w * w;
    const double dden = 16.0 * a * b + 2.0 * e2 * w;
    return 2.0 * u * 2.0 * (dnum * den - num * dden) / (den * den);
  }
  // theta' = (2 / F') (1 - theta F'')
  const double d = entropy_grad(p, r);
  const double result = (2.0 / d) * (1.0 - entropy_induced_theta(p, r) * reduced_hess(p, r));
  if (!std::isfinite(result)) {
    throw Error(ErrorKind::kBoundarySingularity,
                "entropy-induced weight derivative not finite at r=" + std::to_string(r));
  }
  return result;
}

}  // namespace graphsync
