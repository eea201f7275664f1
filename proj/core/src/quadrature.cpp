#include "graphsync/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

struct Panel {
  double a, fa, m, fm, b, fb, whole;
};

double checked(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "integrand is not finite at " << x;
    throw Error(ErrorKind::kQuadratureDivergence, os.str());
  }
  return v;
}

void recurse(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
             QuadratureResult& out) {
  const double lm = 0.5 * (p.a + p.m);
  const double rm = 0.5 * (p.m + p.b);
  const double flm = checked(f, lm);
  const double frm = checked(f, rm);
  const double left = (p.m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const double right = (p.b - p.m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const double delta = left + right - p.whole;
  if (std::abs(delta) <= 15.0 * tol || depth <= 0 || lm <= p.a || rm >= p.b) {
    out.value += left + right + delta / 15.0;
    out.error_estimate += std::abs(delta) / 15.0;
    return;
  }
  recurse(f, {p.a, p.fa, lm, flm, p.m, p.fm, left}, std::max(0.5 * tol, 1e-17), depth - 1, out);
  recurse(f, {p.m, p.fm, rm, frm, p.b, p.fb, right}, std::max(0.5 * tol, 1e-17), depth - 1, out);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double tol, int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  if (b < a) {
    out = adaptive_simpson(f, b, a, tol, max_depth);
    out.value = -out.value;
    return out;
  }
  const double m = 0.5 * (a + b);
  const double fa = checked(f, a);
  const double fm = checked(f, m);
  const double fb = checked(f, b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  recurse(f, {a, fa, m, fm, b, fb, whole}, tol, max_depth, out);
  return out;
}

}  // namespace graphsync
