#include "graphsync/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

constexpr int kMaxSwitchEvents = 64;
constexpr int kBisectionIterations = 60;
constexpr double kTieProbe = 1e-6;

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

class Stepper {
 public:
  Stepper(const OdeProblem& problem, const IntegratorSpec& spec)
      : p_(problem),
        scheme_(spec.scheme),
        locate_(spec.locate_switches && problem.switch_count > 0 && problem.switching),
        k1_(problem.dimension),
        k2_(problem.dimension),
        k3_(problem.dimension),
        k4_(problem.dimension),
        tmp_(problem.dimension),
        y_(problem.dimension),
        modes_(problem.switch_count, 0),
        g_(problem.switch_count),
        g_next_(problem.switch_count) {}

  void advance(std::vector<double>& x, double h) {
    double remaining = h;
    for (int events = 0;; ++events) {
      set_modes(x, remaining);
      step(x, remaining, y_);
      if (!locate_ || events >= kMaxSwitchEvents || !flipped(y_)) {
        x.swap(y_);
        return;
      }
      double lo = 0.0;
      double hi = remaining;
      for (int it = 0; it < kBisectionIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        step(x, mid, y_);
        (flipped(y_) ? hi : lo) = mid;
      }
      step(x, hi, y_);
      x.swap(y_);
      remaining -= hi;
      if (remaining <= h * 1e-14) return;
    }
  }

 private:
  void set_modes(const std::vector<double>& x, double h) {
    if (p_.switch_count == 0) return;
    if (!p_.switching) return;
    p_.switching(x, g_);
    bool tie = false;
    for (std::size_t k = 0; k < g_.size(); ++k) {
      modes_[k] = sign_of(g_[k]);
      tie = tie || modes_[k] == 0;
    }
    if (!tie) return;
    // Resolve exact ties by the direction the state is about to move.
    p_.rhs(x, modes_, k1_);
    const double tau = kTieProbe * h;
    for (std::size_t i = 0; i < x.size(); ++i) tmp_[i] = x[i] + tau * k1_[i];
    p_.switching(tmp_, g_next_);
    for (std::size_t k = 0; k < g_.size(); ++k) {
      if (modes_[k] == 0) modes_[k] = sign_of(g_next_[k]);
    }
  }

  bool flipped(const std::vector<double>& y) {
    p_.switching(y, g_next_);
    for (std::size_t k = 0; k < g_next_.size(); ++k) {
      if (modes_[k] != 0 && g_next_[k] * modes_[k] < 0.0) return true;
    }
    return false;
  }

  void step(const std::vector<double>& x, double h, std::vector<double>& out) {
    const std::size_t n = x.size();
    p_.rhs(x, modes_, k1_);
    if (scheme_ == Scheme::kEuler) {
      for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + h * k1_[i];
      return;
    }
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + 0.5 * h * k1_[i];
    p_.rhs(tmp_, modes_, k2_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + 0.5 * h * k2_[i];
    p_.rhs(tmp_, modes_, k3_);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = x[i] + h * k3_[i];
    p_.rhs(tmp_, modes_, k4_);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = x[i] + h / 6.0 * (k1_[i] + 2.0 * k2_[i] + 2.0 * k3_[i] + k4_[i]);
    }
  }

  const OdeProblem& p_;
  Scheme scheme_;
  bool locate_;
  std::vector<double> k1_, k2_, k3_, k4_, tmp_, y_;
  std::vector<int> modes_;
  std::vector<double> g_, g_next_;
};

void record(Trajectory& traj, const IntegrateHooks& hooks, double t, const std::vector<double>& x) {
  traj.times.push_back(t);
  traj.states.push_back(x);
  std::vector<double> diag;
  diag.reserve(hooks.observers.size());
  for (const auto& obs : hooks.observers) diag.push_back(obs.fn(t, x));
  traj.diagnostics.push_back(std::move(diag));
}

}  // namespace

std::string to_string(Scheme scheme) { return scheme == Scheme::kEuler ? "euler" : "rk4"; }

Scheme parse_scheme(const std::string& text) {
  if (text == "euler") return Scheme::kEuler;
  if (text == "rk4") return Scheme::kRK4;
  throw Error(ErrorKind::kInvalidArgument, "unknown scheme '" + text + "' (expected euler|rk4)");
}

void validate_spec(const IntegratorSpec& spec) {
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) {
    throw Error(ErrorKind::kInvalidArgument, "dt must be positive");
  }
  if (!(spec.t_final > 0.0) || !std::isfinite(spec.t_final)) {
    throw Error(ErrorKind::kInvalidArgument, "t_final must be positive");
  }
  if (spec.dt > spec.t_final) {
    throw Error(ErrorKind::kInvalidArgument, "dt must not exceed t_final");
  }
  if (spec.record_every < 1) {
    throw Error(ErrorKind::kInvalidArgument, "record_every must be >= 1");
  }
}

std::size_t step_count(const IntegratorSpec& spec) {
  const double q = spec.t_final / spec.dt;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(q));
}

double Trajectory::final_time() const {
  if (times.empty()) throw Error(ErrorKind::kInvalidArgument, "empty trajectory");
  return times.back();
}

const std::vector<double>& Trajectory::final_state() const {
  if (states.empty()) throw Error(ErrorKind::kInvalidArgument, "empty trajectory");
  return states.back();
}

std::vector<double> Trajectory::final_density() const {
  const auto& x = final_state();
  if (density_components == 1) return {x[0], 1.0 - x[0]};
  const std::size_t m = density_components == 0 ? x.size() : density_components;
  return {x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m)};
}

std::vector<double> Trajectory::component(std::size_t index) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    if (index >= s.size()) throw Error(ErrorKind::kIndexOutOfRange, "state component out of range");
    out.push_back(s[index]);
  }
  return out;
}

std::vector<double> Trajectory::diagnostic(const std::string& name) const {
  const auto it = std::find(diagnostic_names.begin(), diagnostic_names.end(), name);
  if (it == diagnostic_names.end()) {
    throw Error(ErrorKind::kInvalidArgument, "no diagnostic named '" + name + "'");
  }
  const auto idx = static_cast<std::size_t>(it - diagnostic_names.begin());
  std::vector<double> out;
  out.reserve(diagnostics.size());
  for (const auto& d : diagnostics) out.push_back(d[idx]);
  return out;
}

OdeProblem make_problem(std::size_t dimension, PlainRhs rhs) {
  OdeProblem p;
  p.dimension = dimension;
  p.rhs = [f = std::move(rhs)](StateView x, std::span<const int>, std::span<double> dx) {
    f(x, dx);
  };
  return p;
}

Trajectory integrate(const OdeProblem& problem, std::vector<double> x0, const IntegratorSpec& spec,
                     const IntegrateHooks& hooks) {
  validate_spec(spec);
  if (x0.size() != problem.dimension) {
    throw Error(ErrorKind::kDimensionMismatch, "initial state has dimension " +
                                                   std::to_string(x0.size()) + ", expected " +
                                                   std::to_string(problem.dimension));
  }
  if (!all_finite(x0)) throw Error(ErrorKind::kNonFiniteState, "initial state is not finite");

  Trajectory traj;
  traj.labels = hooks.labels;
  traj.density_components = hooks.density_components;
  for (const auto& obs : hooks.observers) traj.diagnostic_names.push_back(obs.name);

  std::vector<double> x = std::move(x0);
  if (hooks.post_step) hooks.post_step(x);
  record(traj, hooks, 0.0, x);

  Stepper stepper(problem, spec);
  const std::size_t steps = step_count(spec);
  const auto every = static_cast<std::size_t>(spec.record_every);
  double t = 0.0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_next = n == steps ? spec.t_final : std::min(static_cast<double>(n) * spec.dt, spec.t_final);
    stepper.advance(x, t_next - t);
    t = t_next;
    if (!all_finite(x)) {
      std::ostringstream os;
      os << "state became non-finite at t = " << t;
      throw Error(ErrorKind::kNonFiniteState, os.str());
    }
    if (hooks.post_step) hooks.post_step(x);

    std::optional<std::string> reason;
    for (const auto& stop : hooks.stop_when) {
      reason = stop(t, x);
      if (reason) break;
    }
    if (reason || n % every == 0 || n == steps) record(traj, hooks, t, x);
    if (reason) {
      traj.stop_reason = *reason;
      break;
    }
  }
  return traj;
}

Trajectory integrate(const PlainRhs& rhs, std::vector<double> x0, const IntegratorSpec& spec,
                     const IntegrateHooks& hooks) {
  const auto problem = make_problem(x0.size(), rhs);
  return integrate(problem, std::move(x0), spec, hooks);
}

std::vector<double> project_simplex_clip(std::span<const double> rho, double tol) {
  const double sum = std::accumulate(rho.begin(), rho.end(), 0.0);
  if (!(std::abs(sum - 1.0) <= tol)) {
    throw Error(ErrorKind::kSimplexViolation, "density sums to " + std::to_string(sum));
  }
  std::vector<double> out(rho.begin(), rho.end());
  for (double& v : out) {
    if (!(v >= -tol)) {
      std::ostringstream os;
      os << "density component " << v << " below -" << tol;
      throw Error(ErrorKind::kSimplexViolation, os.str());
    }
    if (v < 0.0) v = 0.0;
  }
  const double clipped = std::accumulate(out.begin(), out.end(), 0.0);
  if (clipped != 1.0) {
    for (double& v : out) v /= clipped;
  }
  return out;
}

}  // namespace graphsync
