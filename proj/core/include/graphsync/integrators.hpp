#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace graphsync {

enum class Scheme { kEuler, kRK4 };

std::string to_string(Scheme scheme);
// "euler" | "rk4"
Scheme parse_scheme(const std::string& text);

struct IntegratorSpec {
  Scheme scheme = Scheme::kRK4;
  double dt = 0.01;
  double t_final = 1.0;
  int record_every = 1;
  // Locate sign changes of the problem's switching functions inside a step
  // and restart the step there. Has no effect on problems without switches.
  bool locate_switches = true;
};

// Throws InvalidArgument unless dt > 0, t_final > 0, dt <= t_final and
// record_every >= 1.
void validate_spec(const IntegratorSpec& spec);

// ceil(t_final / dt), ignoring rounding noise in the quotient.
std::size_t step_count(const IntegratorSpec& spec);

/// Recorded solution of an integration.
///
/// `labels` names the state components and `diagnostic_names` the observer
/// columns. The first `density_components` entries of each state hold the
/// density; a value of 1 marks the reduced two-point coordinate r.
struct Trajectory {
  std::vector<std::string> labels;
  std::size_t density_components = 0;
  std::vector<std::string> diagnostic_names;

  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::vector<double>> diagnostics;

  // "t_final" unless a stop condition ended the run early.
  std::string stop_reason = "t_final";

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }
  double final_time() const;
  const std::vector<double>& final_state() const;
  std::vector<double> final_density() const;
  std::vector<double> component(std::size_t index) const;
  // Throws InvalidArgument for an unknown name.
  std::vector<double> diagnostic(const std::string& name) const;
};

using StateView = std::span<const double>;

// Right-hand side with per-switch modes. modes[k] is -1, +1 or 0 and is held
// fixed for the duration of a (sub)step.
using ModalRhs = std::function<void(StateView x, std::span<const int> modes, std::span<double> dx)>;
using PlainRhs = std::function<void(StateView x, std::span<double> dx)>;
using SwitchingFn = std::function<void(StateView x, std::span<double> g)>;

struct OdeProblem {
  std::size_t dimension = 0;
  ModalRhs rhs;
  // Optional piecewise structure: mode k follows the sign of g_k(x).
  std::size_t switch_count = 0;
  SwitchingFn switching;
};

OdeProblem make_problem(std::size_t dimension, PlainRhs rhs);

struct Observer {
  std::string name;
  std::function<double(double t, StateView x)> fn;
};

// Returns a reason to stop after the current step, or nothing.
using StopPredicate = std::function<std::optional<std::string>(double t, StateView x)>;

struct IntegrateHooks {
  std::vector<Observer> observers;
  std::vector<StopPredicate> stop_when;
  // Applied after every accepted step; may modify the state or throw.
  std::function<void(std::span<double> x)> post_step;
  std::vector<std::string> labels;
  std::size_t density_components = 0;
};

/// Fixed-step integration from t = 0 to spec.t_final.
///
/// Records at t = 0, every record_every steps and at the final time.
/// Throws NonFiniteState as soon as a step produces NaN or infinity.
Trajectory integrate(const OdeProblem& problem, std::vector<double> x0,
                     const IntegratorSpec& spec, const IntegrateHooks& hooks = {});
Trajectory integrate(const PlainRhs& rhs, std::vector<double> x0, const IntegratorSpec& spec,
                     const IntegrateHooks& hooks = {});

// Clips components in [-tol, 0) to zero and rescales to unit sum.
// Throws SimplexViolation if a component is below -tol or the sum is off by
// more than tol.
std::vector<double> project_simplex_clip(std::span<const double> rho, double tol);

}  // namespace graphsync
