#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphsync/analysis.hpp"
#include "graphsync/integrators.hpp"
#include "graphsync/potentials.hpp"
#include "graphsync/weight_rules.hpp"

namespace graphsync {

enum class Dynamics { kFirstOrder, kSecondOrder, kHopfCole, kTwoPoint };

std::string to_string(Dynamics dynamics);
Dynamics parse_dynamics(const std::string& text);

struct FitCheck {
  GapTransform transform = GapTransform::kLogGap;
  double min_r_squared = 0.999;
  int slope_sign = 0;  // -1, +1, or 0 for either
};

struct PowerCheck {
  double expected = 1.0;
  double rel_tol = 0.15;
};

struct Checks {
  std::optional<std::vector<double>> limit;
  double limit_tol = 1e-3;
  // Exactly one density above the threshold, all others below 1 - threshold.
  std::optional<double> synchronized;
  std::vector<FitCheck> fits;
  std::optional<PowerCheck> power;
  std::optional<double> max_hamiltonian_drift;  // relative
};

/// Everything needed to run one simulation and summarize it.
///
/// JSON layout:
///   {"name": "...", "dynamics": "first_order" | "second_order" | "hopf_cole" | "two_point",
///    "graph": "cycle6" | {"n": ..., "edges": [...]},
///    "theta": {"kind": "min_power", "alpha": 1.0},
///    "potential": {"kind": "kuramoto", "kappa": 1.0},
///    "rho0": [...], "s0": [...] | "gradflow", "xi0": "zero" | [...],
///    "xistar0": "from-rho" | [...], "r0": 0.6, "S0": 1.0,
///    "integrator": {"scheme": "rk4", "dt": 0.01, "t_final": 10, "record_every": 1},
///    "stop": {"synchronization": 0.99, "converged": false, "min_density": 0},
///    "analysis": {"fits": ["log_gap"], "power_fit": false, "limit_tol": 1e-8,
///                 "stall_window": 10, "dichotomy_tol": 1e-6, "equilibrium_tol": 1e-6},
///    "checks": {...}}
struct ExperimentConfig {
  std::string name = "experiment";
  Dynamics dynamics = Dynamics::kFirstOrder;
  nlohmann::json graph = "complete:2";
  WeightRule rule = MinPower{1.0};
  Potential potential = KuramotoQuadratic{1.0};

  std::vector<double> rho0;
  std::optional<std::vector<double>> s0;  // empty: gradient-flow data
  int gradflow_sign = 1;
  std::optional<std::vector<double>> xi0;       // empty: zero
  std::optional<std::vector<double>> xi_star0;  // empty: dF(rho0) - xi0
  double r0 = 0.5;
  double S0 = 0.0;

  IntegratorSpec integrator;

  double synchronization_stop = 0.0;
  bool stop_when_converged = false;
  double min_density_stop = 0.0;

  std::vector<GapTransform> fits;
  bool power_fit = false;
  double limit_tol = 1e-8;
  double stall_window = 10.0;
  double dichotomy_tol = 1e-6;
  double equilibrium_tol = 1e-6;

  Checks checks;
};

ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

// Kuramoto coupling of the configured potential, 1 for entropy kinds.
double coupling_of(const Potential& potential);

}  // namespace graphsync
