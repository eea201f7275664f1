#include "graphsync/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>

#include "graphsync/analysis.hpp"
#include "graphsync/csv.hpp"
#include "graphsync/errors.hpp"
#include "graphsync/first_order.hpp"
#include "graphsync/hopf_cole.hpp"
#include "graphsync/second_order.hpp"
#include "graphsync/two_point.hpp"

namespace graphsync {
namespace {

Trajectory simulate(const ExperimentConfig& cfg, const Graph& graph) {
  switch (cfg.dynamics) {
    case Dynamics::kFirstOrder: {
      FirstOrderOptions opts;
      opts.stop_when_converged = cfg.stop_when_converged;
      return simulate_first_order(graph, cfg.rule, coupling_of(cfg.potential), cfg.rho0,
                                  cfg.integrator, opts);
    }
    case Dynamics::kSecondOrder: {
      const PhaseState s0 = cfg.s0 ? PhaseState{cfg.rho0, *cfg.s0}
                                   : gradient_flow_init(cfg.rho0, cfg.potential, cfg.gradflow_sign);
      SecondOrderOptions opts;
      opts.synchronization_threshold = cfg.synchronization_stop;
      opts.min_density_stop = cfg.min_density_stop;
      return simulate_second_order(graph, cfg.rule, cfg.potential, s0, cfg.integrator, opts);
    }
    case Dynamics::kHopfCole: {
      const std::size_t n = cfg.rho0.size();
      HopfColeState hc;
      hc.rho = cfg.rho0;
      hc.xi = cfg.xi0 ? *cfg.xi0 : std::vector<double>(n, 0.0);
      if (hc.xi.size() != n) throw Error(ErrorKind::kDimensionMismatch, "xi0 has the wrong size");
      if (cfg.xi_star0) {
        hc.xi_star = *cfg.xi_star0;
      } else {
        const auto g = node_gradient(cfg.potential, cfg.rho0);
        hc.xi_star.resize(n);
        for (std::size_t j = 0; j < n; ++j) hc.xi_star[j] = g[j] - hc.xi[j];
      }
      return simulate_hopf_cole(graph, cfg.rule, cfg.potential, hc, cfg.integrator);
    }
    case Dynamics::kTwoPoint:
      return simulate_two_point(cfg.rule, cfg.potential, {cfg.r0, cfg.S0}, cfg.integrator);
  }
  throw Error(ErrorKind::kConfigError, "unhandled dynamics");
}

bool has_diagnostic(const Trajectory& t, const std::string& name) {
  return std::find(t.diagnostic_names.begin(), t.diagnostic_names.end(), name) !=
         t.diagnostic_names.end();
}

std::string describe_vector(const std::vector<double>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << format_double(v[k]);
  os << ')';
  return os.str();
}

// Index of the single density above level with all others below 1 - level.
std::optional<std::size_t> synchronized_vertex(const std::vector<double>& rho, double level) {
  std::optional<std::size_t> leader;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j] > level) {
      if (leader) return std::nullopt;
      leader = j;
    } else if (rho[j] >= 1.0 - level) {
      return std::nullopt;
    }
  }
  return leader;
}

void summarize(const ExperimentConfig& cfg, const Graph* graph, ExperimentResult& res) {
  const auto& traj = res.trajectory;
  auto& s = res.summary;
  auto& failures = res.failures;

  s["schema"] = 1;
  s["name"] = cfg.name;
  s["dynamics"] = to_string(cfg.dynamics);
  s["config"] = config_to_json(cfg);
  s["run"] = {{"stop_reason", traj.stop_reason},
              {"t_end", traj.final_time()},
              {"records", traj.size()}};
  s["final_state"] = {{"labels", traj.labels}, {"values", traj.final_state()}};

  const auto density = traj.final_density();
  const auto limit = detect_limit(traj, cfg.limit_tol, cfg.stall_window);
  s["limit"] = limit ? nlohmann::json(*limit) : nlohmann::json(nullptr);

  const auto eq = classify_equilibrium(density, cfg.equilibrium_tol);
  std::vector<std::size_t> support;
  for (auto j : eq.support) support.push_back(j + 1);
  s["equilibrium"] = {{"m", eq.m},
                      {"support", support},
                      {"is_equilibrium", eq.is_equilibrium},
                      {"max_deviation", eq.max_deviation}};
  if (graph != nullptr) {
    s["dichotomy"] = dichotomy_to_json(edge_dichotomy_report(*graph, density, cfg.dichotomy_tol));
  }

  auto fits = nlohmann::json::array();
  std::vector<std::optional<RateFit>> fitted;
  for (auto transform : cfg.fits) {
    try {
      const auto fit = fit_rate(traj, transform);
      fits.push_back(fit_to_json(fit));
      fitted.emplace_back(fit);
    } catch (const Error& e) {
      fits.push_back({{"transform", to_string(transform)}, {"error", e.what()}});
      fitted.emplace_back(std::nullopt);
    }
  }
  s["fits"] = fits;
  std::optional<PowerFit> power;
  if (cfg.power_fit) {
    try {
      power = fit_power(traj);
      s["power_fit"] = fit_to_json(*power);
    } catch (const Error& e) {
      s["power_fit"] = {{"error", e.what()}};
    }
  }

  std::optional<double> drift;
  if (has_diagnostic(traj, "H")) {
    const auto h = traj.diagnostic("H");
    double worst = 0.0;
    for (double v : h) worst = std::max(worst, std::abs(v - h.front()));
    drift = worst / std::max(1.0, std::abs(h.front()));
    s["hamiltonian"] = {{"initial", h.front()},
                        {"final", h.back()},
                        {"max_abs_drift", worst},
                        {"max_relative_drift", *drift}};
  }
  if (has_diagnostic(traj, "max_abs_xi")) {
    const auto xi = traj.diagnostic("max_abs_xi");
    s["max_abs_xi"] = *std::max_element(xi.begin(), xi.end());
  }

  // Checks.
  const auto& c = cfg.checks;
  if (c.limit) {
    if (!limit) {
      failures.push_back("no limit detected");
    } else if (limit->size() != c.limit->size()) {
      failures.push_back("limit has the wrong dimension");
    } else {
      for (std::size_t j = 0; j < limit->size(); ++j) {
        if (!(std::abs((*limit)[j] - (*c.limit)[j]) <= c.limit_tol)) {
          failures.push_back("limit " + describe_vector(*limit) + " differs from " +
                             describe_vector(*c.limit));
          break;
        }
      }
    }
  }
  if (c.synchronized) {
    const auto leader = synchronized_vertex(density, *c.synchronized);
    if (!leader) {
      failures.push_back("final density " + describe_vector(density) + " is not synchronized");
    } else {
      s["synchronization"] = {{"vertex", *leader + 1}, {"time", traj.final_time()}};
    }
  }
  for (const auto& fc : c.fits) {
    const auto it = std::find(cfg.fits.begin(), cfg.fits.end(), fc.transform);
    if (it == cfg.fits.end() || !fitted[static_cast<std::size_t>(it - cfg.fits.begin())]) {
      failures.push_back("fit " + to_string(fc.transform) + " unavailable");
      continue;
    }
    const auto& fit = *fitted[static_cast<std::size_t>(it - cfg.fits.begin())];
    if (!(fit.r_squared > fc.min_r_squared)) {
      failures.push_back("fit " + to_string(fc.transform) + " r_squared " +
                         format_double(fit.r_squared));
    }
    if (fc.slope_sign != 0 && !(fit.slope * fc.slope_sign > 0.0)) {
      failures.push_back("fit " + to_string(fc.transform) + " slope has the wrong sign");
    }
  }
  if (c.power) {
    if (!power) {
      failures.push_back("power fit unavailable");
    } else if (!(std::abs(power->power - c.power->expected) <=
                 c.power->rel_tol * std::abs(c.power->expected))) {
      failures.push_back("fitted power " + format_double(power->power));
    }
  }
  if (c.max_hamiltonian_drift) {
    if (!drift || !(*drift < *c.max_hamiltonian_drift)) {
      failures.push_back("Hamiltonian drift above " + format_double(*c.max_hamiltonian_drift));
    }
  }
  res.passed = failures.empty();
  s["checks"] = {{"passed", res.passed}, {"failures", failures}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::kIoError, "failed writing " + path.string());
}

ExperimentConfig first_order_rate(const std::string& name, double alpha, GapTransform transform,
                                  int slope_sign) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.dynamics = Dynamics::kFirstOrder;
  cfg.graph = "complete:4";
  cfg.rule = MinPower{alpha};
  cfg.rho0 = {0.5, 0.3, 0.15, 0.05};
  cfg.integrator = {Scheme::kRK4, 0.01, 200.0, 10, true};
  cfg.fits = {transform};
  cfg.checks.fits = {{transform, 0.999, slope_sign}};
  return cfg;
}

ExperimentConfig example_limit(const std::string& name, const std::string& graph,
                               std::vector<double> expected) {
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.dynamics = Dynamics::kFirstOrder;
  cfg.graph = graph;
  cfg.rule = MinPower{1.0};
  cfg.rho0 = {0.3, 0.2, 0.1, 0.1, 0.1, 0.2};
  cfg.integrator = {Scheme::kRK4, 0.01, 500.0, 100, true};
  cfg.dichotomy_tol = 1e-3;
  cfg.checks.limit = std::move(expected);
  cfg.checks.limit_tol = 1e-3;
  return cfg;
}

ExperimentConfig synchronization_run(const std::string& name, std::vector<double> rho0,
                                     std::vector<double> s0) {
  const double mass = std::accumulate(rho0.begin(), rho0.end(), 0.0);
  for (double& v : rho0) v /= mass;
  ExperimentConfig cfg;
  cfg.name = name;
  cfg.dynamics = Dynamics::kSecondOrder;
  cfg.graph = "complete:6";
  cfg.rule = MinPower{2.0};
  cfg.rho0 = std::move(rho0);
  cfg.s0 = std::move(s0);
  cfg.integrator = {Scheme::kRK4, 0.01, 200.0, 10, true};
  cfg.synchronization_stop = 0.99;
  cfg.checks.synchronized = 0.99;
  return cfg;
}

}  // namespace

Graph graph_of(const ExperimentConfig& config) {
  if (config.graph.is_string()) return resolve_graph(config.graph.get<std::string>());
  return graph_from_json(config.graph);
}

ExperimentResult evaluate_experiment(const ExperimentConfig& config) {
  ExperimentResult res;
  res.name = config.name;
  if (config.dynamics == Dynamics::kTwoPoint) {
    res.trajectory = simulate(config, Graph{});
    summarize(config, nullptr, res);
  } else {
    const Graph graph = graph_of(config);
    res.trajectory = simulate(config, graph);
    summarize(config, &graph, res);
  }
  return res;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  auto res = evaluate_experiment(config);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorKind::kIoError, "cannot create " + out_dir.string() + ": " + ec.message());
  write_trajectory_csv(out_dir / "trajectory.csv", res.trajectory);
  write_text(out_dir / "summary.json", res.summary.dump(2) + "\n");
  return res;
}

const std::vector<std::string>& reproduce_targets() {
  static const std::vector<std::string> targets = {"fig1",  "fig2",  "fig3", "ex4.1",
                                                   "ex4.2", "ex4.3", "fig7", "fig8"};
  return targets;
}

ExperimentConfig reproduce_config(const std::string& target) {
  if (target == "fig1") return first_order_rate(target, 1.0, GapTransform::kLogGap, -1);
  if (target == "fig2") return first_order_rate(target, 2.0, GapTransform::kInverseGap, 1);
  if (target == "fig3") return first_order_rate(target, 3.0, GapTransform::kInverseSqGap, 1);
  if (target == "ex4.1") {
    return example_limit(target, "cycle6", {0.7398, 0.0, 0.0, 0.2602, 0.0, 0.0});
  }
  if (target == "ex4.2") {
    return example_limit(target, "lattice6", {0.5274, 0.0, 0.0, 0.1958, 0.0, 0.2768});
  }
  if (target == "ex4.3") {
    return example_limit(target, "ribbon6", {0.5948, 0.0, 0.0, 0.0, 0.0, 0.4052});
  }
  if (target == "fig7") {
    return synchronization_run(target, {0.3224, 0.2108, 0.1071, 0.0713, 0.2518, 0.0366},
                               {0.1597, -1.1129, 0.5929, 0.4568, 0.8299, -0.2499});
  }
  if (target == "fig8") {
    return synchronization_run(target, {0.1524, 0.0910, 0.0698, 0.1583, 0.3424, 0.1862},
                               {-0.4890, -0.4542, -0.2708, -0.6929, 1.0627, 0.1228});
  }
  throw Error(ErrorKind::kUnknownName, "unknown reproduce target '" + target + "'");
}

std::vector<ExperimentResult> reproduce(const std::vector<std::string>& targets,
                                        const std::filesystem::path& out_root) {
  std::vector<std::string> expanded;
  for (const auto& t : targets) {
    if (t == "all") {
      expanded.insert(expanded.end(), reproduce_targets().begin(), reproduce_targets().end());
    } else {
      expanded.push_back(t);
    }
  }
  std::vector<ExperimentConfig> configs;
  for (const auto& t : expanded) configs.push_back(reproduce_config(t));

  std::vector<std::future<ExperimentResult>> jobs;
  for (const auto& cfg : configs) {
    jobs.push_back(std::async(std::launch::async, [&cfg, &out_root] {
      return run_experiment(cfg, out_root / cfg.name);
    }));
  }
  std::vector<ExperimentResult> results;
  for (auto& job : jobs) results.push_back(job.get());
  return results;
}

}  // namespace graphsync
