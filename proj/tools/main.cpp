// graphsync command-line front end.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graphsync/csv.hpp"
#include "graphsync/errors.hpp"
#include "graphsync/experiment.hpp"
#include "graphsync/first_order.hpp"
#include "graphsync/hopf_cole.hpp"
#include "graphsync/second_order.hpp"
#include "graphsync/two_point.hpp"
#include "graphsync/weight_rules.hpp"

namespace gs = graphsync;

namespace {

struct CommonOptions {
  std::string graph = "complete:2";
  double alpha = 1.0;
  std::string theta;
  double kappa = 1.0;
  std::string rho0;
  double dt = 0.01;
  double t_final = 10.0;
  std::string scheme = "rk4";
  int record_every = 1;
  std::string out;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--graph", o.graph, "Named graph (cycle6, lattice6, ribbon6, square4, complete:n) or JSON file")
      ->capture_default_str();
  app->add_option("--alpha", o.alpha, "Exponent of theta = min(a, b)^alpha")->capture_default_str();
  app->add_option("--theta", o.theta, "Weight rule, overrides --alpha (min_power:a, arithmetic_mean, entropy:<potential>)");
  app->add_option("--kappa", o.kappa, "Coupling strength")->capture_default_str();
  app->add_option("--rho0", o.rho0, "Initial density, comma separated")->required();
  app->add_option("--dt", o.dt, "Step size")->capture_default_str();
  app->add_option("--t-final", o.t_final, "Final time")->capture_default_str();
  app->add_option("--scheme", o.scheme, "euler or rk4")
      ->check(CLI::IsMember({"euler", "rk4"}))
      ->capture_default_str();
  app->add_option("--record-every", o.record_every, "Record every k-th step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--out", o.out, "Output CSV (stdout when omitted)");
}

gs::WeightRule rule_of(const CommonOptions& o) {
  if (!o.theta.empty()) return gs::parse_rule(o.theta);
  return gs::MinPower{o.alpha};
}

gs::IntegratorSpec spec_of(const CommonOptions& o) {
  gs::IntegratorSpec spec;
  spec.scheme = gs::parse_scheme(o.scheme);
  spec.dt = o.dt;
  spec.t_final = o.t_final;
  spec.record_every = o.record_every;
  return spec;
}

void emit(const CommonOptions& o, const gs::Trajectory& traj) {
  if (o.out.empty()) {
    gs::write_trajectory_csv(std::cout, traj);
  } else {
    gs::write_trajectory_csv(std::filesystem::path(o.out), traj);
  }
}

void print_json(const nlohmann::json& doc) { std::cout << doc.dump(2) << '\n'; }

int report_results(const std::vector<gs::ExperimentResult>& results, bool check) {
  bool ok = true;
  for (const auto& r : results) {
    std::cout << r.name << ": " << (r.passed ? "ok" : "FAILED");
    for (const auto& f : r.failures) std::cout << "\n  " << f;
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return check && !ok ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synchronization dynamics on graphs from discrete optimal transport"};
  app.require_subcommand(1);

  CommonOptions first;
  auto* sim_first = app.add_subcommand("simulate-first", "First-order gradient flow");
  add_common(sim_first, first);

  CommonOptions second;
  std::string s0 = "gradflow";
  std::string potential_second;
  double sync_stop = 0.0;
  auto* sim_second = app.add_subcommand("simulate-second", "Second-order Hamiltonian flow");
  add_common(sim_second, second);
  sim_second->add_option("--s0", s0, "Initial S, comma separated, or gradflow")->capture_default_str();
  sim_second->add_option("--potential", potential_second, "Potential, overrides --kappa (kuramoto:k, shannon, renyi:a, tsallis:q)");
  sim_second->add_option("--sync-stop", sync_stop, "Stop once one density exceeds this level");

  CommonOptions hopf;
  std::string xi0 = "zero";
  std::string xistar0 = "from-rho";
  auto* sim_hc = app.add_subcommand("simulate-hopf-cole", "Hopf-Cole transformed flow");
  add_common(sim_hc, hopf);
  sim_hc->add_option("--xi0", xi0, "Initial xi, comma separated, or zero")->capture_default_str();
  sim_hc->add_option("--xistar0", xistar0, "Initial xi*, comma separated, or from-rho")->capture_default_str();

  std::string tp_mode;
  std::string tp_potential = "shannon";
  std::string tp_theta;
  double tp_r0 = 0.5;
  double tp_r1 = 0.5;
  double tp_t = 0.5;
  auto* two = app.add_subcommand("two-point", "Two-point analytics");
  two->add_option("mode", tp_mode, "solve | action | divergence | theta")
      ->required()
      ->check(CLI::IsMember({"solve", "action", "divergence", "theta"}));
  two->add_option("--potential", tp_potential, "shannon | renyi:a | tsallis:q")->capture_default_str();
  two->add_option("--theta", tp_theta, "Use this weight rule instead of the entropy-induced one");
  two->add_option("--r0", tp_r0, "Initial density on vertex 1")->capture_default_str();
  two->add_option("--r1", tp_r1, "Final density on vertex 1")->capture_default_str();
  two->add_option("--t", tp_t, "Time in [0, 1] for solve")->capture_default_str();

  std::vector<std::string> targets;
  std::string repro_out = "results";
  bool repro_check = false;
  auto* repro = app.add_subcommand("reproduce", "Re-run the reference experiments");
  repro->add_option("targets", targets, "fig1 fig2 fig3 ex4.1 ex4.2 ex4.3 fig7 fig8 or all")->required();
  repro->add_option("--out", repro_out, "Output root directory")->capture_default_str();
  repro->add_flag("--check", repro_check, "Exit nonzero when a check fails");

  std::string rule_text;
  int grid = 100;
  auto* validate = app.add_subcommand("validate-rule", "Check weight-rule admissibility on a grid");
  validate->add_option("--theta", rule_text, "min_power:a | min | arithmetic_mean | entropy:<potential>")
      ->required();
  validate->add_option("--grid", grid, "Grid resolution (>= 10)")->capture_default_str();

  std::string config_path;
  std::string run_out = "results";
  bool run_check = false;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_out, "Output root directory")->capture_default_str();
  run->add_flag("--check", run_check, "Exit nonzero when a check fails");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim_first) {
      const auto graph = gs::resolve_graph(first.graph);
      const auto rho0 = gs::parse_number_list(first.rho0);
      emit(first, gs::simulate_first_order(graph, rule_of(first), first.kappa, rho0, spec_of(first)));
      return 0;
    }
    if (*sim_second) {
      const auto graph = gs::resolve_graph(second.graph);
      const gs::Potential pot = potential_second.empty() ? gs::Potential{gs::KuramotoQuadratic{second.kappa}}
                                                         : gs::parse_potential(potential_second);
      gs::validate_potential(pot);
      const auto rho0 = gs::parse_number_list(second.rho0);
      const gs::PhaseState state0 = s0 == "gradflow" ? gs::gradient_flow_init(rho0, pot)
                                                     : gs::PhaseState{rho0, gs::parse_number_list(s0)};
      gs::SecondOrderOptions opts;
      opts.synchronization_threshold = sync_stop;
      emit(second, gs::simulate_second_order(graph, rule_of(second), pot, state0, spec_of(second), opts));
      return 0;
    }
    if (*sim_hc) {
      const auto graph = gs::resolve_graph(hopf.graph);
      const gs::Potential pot = gs::KuramotoQuadratic{hopf.kappa};
      const auto rho0 = gs::parse_number_list(hopf.rho0);
      gs::HopfColeState hc;
      hc.rho = rho0;
      hc.xi = xi0 == "zero" ? std::vector<double>(rho0.size(), 0.0) : gs::parse_number_list(xi0);
      if (xistar0 == "from-rho") {
        const auto g = gs::node_gradient(pot, rho0);
        hc.xi_star.resize(rho0.size());
        for (std::size_t j = 0; j < rho0.size() && j < hc.xi.size(); ++j) hc.xi_star[j] = g[j] - hc.xi[j];
      } else {
        hc.xi_star = gs::parse_number_list(xistar0);
      }
      emit(hopf, gs::simulate_hopf_cole(graph, rule_of(hopf), pot, hc, spec_of(hopf)));
      return 0;
    }
    if (*two) {
      const gs::ThetaFn theta_fn = tp_theta.empty() ? gs::theta_function(gs::parse_potential(tp_potential))
                                                    : gs::theta_function(gs::parse_rule(tp_theta));
      nlohmann::json out;
      if (tp_mode == "theta") {
        out = {{"value", theta_fn(tp_r0)}, {"quadrature_error_estimate", 0.0}};
      } else if (tp_mode == "action") {
        const auto a = gs::action(theta_fn, tp_r0, tp_r1);
        out = {{"value", a.value}, {"quadrature_error_estimate", a.error_estimate}};
      } else if (tp_mode == "divergence") {
        const auto d = gs::divergence(theta_fn, tp_r0, tp_r1);
        out = {{"value", d.value}, {"quadrature_error_estimate", d.error_estimate}};
      } else {
        const double r = gs::analytic_solution(theta_fn, tp_r0, tp_r1, tp_t);
        const auto q0 = gs::x_of_r(theta_fn, tp_r0);
        const auto q1 = gs::x_of_r(theta_fn, tp_r1);
        const double err_x = q0.error_estimate + q1.error_estimate;
        out = {{"value", r}, {"quadrature_error_estimate", err_x * std::sqrt(theta_fn(r))}};
      }
      print_json(out);
      return 0;
    }
    if (*repro) {
      return report_results(gs::reproduce(targets, repro_out), repro_check);
    }
    if (*validate) {
      print_json(gs::report_to_json(gs::validate_rule(gs::parse_rule(rule_text), grid)));
      return 0;
    }
    if (*run) {
      const auto cfg = gs::load_config(config_path);
      return report_results({gs::run_experiment(cfg, std::filesystem::path(run_out) / cfg.name)}, run_check);
    }
  } catch (const gs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
