#include "graphsync/config.hpp"

#include <fstream>

#include "graphsync/errors.hpp"

namespace graphsync {
namespace {

std::optional<std::vector<double>> optional_vector(const nlohmann::json& doc, const char* key,
                                                   const char* sentinel) {
  if (!doc.contains(key)) return std::nullopt;
  const auto& v = doc.at(key);
  if (v.is_string()) {
    if (v.get<std::string>() != sentinel) {
      throw Error(ErrorKind::kConfigError,
                  std::string(key) + " must be a list or \"" + sentinel + "\"");
    }
    return std::nullopt;
  }
  return v.get<std::vector<double>>();
}

Checks checks_from_json(const nlohmann::json& doc) {
  Checks c;
  if (doc.contains("limit")) {
    const auto& l = doc.at("limit");
    c.limit = l.at("expected").get<std::vector<double>>();
    c.limit_tol = l.value("tol", 1e-3);
  }
  if (doc.contains("synchronized")) c.synchronized = doc.at("synchronized").get<double>();
  for (const auto& f : doc.value("fits", nlohmann::json::array())) {
    FitCheck fc;
    fc.transform = parse_transform(f.at("transform").get<std::string>());
    fc.min_r_squared = f.value("min_r_squared", 0.999);
    fc.slope_sign = f.value("slope_sign", 0);
    c.fits.push_back(fc);
  }
  if (doc.contains("power")) {
    const auto& p = doc.at("power");
    c.power = PowerCheck{p.at("expected").get<double>(), p.value("rel_tol", 0.15)};
  }
  if (doc.contains("max_hamiltonian_drift")) {
    c.max_hamiltonian_drift = doc.at("max_hamiltonian_drift").get<double>();
  }
  return c;
}

nlohmann::json checks_to_json(const Checks& c) {
  nlohmann::json doc = nlohmann::json::object();
  if (c.limit) doc["limit"] = {{"expected", *c.limit}, {"tol", c.limit_tol}};
  if (c.synchronized) doc["synchronized"] = *c.synchronized;
  if (!c.fits.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& f : c.fits) {
      arr.push_back({{"transform", to_string(f.transform)},
                     {"min_r_squared", f.min_r_squared},
                     {"slope_sign", f.slope_sign}});
    }
    doc["fits"] = arr;
  }
  if (c.power) doc["power"] = {{"expected", c.power->expected}, {"rel_tol", c.power->rel_tol}};
  if (c.max_hamiltonian_drift) doc["max_hamiltonian_drift"] = *c.max_hamiltonian_drift;
  return doc;
}

ExperimentConfig parse(const nlohmann::json& doc) {
  ExperimentConfig cfg;
  cfg.name = doc.value("name", cfg.name);
  cfg.dynamics = parse_dynamics(doc.value("dynamics", std::string("first_order")));
  if (doc.contains("graph")) cfg.graph = doc.at("graph");
  if (doc.contains("theta")) cfg.rule = rule_from_json(doc.at("theta"));
  if (doc.contains("potential")) {
    cfg.potential = potential_from_json(doc.at("potential"));
  } else if (doc.contains("kappa")) {
    cfg.potential = KuramotoQuadratic{doc.at("kappa").get<double>()};
  }
  validate_potential(cfg.potential);

  cfg.rho0 = doc.value("rho0", std::vector<double>{});
  cfg.s0 = optional_vector(doc, "s0", "gradflow");
  cfg.gradflow_sign = doc.value("gradflow_sign", 1);
  cfg.xi0 = optional_vector(doc, "xi0", "zero");
  cfg.xi_star0 = optional_vector(doc, "xistar0", "from-rho");
  cfg.r0 = doc.value("r0", cfg.r0);
  cfg.S0 = doc.value("S0", cfg.S0);

  if (doc.contains("integrator")) {
    const auto& in = doc.at("integrator");
    cfg.integrator.scheme = parse_scheme(in.value("scheme", std::string("rk4")));
    cfg.integrator.dt = in.value("dt", cfg.integrator.dt);
    cfg.integrator.t_final = in.value("t_final", cfg.integrator.t_final);
    cfg.integrator.record_every = in.value("record_every", cfg.integrator.record_every);
    cfg.integrator.locate_switches = in.value("locate_switches", true);
  }
  validate_spec(cfg.integrator);

  if (doc.contains("stop")) {
    const auto& st = doc.at("stop");
    cfg.synchronization_stop = st.value("synchronization", 0.0);
    cfg.stop_when_converged = st.value("converged", false);
    cfg.min_density_stop = st.value("min_density", 0.0);
  }
  if (doc.contains("analysis")) {
    const auto& an = doc.at("analysis");
    for (const auto& f : an.value("fits", nlohmann::json::array())) {
      cfg.fits.push_back(parse_transform(f.get<std::string>()));
    }
    cfg.power_fit = an.value("power_fit", false);
    cfg.limit_tol = an.value("limit_tol", cfg.limit_tol);
    cfg.stall_window = an.value("stall_window", cfg.stall_window);
    cfg.dichotomy_tol = an.value("dichotomy_tol", cfg.dichotomy_tol);
    cfg.equilibrium_tol = an.value("equilibrium_tol", cfg.equilibrium_tol);
  }
  if (doc.contains("checks")) cfg.checks = checks_from_json(doc.at("checks"));
  return cfg;
}

}  // namespace

std::string to_string(Dynamics dynamics) {
  switch (dynamics) {
    case Dynamics::kFirstOrder:
      return "first_order";
    case Dynamics::kSecondOrder:
      return "second_order";
    case Dynamics::kHopfCole:
      return "hopf_cole";
    case Dynamics::kTwoPoint:
      return "two_point";
  }
  return "unknown";
}

Dynamics parse_dynamics(const std::string& text) {
  if (text == "first_order") return Dynamics::kFirstOrder;
  if (text == "second_order") return Dynamics::kSecondOrder;
  if (text == "hopf_cole") return Dynamics::kHopfCole;
  if (text == "two_point") return Dynamics::kTwoPoint;
  throw Error(ErrorKind::kConfigError, "unknown dynamics '" + text + "'");
}

ExperimentConfig config_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::kConfigError, "config must be a JSON object");
  try {
    return parse(doc);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfigError, e.what());
  }
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json doc;
  doc["name"] = cfg.name;
  doc["dynamics"] = to_string(cfg.dynamics);
  doc["graph"] = cfg.graph;
  doc["theta"] = rule_to_json(cfg.rule);
  doc["potential"] = potential_to_json(cfg.potential);
  switch (cfg.dynamics) {
    case Dynamics::kTwoPoint:
      doc["r0"] = cfg.r0;
      doc["S0"] = cfg.S0;
      break;
    case Dynamics::kFirstOrder:
      doc["rho0"] = cfg.rho0;
      break;
    case Dynamics::kSecondOrder:
      doc["rho0"] = cfg.rho0;
      doc["s0"] = cfg.s0 ? nlohmann::json(*cfg.s0) : nlohmann::json("gradflow");
      doc["gradflow_sign"] = cfg.gradflow_sign;
      break;
    case Dynamics::kHopfCole:
      doc["rho0"] = cfg.rho0;
      doc["xi0"] = cfg.xi0 ? nlohmann::json(*cfg.xi0) : nlohmann::json("zero");
      doc["xistar0"] = cfg.xi_star0 ? nlohmann::json(*cfg.xi_star0) : nlohmann::json("from-rho");
      break;
  }
  doc["integrator"] = {{"scheme", to_string(cfg.integrator.scheme)},
                       {"dt", cfg.integrator.dt},
                       {"t_final", cfg.integrator.t_final},
                       {"record_every", cfg.integrator.record_every},
                       {"locate_switches", cfg.integrator.locate_switches}};
  doc["stop"] = {{"synchronization", cfg.synchronization_stop},
                 {"converged", cfg.stop_when_converged},
                 {"min_density", cfg.min_density_stop}};
  auto fits = nlohmann::json::array();
  for (auto f : cfg.fits) fits.push_back(to_string(f));
  doc["analysis"] = {{"fits", fits},
                     {"power_fit", cfg.power_fit},
                     {"limit_tol", cfg.limit_tol},
                     {"stall_window", cfg.stall_window},
                     {"dichotomy_tol", cfg.dichotomy_tol},
                     {"equilibrium_tol", cfg.equilibrium_tol}};
  doc["checks"] = checks_to_json(cfg.checks);
  return doc;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open config " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfigError, path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

double coupling_of(const Potential& potential) {
  if (const auto* k = std::get_if<KuramotoQuadratic>(&potential)) return k->kappa;
  return 1.0;
}

}  // namespace graphsync
