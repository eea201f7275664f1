#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graphsync/config.hpp"
#include "graphsync/graph.hpp"
#include "graphsync/integrators.hpp"

namespace graphsync {

struct ExperimentResult {
  std::string name;
  Trajectory trajectory;
  nlohmann::json summary;
  bool passed = true;
  std::vector<std::string> failures;
};

Graph graph_of(const ExperimentConfig& config);

// Runs the simulation and analysis without touching the disk.
ExperimentResult evaluate_experiment(const ExperimentConfig& config);

// Runs the experiment and writes trajectory.csv and summary.json into
// out_dir (created if missing).
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// fig1 fig2 fig3 ex4.1 ex4.2 ex4.3 fig7 fig8
const std::vector<std::string>& reproduce_targets();

// Throws UnknownName for other targets.
ExperimentConfig reproduce_config(const std::string& target);

// Runs the targets concurrently, each into out_root/<target>. "all" expands
// to every target. Results come back in request order.
std::vector<ExperimentResult> reproduce(const std::vector<std::string>& targets,
                                        const std::filesystem::path& out_root);

}  // namespace graphsync
