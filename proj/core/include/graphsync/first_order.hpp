#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "graphsync/graph.hpp"
#include "graphsync/integrators.hpp"
#include "graphsync/weight_rules.hpp"

namespace graphsync {

// Throws SimplexViolation unless every component is >= -tol and the sum is
// within tol of 1.
void validate_density(std::span<const double> rho, double tol = 1e-9);

// d rho_j / dt = kappa * sum_{l in N_j} omega_jl theta_jl (rho_j - rho_l).
std::vector<double> rhs_first_order(const Graph& graph, const WeightRule& rule, double kappa,
                                    std::span<const double> rho);
void rhs_first_order(const Graph& graph, const WeightRule& rule, double kappa,
                     std::span<const double> rho, std::span<double> out);

struct FirstOrderOptions {
  double clip_tol = 1e-8;
  // Stop once sup |rhs| drops below converged_tol.
  bool stop_when_converged = false;
  double converged_tol = 1e-10;
};

// Records diagnostics sum_sq and max_gap; the density is clipped back onto
// the simplex after every step.
Trajectory simulate_first_order(const Graph& graph, const WeightRule& rule, double kappa,
                                std::span<const double> rho0, const IntegratorSpec& spec,
                                const FirstOrderOptions& options = {});

struct EquilibriumClass {
  std::size_t m = 0;
  std::vector<std::size_t> support;  // 0-based
  double value = 0.0;                // 1/m
  bool is_equilibrium = false;       // within tol of the E_m point on the support
  double max_deviation = 0.0;
};

EquilibriumClass classify_equilibrium(std::span<const double> rho, double tol = 1e-6);

// Largest minus second-largest component.
double max_gap(std::span<const double> rho);

double sum_of_squares(std::span<const double> rho);

}  // namespace graphsync
