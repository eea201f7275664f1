#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace graphsync {

// F(rho) = -(kappa/2) * sum_i rho_i^2 (edge length rescaled to 1).
struct KuramotoQuadratic {
  double kappa = 1.0;
};

// Two-point entropy potentials, written in the reduced coordinate r = rho_1
// with rho = (r, 1 - r). All are shifted so that F(1/2) = 0 and F >= 0.
struct ShannonPotential {};
struct RenyiPotential {
  double alpha = 2.0;  // > 0, != 1
};
struct TsallisPotential {
  double q = 2.0;  // > 1
};

using Potential =
    std::variant<KuramotoQuadratic, ShannonPotential, RenyiPotential, TsallisPotential>;

bool is_entropy(const Potential& p) noexcept;
std::string describe(const Potential& p);

// Throws DomainError for inadmissible parameters. Renyi parameters are also
// checked for positivity of F on a grid over [0, 1].
void validate_potential(const Potential& p);

// Small dense row-major square matrix; Hessians here are at most n x n with
// n the vertex count.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// --- Operations on the natural coordinates --------------------------------
//
// For KuramotoQuadratic these act on the full density vector. For entropy
// kinds rho must have two components (r, 1 - r); the gradient and Hessian
// are those of the reduced scalar function r -> F(r), i.e. a 1-vector and a
// 1x1 matrix.

double potential_value(const Potential& p, std::span<const double> rho);
std::vector<double> potential_grad(const Potential& p, std::span<const double> rho);
SquareMatrix potential_hess(const Potential& p, std::span<const double> rho);

// Scalar two-point helpers: F(r), dF/dr, d2F/dr2 with rho = (r, 1 - r).
// For KuramotoQuadratic, F(r) = -(kappa/2)(r^2 + (1-r)^2).
double reduced_value(const Potential& p, double r);
double reduced_grad(const Potential& p, double r);
double reduced_hess(const Potential& p, double r);

// --- Per-vertex derivatives used by the graph dynamics --------------------
//
// node_gradient returns d_j F for every vertex. Entropy potentials are
// extended off the simplex via F(rho_1, rho_2) = F((1 + rho_1 - rho_2)/2), so
// d_1F - d_2F = dF/dr and the per-edge differences reproduce the two-point
// system exactly.
std::vector<double> node_gradient(const Potential& p, std::span<const double> rho);
SquareMatrix node_hessian(const Potential& p, std::span<const double> rho);

// {"kind": "kuramoto", "kappa": 1.0} | {"kind": "shannon"} |
// {"kind": "renyi", "alpha": 2.0} | {"kind": "tsallis", "q": 2.0}
Potential potential_from_json(const nlohmann::json& doc);
nlohmann::json potential_to_json(const Potential& p);

// CLI shorthand: kuramoto[:kappa] | shannon | renyi:a | tsallis:q
Potential parse_potential(const std::string& text);

}  // namespace graphsync
