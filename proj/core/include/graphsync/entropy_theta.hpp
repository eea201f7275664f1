#pragma once

#include "graphsync/potentials.hpp"

namespace graphsync {

// theta(r) = 2F(r) / F'(r)^2 for an entropy potential (Shannon, Renyi or
// Tsallis). At r = 1/2 numerator and denominator both vanish; near there the
// ratio is evaluated from the even Taylor series of F, accurate to O(u^6)
// with u = r - 1/2. At r in {0, 1} the boundary limit is returned.
double entropy_induced_theta(const Potential& p, double r);

// d theta / dr for the same weight.
double entropy_induced_theta_derivative(const Potential& p, double r);

}  // namespace graphsync
