#pragma once

#include <set>
#include <vector>

#include "sym3b/action.hpp"
#include "sym3b/classification.hpp"
#include "sym3b/loop.hpp"

namespace sym3b {

// A rigid planar solution t -> R_z(k t) xbar with the scale pinned by
// Kepler's law (k+w)^2 I(xbar) = alpha U(xbar).
struct CentralConfiguration {
  Shape shape = Shape::lagrange;
  double R = 0.0;   // circumradius (lagrange) or outer-body offset (euler)
  int k = 0;        // winding number of the rigid rotation
  std::vector<double> masses;
  double alpha = 1.0;
  Eigen::Matrix3Xd positions;  // xbar, mass-centered, in the xy-plane
  double inertia = 0.0;
  double shape_potential = 0.0;  // U(xbar)
};

struct Baseline {
  CentralConfiguration config;
  double action = 0.0;  // equivariant action of the rotating loop over one period
};

// Equilateral solution. Works for any positive masses; the triangle side
// comes out mass-independent, d^(alpha+2) = alpha / (k+w)^2.
Baseline lagrange_solution(const std::vector<double>& masses, double alpha, int k,
                           double omega);

// Collinear solution xbar = (R, -R, 0) e1. Requires m1 = m2.
Baseline euler_solution(const std::vector<double>& masses, double alpha, int k,
                        double omega);

// The rotating loop as Fourier coefficients, vertical component zero.
FourierLoop embedded_loop(const CentralConfiguration& config);

// Winding numbers k in [k_min, k_max] for which the rigid rotating loop of the
// given shape admits a G-equivariant labeling.
std::set<int> admissible_rotation_numbers(const SymmetryGroup& group, Shape shape,
                                          int k_min, int k_max);

// True iff an admissible Lagrange winding attains the unconstrained minimum of
// |k + omega| over the integers and that minimum is nonzero. When it holds the
// rotating equilateral is the global minimizer over the equivariant loop space.
bool gordon_predicate(const SymmetryGroup& group, const std::vector<double>& masses,
                      double alpha, double omega);

}  // namespace sym3b
