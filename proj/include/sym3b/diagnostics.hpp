#pragma once

#include <utility>

#include "sym3b/action.hpp"
#include "sym3b/group.hpp"
#include "sym3b/loop.hpp"

namespace sym3b {

struct DiagnosticsReport {
  Eigen::Vector3d J_mean = Eigen::Vector3d::Zero();
  double J_max_deviation = 0.0;     // max |J(t) - J_mean| over the grid
  double J_in_Estar_residual = 0.0; // distance of J_mean from the fixed subspace
  double planarity_ratio = 0.0;     // sigma_3 / sigma_1 of the position cloud
  double min_pairwise_distance = 0.0;
  double el_residual_max = 0.0;     // worst equation-of-motion violation
};

// J(t) = sum_i m_i x_i x dx_i/dt, averaged over the grid.
std::pair<Eigen::Vector3d, double> angular_momentum_profile(const ProblemSetup& setup,
                                                            const FourierLoop& x,
                                                            int grid_points = kDefaultGrid);

// Orthonormal basis (3 x d, d in 0..3) of the subspace fixed by the twisted
// representation g -> det(rho(g)) det(tau(g)) rho(g). The angular momentum of
// every equivariant loop stays inside it.
Eigen::Matrix3Xd estar_space(const SymmetryGroup& group);

// Collects every post-hoc check; never throws on collisions (the margin is
// simply reported).
DiagnosticsReport report(const ProblemSetup& setup, const SymmetryGroup& group,
                         const FourierLoop& x, int grid_points = kDefaultGrid);

}  // namespace sym3b
