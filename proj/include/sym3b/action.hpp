#pragma once

#include <vector>

#include "sym3b/group.hpp"
#include "sym3b/loop.hpp"

namespace sym3b {

// Uniform rotation about omega_vec. Omega is the coupling matrix appearing in
// the kinetic term |xdot + Omega x|^2; with this sign layout Omega*x = x (cross) omega_vec.
struct RotatingFrame {
  Eigen::Vector3d omega_vec = Eigen::Vector3d::Zero();
  Eigen::Matrix3d Omega = Eigen::Matrix3d::Zero();

  RotatingFrame() = default;
  explicit RotatingFrame(const Eigen::Vector3d& w);
  static RotatingFrame about_z(double speed) { return RotatingFrame(Eigen::Vector3d(0, 0, speed)); }

  double speed() const { return omega_vec.norm(); }
};

struct ProblemSetup {
  std::vector<double> masses;  // normalized to sum 1
  double alpha = 1.0;
  RotatingFrame frame;
  double collision_eps = 1e-10;

  ProblemSetup(std::vector<double> m, double a, RotatingFrame f);
  static ProblemSetup equal(int n, double a = 1.0, RotatingFrame f = {});

  int n() const { return static_cast<int>(masses.size()); }
};

// U = sum_{i<j} m_i m_j / |x_i - x_j|^alpha for one configuration (3 x n).
double potential(const ProblemSetup& setup, const Eigen::Matrix3Xd& configuration);

struct ActionEval {
  double value = 0.0;
  FourierLoop gradient;  // same coefficient layout as the input loop
};

// Value-only probe. kinetic scales as lambda^2 under x -> lambda*x and
// potential as lambda^-alpha, which gives line searches a consistent value
// without the gradient work and start rescaling a closed form.
struct ActionParts {
  double value = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double min_distance = 0.0;  // smallest pairwise distance seen on the grid
};

ActionParts action_probe(const ProblemSetup& setup, const FourierLoop& x, int M = kDefaultGrid);

// Rectangle-rule action over M grid points and its exact coefficient gradient
// ("discretize then differentiate", so line searches see consistent values).
ActionEval action_and_gradient(const ProblemSetup& setup, const FourierLoop& x,
                               int M = kDefaultGrid);

// Action value for an equivariant loop: validates that the frame axis is a
// rotation axis of the group (NotARotationAxis otherwise, zero frame exempt)
// and asserts A(g.x) = A(x) on the generators before returning.
double action_of_equivariant(const ProblemSetup& setup, const SymmetryGroup& group,
                             const FourierLoop& x, int M = kDefaultGrid);

}  // namespace sym3b
