#include "sym3b/diagnostics.hpp"

#include <cmath>

#include "sym3b/errors.hpp"

namespace sym3b {

std::pair<Eigen::Vector3d, double> angular_momentum_profile(const ProblemSetup& setup,
                                                            const FourierLoop& x,
                                                            int grid_points) {
  if (static_cast<int>(setup.masses.size()) != x.n)
    throw DimensionMismatch("masses and loop disagree on body count");
  auto s = sample(x, grid_points);
  std::vector<Eigen::Vector3d> J(grid_points, Eigen::Vector3d::Zero());
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (int j = 0; j < grid_points; ++j) {
    for (int i = 0; i < x.n; ++i)
      J[j] += setup.masses[i] * s.positions[j].col(i).cross(s.velocities[j].col(i));
    mean += J[j];
  }
  mean /= grid_points;
  double dev = 0.0;
  for (const auto& v : J) dev = std::max(dev, (v - mean).norm());
  return {mean, dev};
}

Eigen::Matrix3Xd estar_space(const SymmetryGroup& group) {
  Eigen::Matrix3d avg = Eigen::Matrix3d::Zero();
  for (const auto& g : group.elements)
    avg += g.space.determinant() * g.time.orientation * g.space;
  avg /= static_cast<double>(group.elements.size());
  // averaging an orthogonal representation gives the orthogonal projector
  // onto its fixed space; symmetrize to clean up round-off
  Eigen::Matrix3d projector = 0.5 * (avg + avg.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eigen(projector);
  int dim = 0;
  for (int i = 0; i < 3; ++i)
    if (eigen.eigenvalues()(i) > 0.5) ++dim;
  Eigen::Matrix3Xd basis(3, dim);
  int col = 0;
  for (int i = 0; i < 3; ++i) {
    if (eigen.eigenvalues()(i) <= 0.5) continue;
    Eigen::Vector3d v = eigen.eigenvectors().col(i);
    int lead;
    v.cwiseAbs().maxCoeff(&lead);
    if (v(lead) < 0) v = -v;
    basis.col(col++) = v;
  }
  return basis;
}

DiagnosticsReport report(const ProblemSetup& setup, const SymmetryGroup& group,
                         const FourierLoop& x, int grid_points) {
  if (static_cast<int>(setup.masses.size()) != x.n)
    throw DimensionMismatch("masses and loop disagree on body count");
  DiagnosticsReport out;

  auto [J_mean, J_dev] = angular_momentum_profile(setup, x, grid_points);
  out.J_mean = J_mean;
  out.J_max_deviation = J_dev;
  Eigen::Matrix3Xd basis = estar_space(group);
  out.J_in_Estar_residual =
      basis.cols() == 0 ? J_mean.norm() : (J_mean - basis * (basis.transpose() * J_mean)).norm();

  auto s = sample(x, grid_points);
  Eigen::MatrixXd cloud(3, x.n * grid_points);
  for (int j = 0; j < grid_points; ++j)
    cloud.middleCols(j * x.n, x.n) = s.positions[j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cloud);
  double sigma1 = svd.singularValues()(0);
  out.planarity_ratio = sigma1 > 0.0 ? svd.singularValues()(2) / sigma1 : 0.0;

  const Eigen::Matrix3d& Om = setup.frame.Omega;
  Eigen::Matrix3d Om2 = Om * Om;
  double min_dist = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (int j = 0; j < grid_points; ++j) {
    double t = kTwoPi * j / grid_points;
    for (int i = 0; i < x.n; ++i) {
      Eigen::Vector3d pull = Eigen::Vector3d::Zero();
      for (int l = 0; l < x.n; ++l) {
        if (l == i) continue;
        Eigen::Vector3d d = s.positions[j].col(i) - s.positions[j].col(l);
        double r = d.norm();
        if (l > i) min_dist = std::min(min_dist, r);
        pull -= setup.alpha * setup.masses[i] * setup.masses[l] *
                std::pow(r, -(setup.alpha + 2.0)) * d;
      }
      Eigen::Vector3d lhs =
          setup.masses[i] * (x.acceleration(i, t) + 2.0 * Om * s.velocities[j].col(i) +
                             Om2 * s.positions[j].col(i));
      worst = std::max(worst, (lhs - pull).norm());
    }
  }
  out.min_pairwise_distance = min_dist;
  out.el_residual_max = worst;
  return out;
}

}  // namespace sym3b
