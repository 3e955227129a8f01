#include "sym3b/baselines.hpp"

#include <cmath>

#include "sym3b/errors.hpp"

namespace sym3b {

namespace {

std::vector<double> normalized_masses(const std::vector<double>& masses) {
  if (masses.size() != 3)
    throw PreconditionViolated("baselines are specific to three bodies");
  double total = 0.0;
  for (double m : masses) {
    if (!(m > 0.0)) throw MassOutOfRange("masses must be positive");
    total += m;
  }
  std::vector<double> out(3);
  for (int i = 0; i < 3; ++i) out[i] = masses[i] / total;
  return out;
}

double frequency_or_throw(int k, double omega) {
  double s = k + omega;
  if (std::fabs(s) < 1e-12)
    throw ZeroFrequency("k + omega = 0: the rotating scale is undefined");
  return s;
}

Baseline finish(CentralConfiguration cc, double s) {
  cc.inertia = 0.0;
  for (int i = 0; i < 3; ++i)
    cc.inertia += cc.masses[i] * cc.positions.col(i).squaredNorm();
  cc.shape_potential = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      cc.shape_potential += cc.masses[i] * cc.masses[j] /
                            std::pow((cc.positions.col(i) - cc.positions.col(j)).norm(),
                                     cc.alpha);
  double residual = s * s * cc.inertia - cc.alpha * cc.shape_potential;
  if (std::fabs(residual) > 1e-10 * std::max(1.0, cc.alpha * cc.shape_potential))
    throw PreconditionViolated("constructed configuration violates Kepler's law");
  double action = kTwoPi * (0.5 * s * s * cc.inertia + cc.shape_potential);
  return Baseline{std::move(cc), action};
}

}  // namespace

Baseline lagrange_solution(const std::vector<double>& masses, double alpha, int k,
                           double omega) {
  if (!(alpha > 0.0)) throw PreconditionViolated("alpha must be positive");
  double s = frequency_or_throw(k, omega);
  CentralConfiguration cc;
  cc.shape = Shape::lagrange;
  cc.k = k;
  cc.masses = normalized_masses(masses);
  cc.alpha = alpha;
  // the side never depends on the masses: with sum(m)=1 and the center of
  // mass at the origin, I = sum_{i<j} m_i m_j d^2 and U = sum m_i m_j / d^alpha
  double side = std::pow(alpha / (s * s), 1.0 / (alpha + 2.0));
  cc.R = side / std::sqrt(3.0);
  cc.positions.resize(3, 3);
  for (int i = 0; i < 3; ++i) {
    double th = kTwoPi * i / 3.0;
    cc.positions.col(i) = cc.R * Eigen::Vector3d(std::cos(th), std::sin(th), 0.0);
  }
  Eigen::Vector3d bary = Eigen::Vector3d::Zero();
  for (int i = 0; i < 3; ++i) bary += cc.masses[i] * cc.positions.col(i);
  cc.positions.colwise() -= bary;
  return finish(std::move(cc), s);
}

Baseline euler_solution(const std::vector<double>& masses, double alpha, int k,
                        double omega) {
  if (!(alpha > 0.0)) throw PreconditionViolated("alpha must be positive");
  auto m = normalized_masses(masses);
  if (std::fabs(m[0] - m[1]) > 1e-12)
    throw AsymmetricMasses("collinear baseline requires m1 = m2");
  double s = frequency_or_throw(k, omega);
  double beta = s * s / (m[0] * std::pow(2.0, -alpha) + 2.0 * m[2]);
  CentralConfiguration cc;
  cc.shape = Shape::euler;
  cc.k = k;
  cc.masses = m;
  cc.alpha = alpha;
  cc.R = std::pow(alpha / (2.0 * beta), 1.0 / (alpha + 2.0));
  cc.positions.resize(3, 3);
  cc.positions.col(0) = Eigen::Vector3d(cc.R, 0, 0);
  cc.positions.col(1) = Eigen::Vector3d(-cc.R, 0, 0);
  cc.positions.col(2) = Eigen::Vector3d::Zero();
  return finish(std::move(cc), s);
}

FourierLoop embedded_loop(const CentralConfiguration& config) {
  // x_i(t) = R_z(-k t) xbar_i, the orientation that co-adds with the frame
  int k = config.k;
  int col = std::abs(k);
  auto x = FourierLoop::zero(3, std::max(col, 1));
  double e = k >= 0 ? 1.0 : -1.0;
  for (int i = 0; i < 3; ++i) {
    double px = config.positions(0, i);
    double py = config.positions(1, i);
    if (k == 0) {
      x.a(3 * i + 0, 0) = px;
      x.a(3 * i + 1, 0) = py;
      continue;
    }
    x.a(3 * i + 0, col) = px;
    x.b(3 * i + 0, col) = e * py;
    x.a(3 * i + 1, col) = py;
    x.b(3 * i + 1, col) = -e * px;
  }
  return x;
}

std::set<int> admissible_rotation_numbers(const SymmetryGroup& group, Shape shape,
                                          int k_min, int k_max) {
  if (k_min > k_max) throw PreconditionViolated("empty winding range");
  std::set<int> out;
  for (int k = k_min; k <= k_max; ++k)
    if (admits_rotating_loop(group, shape, k)) out.insert(k);
  return out;
}

bool gordon_predicate(const SymmetryGroup& group, const std::vector<double>& masses,
                      double alpha, double omega) {
  if (!(alpha > 0.0)) throw PreconditionViolated("alpha must be positive");
  auto carrier = group;
  set_masses(carrier, normalized_masses(masses));
  // the unconstrained minimum of |k + omega| sits at a neighbor of -omega
  int below = static_cast<int>(std::floor(-omega));
  double best = std::min(std::fabs(below + omega), std::fabs(below + 1 + omega));
  if (best < 1e-12) return false;
  for (int k : {below, below + 1}) {
    if (std::fabs(k + omega) > best + 1e-12) continue;
    if (admits_rotating_loop(carrier, Shape::lagrange, k)) return true;
  }
  return false;
}

}  // namespace sym3b
