#include "sym3b/loop.hpp"

#include <cmath>
#include <random>

namespace sym3b {

FourierLoop FourierLoop::zero(int n, int order) {
  if (n < 1 || order < 0) throw PreconditionViolated("loop needs n >= 1 and order >= 0");
  FourierLoop x;
  x.n = n;
  x.order = order;
  x.a = Eigen::MatrixXd::Zero(3 * n, order + 1);
  x.b = Eigen::MatrixXd::Zero(3 * n, order + 1);
  return x;
}

Eigen::Vector3d FourierLoop::position(int body, double t) const {
  if (body < 0 || body >= n) throw DimensionMismatch("body index out of range");
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  for (int k = 0; k <= order; ++k)
    p += a.block<3, 1>(3 * body, k) * std::cos(k * t) +
         b.block<3, 1>(3 * body, k) * std::sin(k * t);
  return p;
}

Eigen::Vector3d FourierLoop::velocity(int body, double t) const {
  if (body < 0 || body >= n) throw DimensionMismatch("body index out of range");
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (int k = 1; k <= order; ++k)
    v += k * (-a.block<3, 1>(3 * body, k) * std::sin(k * t) +
              b.block<3, 1>(3 * body, k) * std::cos(k * t));
  return v;
}

Eigen::Vector3d FourierLoop::acceleration(int body, double t) const {
  if (body < 0 || body >= n) throw DimensionMismatch("body index out of range");
  Eigen::Vector3d w = Eigen::Vector3d::Zero();
  for (int k = 1; k <= order; ++k)
    w -= static_cast<double>(k) * k *
         (a.block<3, 1>(3 * body, k) * std::cos(k * t) +
          b.block<3, 1>(3 * body, k) * std::sin(k * t));
  return w;
}

double FourierLoop::max_abs_coeff() const {
  if (a.size() == 0) return 0.0;
  return std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
}

SampledLoop sample(const FourierLoop& x, int M) {
  if (M < 2 * x.order + 2)
    throw PreconditionViolated("grid too small: need M >= 2*order + 2");
  SampledLoop s;
  s.M = M;
  s.positions.assign(M, Eigen::Matrix3Xd::Zero(3, x.n));
  s.velocities.assign(M, Eigen::Matrix3Xd::Zero(3, x.n));
  for (int j = 0; j < M; ++j) {
    double t = kTwoPi * j / M;
    for (int k = 0; k <= x.order; ++k) {
      double c = std::cos(k * t), sn = std::sin(k * t);
      for (int i = 0; i < x.n; ++i) {
        s.positions[j].col(i) += x.a.block<3, 1>(3 * i, k) * c + x.b.block<3, 1>(3 * i, k) * sn;
        s.velocities[j].col(i) +=
            k * (-x.a.block<3, 1>(3 * i, k) * sn + x.b.block<3, 1>(3 * i, k) * c);
      }
    }
  }
  return s;
}

FourierLoop fit_loop(const std::vector<Eigen::Matrix3Xd>& positions, int order) {
  int M = static_cast<int>(positions.size());
  if (M < 2 * order + 2)
    throw PreconditionViolated("grid too small: need M >= 2*order + 2");
  int n = static_cast<int>(positions[0].cols());
  FourierLoop x = FourierLoop::zero(n, order);
  for (int j = 0; j < M; ++j) {
    if (positions[j].cols() != n) throw DimensionMismatch("inconsistent sample width");
    double t = kTwoPi * j / M;
    for (int k = 0; k <= order; ++k) {
      double scale = (k == 0 ? 1.0 : 2.0) / M;
      double c = std::cos(k * t) * scale, sn = std::sin(k * t) * scale;
      for (int i = 0; i < n; ++i) {
        x.a.block<3, 1>(3 * i, k) += positions[j].col(i) * c;
        x.b.block<3, 1>(3 * i, k) += positions[j].col(i) * sn;
      }
    }
  }
  x.b.col(0).setZero();
  return x;
}

void center_loop(FourierLoop& x, const std::vector<double>& masses) {
  if (static_cast<int>(masses.size()) != x.n)
    throw DimensionMismatch("mass count != body count");
  for (int k = 0; k <= x.order; ++k) {
    Eigen::Vector3d ma = Eigen::Vector3d::Zero(), mb = Eigen::Vector3d::Zero();
    for (int i = 0; i < x.n; ++i) {
      ma += masses[i] * x.a.block<3, 1>(3 * i, k);
      mb += masses[i] * x.b.block<3, 1>(3 * i, k);
    }
    for (int i = 0; i < x.n; ++i) {
      x.a.block<3, 1>(3 * i, k) -= ma;
      x.b.block<3, 1>(3 * i, k) -= mb;
    }
  }
}

FourierLoop act_on_loop(const GroupElement& g, const FourierLoop& x) {
  if (g.perm.size() != x.n) throw DimensionMismatch("element permutation size != loop n");
  FourierLoop y = FourierLoop::zero(x.n, x.order);
  Permutation inv = g.perm.inverse();
  double e = g.time.orientation, s = g.time.shift;
  // x_j(e t - e s): cos(k u) = cos(k(t-s)); sin(k u) = e sin(k(t-s)).
  for (int k = 0; k <= x.order; ++k) {
    double ck = std::cos(k * s), sk = std::sin(k * s);
    for (int i = 0; i < x.n; ++i) {
      int j = inv(i);
      Eigen::Vector3d aj = x.a.block<3, 1>(3 * j, k), bj = x.b.block<3, 1>(3 * j, k);
      y.a.block<3, 1>(3 * i, k) = g.space * (aj * ck - e * bj * sk);
      y.b.block<3, 1>(3 * i, k) = g.space * (aj * sk + e * bj * ck);
    }
  }
  y.b.col(0).setZero();
  return y;
}

FourierLoop project_equivariant(const SymmetryGroup& group, const FourierLoop& x) {
  const auto& masses = group.masses_or_throw();
  if (group.n != x.n) throw DimensionMismatch("group n != loop n");
  FourierLoop acc = FourierLoop::zero(x.n, x.order);
  for (const auto& g : group.elements) {
    FourierLoop gx = act_on_loop(g, x);
    acc.a += gx.a;
    acc.b += gx.b;
  }
  acc.a /= group.order();
  acc.b /= group.order();
  center_loop(acc, masses);
  return acc;
}

FourierLoop random_equivariant_loop(const SymmetryGroup& group, int order, std::uint64_t seed,
                                    double amplitude) {
  if (amplitude <= 0.0) throw PreconditionViolated("amplitude must be positive");
  const auto& masses = group.masses_or_throw();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FourierLoop x = FourierLoop::zero(group.n, order);
  for (int i = 0; i < group.n; ++i)
    for (int c = 0; c < 3; ++c)
      for (int k = 0; k <= order; ++k) {
        double scale = amplitude / (1.0 + k * k);
        x.a(3 * i + c, k) = scale * gauss(rng);
        x.b(3 * i + c, k) = k == 0 ? 0.0 : scale * gauss(rng);
      }
  center_loop(x, masses);
  x = project_equivariant(group, x);
  if (x.max_abs_coeff() <= 1e-12 * amplitude)
    throw DegenerateOutput("equivariant projection vanished; raise the order");
  return x;
}

}  // namespace sym3b
