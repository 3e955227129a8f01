#include "sym3b/action.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "sym3b/analysis.hpp"

namespace sym3b {

RotatingFrame::RotatingFrame(const Eigen::Vector3d& w) : omega_vec(w) {
  Omega << 0, w.z(), -w.y(),
      -w.z(), 0, w.x(),
      w.y(), -w.x(), 0;
}

ProblemSetup::ProblemSetup(std::vector<double> m, double a, RotatingFrame f)
    : masses(std::move(m)), alpha(a), frame(std::move(f)) {
  if (masses.empty()) throw PreconditionViolated("setup needs at least one body");
  if (!(alpha > 0.0)) throw PreconditionViolated("alpha must be positive");
  double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (total <= 0.0) throw MassOutOfRange("masses must be positive");
  for (double& mi : masses) {
    if (mi <= 0.0) throw MassOutOfRange("masses must be positive");
    mi /= total;
  }
}

ProblemSetup ProblemSetup::equal(int n, double a, RotatingFrame f) {
  return ProblemSetup(std::vector<double>(n, 1.0), a, std::move(f));
}

double potential(const ProblemSetup& setup, const Eigen::Matrix3Xd& configuration) {
  int n = setup.n();
  if (configuration.cols() != n) throw DimensionMismatch("configuration width != mass count");
  double u = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double r = (configuration.col(i) - configuration.col(j)).norm();
      if (r < setup.collision_eps) throw CollisionAtSample("bodies coincide");
      u += setup.masses[i] * setup.masses[j] / std::pow(r, setup.alpha);
    }
  return u;
}

namespace {

// cos/sin of k*t_j looked up as (j*k) mod M on one period table, so shifted
// grids reuse exactly the same values and group-invariance survives rounding
struct TrigTable {
  int M;
  std::vector<double> c, s;
  explicit TrigTable(int M) : M(M), c(M), s(M) {
    for (int m = 0; m < M; ++m) {
      c[m] = std::cos(kTwoPi * m / M);
      s[m] = std::sin(kTwoPi * m / M);
    }
  }
  double cos_kt(int k, int j) const { return c[static_cast<size_t>(j) * k % M]; }
  double sin_kt(int k, int j) const { return s[static_cast<size_t>(j) * k % M]; }
};

}  // namespace

ActionParts action_probe(const ProblemSetup& setup, const FourierLoop& x, int M) {
  int n = setup.n();
  if (x.n != n) throw DimensionMismatch("loop n != mass count");
  if (M < 2 * x.order + 2) throw PreconditionViolated("grid too small: need M >= 2*order + 2");

  TrigTable trig(M);
  const double h = kTwoPi / M;
  const Eigen::Matrix3d& Om = setup.frame.Omega;

  ActionParts out;
  out.min_distance = std::numeric_limits<double>::infinity();

  Eigen::Matrix3Xd pos(3, n), vel(3, n);
  for (int j = 0; j < M; ++j) {
    pos.setZero();
    vel.setZero();
    for (int k = 0; k <= x.order; ++k) {
      double ck = trig.cos_kt(k, j), sk = trig.sin_kt(k, j);
      for (int i = 0; i < n; ++i) {
        auto ak = x.a.block<3, 1>(3 * i, k), bk = x.b.block<3, 1>(3 * i, k);
        pos.col(i) += ak * ck + bk * sk;
        vel.col(i) += k * (bk * ck - ak * sk);
      }
    }

    double kinetic = 0.0;
    for (int i = 0; i < n; ++i)
      kinetic += 0.5 * setup.masses[i] * (vel.col(i) + Om * pos.col(i)).squaredNorm();

    double u = 0.0;
    for (int i = 0; i < n; ++i)
      for (int l = i + 1; l < n; ++l) {
        double r = (pos.col(i) - pos.col(l)).norm();
        out.min_distance = std::min(out.min_distance, r);
        if (r < setup.collision_eps)
          throw CollisionAtSample("pairwise distance below guard at grid point " +
                                  std::to_string(j));
        u += setup.masses[i] * setup.masses[l] / std::pow(r, setup.alpha);
      }

    out.kinetic += h * kinetic;
    out.potential += h * u;
  }
  out.value = out.kinetic + out.potential;
  return out;
}

ActionEval action_and_gradient(const ProblemSetup& setup, const FourierLoop& x, int M) {
  int n = setup.n();
  if (x.n != n) throw DimensionMismatch("loop n != mass count");
  if (M < 2 * x.order + 2) throw PreconditionViolated("grid too small: need M >= 2*order + 2");

  TrigTable trig(M);
  const double h = kTwoPi / M;
  const Eigen::Matrix3d& Om = setup.frame.Omega;

  ActionEval out;
  out.gradient = FourierLoop::zero(n, x.order);

  Eigen::Matrix3Xd pos(3, n), vel(3, n), w(3, n), gx(3, n), gv(3, n);
  for (int j = 0; j < M; ++j) {
    pos.setZero();
    vel.setZero();
    for (int k = 0; k <= x.order; ++k) {
      double ck = trig.cos_kt(k, j), sk = trig.sin_kt(k, j);
      for (int i = 0; i < n; ++i) {
        auto ak = x.a.block<3, 1>(3 * i, k), bk = x.b.block<3, 1>(3 * i, k);
        pos.col(i) += ak * ck + bk * sk;
        vel.col(i) += k * (bk * ck - ak * sk);
      }
    }

    double kinetic = 0.0;
    for (int i = 0; i < n; ++i) {
      w.col(i) = vel.col(i) + Om * pos.col(i);
      kinetic += 0.5 * setup.masses[i] * w.col(i).squaredNorm();
      gv.col(i) = setup.masses[i] * w.col(i);
      gx.col(i) = -setup.masses[i] * (Om * w.col(i));
    }

    double u = 0.0;
    for (int i = 0; i < n; ++i)
      for (int l = i + 1; l < n; ++l) {
        Eigen::Vector3d d = pos.col(i) - pos.col(l);
        double r = d.norm();
        if (r < setup.collision_eps)
          throw CollisionAtSample("pairwise distance below guard at grid point " +
                                  std::to_string(j));
        double mm = setup.masses[i] * setup.masses[l];
        u += mm / std::pow(r, setup.alpha);
        Eigen::Vector3d pull = -setup.alpha * mm / std::pow(r, setup.alpha + 2.0) * d;
        gx.col(i) += pull;
        gx.col(l) -= pull;
      }

    out.value += h * (kinetic + u);

    for (int k = 0; k <= x.order; ++k) {
      double ck = h * trig.cos_kt(k, j), sk = h * trig.sin_kt(k, j);
      for (int i = 0; i < n; ++i) {
        out.gradient.a.block<3, 1>(3 * i, k) += gx.col(i) * ck - k * gv.col(i) * sk;
        out.gradient.b.block<3, 1>(3 * i, k) += gx.col(i) * sk + k * gv.col(i) * ck;
      }
    }
  }
  out.gradient.b.col(0).setZero();
  return out;
}

double action_of_equivariant(const ProblemSetup& setup, const SymmetryGroup& group,
                             const FourierLoop& x, int M) {
  double speed = setup.frame.speed();
  if (speed > 0.0) {
    Eigen::Vector3d unit = setup.frame.omega_vec / speed;
    bool on_axis = false;
    for (const auto& axis : rotation_axes(group))
      if ((unit - axis).norm() <= 1e-9 || (unit + axis).norm() <= 1e-9) {
        on_axis = true;
        break;
      }
    if (!on_axis)
      throw NotARotationAxis("frame vector is not along a rotation axis of the group");
  }

  double base = action_and_gradient(setup, x, M).value;
  for (const auto& g : group.generators) {
    double moved = action_and_gradient(setup, act_on_loop(g, x), M).value;
    if (std::fabs(moved - base) > 1e-9 * std::max(1.0, std::fabs(base)))
      throw PreconditionViolated("action is not invariant on this loop; is it equivariant?");
  }
  return base;
}

}  // namespace sym3b
