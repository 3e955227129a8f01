#include "sym3b/variations.hpp"

#include <algorithm>
#include <cmath>

#include "sym3b/errors.hpp"

namespace sym3b {

ScalarLoops ScalarLoops::zero(int n, int order) {
  if (n <= 0 || order < 0) throw PreconditionViolated("bad scalar loop shape");
  ScalarLoops s;
  s.n = n;
  s.order = order;
  s.a = Eigen::MatrixXd::Zero(n, order + 1);
  s.b = Eigen::MatrixXd::Zero(n, order + 1);
  return s;
}

double ScalarLoops::value(int body, double t) const {
  double out = a(body, 0);
  for (int k = 1; k <= order; ++k)
    out += a(body, k) * std::cos(k * t) + b(body, k) * std::sin(k * t);
  return out;
}

double ScalarLoops::derivative(int body, double t) const {
  double out = 0.0;
  for (int k = 1; k <= order; ++k)
    out += k * (b(body, k) * std::cos(k * t) - a(body, k) * std::sin(k * t));
  return out;
}

namespace {

void require_vertical_frame(const RotatingFrame& frame) {
  if (std::fabs(frame.omega_vec.x()) > 1e-12 || std::fabs(frame.omega_vec.y()) > 1e-12)
    throw PreconditionViolated(
        "vertical variations decouple only for frames along e3");
}

}  // namespace

double second_variation_vertical(const ProblemSetup& setup, const FourierLoop& planar_loop,
                                 const ScalarLoops& phi, int grid_points) {
  const int n = planar_loop.n;
  if (static_cast<int>(setup.masses.size()) != n || phi.n != n)
    throw DimensionMismatch("masses, loop, and variation disagree on body count");
  require_vertical_frame(setup.frame);
  for (int i = 0; i < n; ++i) {
    double flat = std::max(planar_loop.a.row(3 * i + 2).cwiseAbs().maxCoeff(),
                           planar_loop.b.row(3 * i + 2).cwiseAbs().maxCoeff());
    if (flat > 1e-12)
      throw PreconditionViolated("the base loop must have zero vertical part");
  }
  if (grid_points < 2 * std::max(planar_loop.order, phi.order) + 2)
    throw PreconditionViolated("grid too coarse for these coefficients");

  const double h = kTwoPi / grid_points;
  double total = 0.0;
  std::vector<double> val(n), der(n);
  for (int j = 0; j < grid_points; ++j) {
    double t = h * j;
    for (int i = 0; i < n; ++i) {
      val[i] = phi.value(i, t);
      der[i] = phi.derivative(i, t);
    }
    double kin = 0.0, pot = 0.0;
    for (int i = 0; i < n; ++i) kin += setup.masses[i] * der[i] * der[i];
    for (int i = 0; i < n; ++i) {
      Eigen::Vector3d pi = planar_loop.position(i, t);
      for (int l = i + 1; l < n; ++l) {
        double r = (pi - planar_loop.position(l, t)).norm();
        if (r < setup.collision_eps)
          throw CollisionAtSample("grid-point collision in the base loop");
        double diff = val[i] - val[l];
        pot += setup.masses[i] * setup.masses[l] * diff * diff /
               std::pow(r, setup.alpha + 2.0);
      }
    }
    total += h * (kin - setup.alpha * pot);
  }
  return total;
}

VariationReport lagrange_instability_test(const std::vector<double>& masses, double alpha,
                                          int k, double omega) {
  auto base = lagrange_solution(masses, alpha, k, omega);
  // the in-plane direction variation: phi_i(t) = (R_z(-t) xbar_i) . e1,
  // the k-th harmonic of the loop remapped onto the first harmonic
  auto phi = ScalarLoops::zero(3, 1);
  for (int i = 0; i < 3; ++i) {
    phi.a(i, 1) = base.config.positions(0, i);
    phi.b(i, 1) = base.config.positions(1, i);
  }
  ProblemSetup setup(base.config.masses, alpha, RotatingFrame::about_z(omega));
  VariationReport report;
  report.second_derivative =
      second_variation_vertical(setup, embedded_loop(base.config), phi);
  double s = k + omega;
  report.closed_form = kPi * base.config.inertia * (1.0 - s * s);
  report.threshold = 1.0;
  report.criterion_satisfied = s * s > 1.0;
  return report;
}

double euler_threshold(const std::vector<double>& masses, double alpha) {
  ProblemSetup probe(masses, alpha, RotatingFrame{});
  if (std::fabs(probe.masses[0] - probe.masses[1]) > 1e-12)
    throw AsymmetricMasses("the collinear threshold assumes m1 = m2");
  double m1 = probe.masses[0];
  if (!(m1 > 0.0 && m1 < 0.5))
    throw MassOutOfRange("threshold defined for m1 in (0, 1/2)");
  return m1 / std::pow(2.0, alpha + 1.0) + 1.0 - 2.0 * m1;
}

VariationReport sine_variation_test(const ProblemSetup& setup, const Baseline& euler_base,
                                    const std::vector<double>& v) {
  const auto& cc = euler_base.config;
  if (cc.shape != Shape::euler)
    throw PreconditionViolated("sine variation applies to collinear baselines");
  if (v.size() != 3) throw DimensionMismatch("one scalar per body");
  if (std::fabs(v[0] - v[1]) > 1e-12)
    throw PreconditionViolated("the sine variation lifts the outer pair together");
  if (setup.alpha != cc.alpha)
    throw PreconditionViolated("setup and baseline disagree on alpha");
  double budget = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(setup.masses[i] - cc.masses[i]) > 1e-12)
      throw PreconditionViolated("setup and baseline disagree on masses");
    budget += cc.masses[i] * v[i];
  }
  if (std::fabs(budget) > 1e-12)
    throw PreconditionViolated("variation must keep the center of mass flat");
  require_vertical_frame(setup.frame);

  auto phi = ScalarLoops::zero(3, 1);
  for (int i = 0; i < 3; ++i) phi.b(i, 1) = v[i];

  VariationReport report;
  report.second_derivative =
      second_variation_vertical(setup, embedded_loop(cc), phi);
  double closed = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      double r = (cc.positions.col(i) - cc.positions.col(j)).norm();
      double diff = v[i] - v[j];
      closed += cc.masses[i] * cc.masses[j] * diff * diff *
                (1.0 - cc.alpha * std::pow(r, -(cc.alpha + 2.0)));
    }
  report.closed_form = kPi * closed;
  report.threshold = euler_threshold(cc.masses, cc.alpha);
  report.criterion_satisfied = report.second_derivative < 0.0;

  // the sign must agree with the threshold predicate whenever it is resolved
  double s = cc.k + setup.frame.omega_vec.z();
  bool predicted = s * s > *report.threshold;
  if (std::fabs(report.second_derivative) > 1e-10 &&
      predicted != report.criterion_satisfied)
    throw PreconditionViolated("sine variation disagrees with the threshold predicate");
  return report;
}

std::vector<std::pair<double, double>> nonplanar_window(const std::vector<double>& masses,
                                                        double alpha,
                                                        const std::set<int>& residues,
                                                        int period) {
  if (residues.empty() || period <= 0)
    throw PreconditionViolated("need a nonempty residue constraint");
  double radius = std::sqrt(euler_threshold(masses, alpha));

  // admissible windings k hit omega at the mirrored lattice points -k
  std::set<double> points;
  for (int r : residues) {
    int rr = ((r % period) + period) % period;
    for (int m = -2; m <= 3; ++m) points.insert(static_cast<double>(-rr + m * period));
  }
  std::vector<double> sorted(points.begin(), points.end());

  std::vector<std::pair<double, double>> out;
  for (size_t i = 0; i + 1 < sorted.size(); ++i) {
    double lo = sorted[i] + radius;
    double hi = sorted[i + 1] - radius;
    if (hi <= lo) continue;
    if (lo >= 0.0 && lo < period) out.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace sym3b
