#include "sym3b/diagnostics.hpp"

#include <cmath>

#include "sym3b/baselines.hpp"
#include "sym3b/classification.hpp"
#include "sym3b/errors.hpp"
#include "testkit.hpp"

using namespace sym3b;

namespace {

const std::vector<double> kEqual{1.0 / 3, 1.0 / 3, 1.0 / 3};

Eigen::Vector3d momentum_at(const ProblemSetup& setup, const FourierLoop& x, double t) {
  Eigen::Vector3d J = Eigen::Vector3d::Zero();
  for (int i = 0; i < x.n; ++i)
    J += setup.masses[i] * x.position(i, t).cross(x.velocity(i, t));
  return J;
}

}  // namespace

TEST_CASE("rigid rotation carries constant axis momentum") {
  // winding k turns by -kt here, so J = -k I e3
  for (int k : {2, -1}) {
    auto masses = k == 2 ? kEqual : std::vector<double>{0.5, 0.3, 0.2};
    auto base = lagrange_solution(masses, 1.0, k, 0.3);
    ProblemSetup setup(masses, 1.0, RotatingFrame::about_z(0.3));
    auto [J_mean, dev] = angular_momentum_profile(setup, embedded_loop(base.config));
    Eigen::Vector3d expected = -k * base.config.inertia * Eigen::Vector3d::UnitZ();
    CHECK((J_mean - expected).norm() <= 1e-12);
    CHECK(dev <= 1e-10);
  }
  auto still = lagrange_solution(kEqual, 1.0, 0, 1.0);
  auto setup = ProblemSetup::equal(3);
  auto [J0, dev0] = angular_momentum_profile(setup, embedded_loop(still.config));
  CHECK(J0.norm() <= 1e-14);
  CHECK(dev0 <= 1e-14);
}

TEST_CASE("momentum transforms by the twisted representation") {
  auto setup = ProblemSetup::equal(3);
  for (const char* name : {"C3-", "L6-+", "D6+-", "H2+-", "L2-+"}) {
    const auto& group = catalog(name).group;
    auto x = random_equivariant_loop(group, 6, 17, 1.0);
    double scale = 1.0;
    for (double t : {0.0, 0.3, 1.9, 4.4})
      scale = std::max(scale, momentum_at(setup, x, t).norm());
    for (const auto& g : group.elements)
      for (double t : {0.0, 0.3, 1.9, 4.4}) {
        Eigen::Vector3d lhs = momentum_at(setup, x, g.time.apply(t));
        Eigen::Vector3d rhs = g.space.determinant() * g.time.orientation * g.space *
                              momentum_at(setup, x, t);
        CHECK_MSG((lhs - rhs).norm() <= 1e-10 * scale, std::string("identity for ") + name);
      }
  }
}

TEST_CASE("fixed momentum subspace by group") {
  auto trivial = generate_group(3, {});
  CHECK(estar_space(trivial).cols() == 3);

  CHECK(estar_space(catalog("D6+-").group).cols() == 0);
  CHECK(estar_space(catalog("D6-+").group).cols() == 0);

  for (const char* name : {"C1-", "C3-", "L6-+", "L2-+", "H2-+", "vertical-isosceles"}) {
    auto basis = estar_space(catalog(name).group);
    CHECK_MSG(basis.cols() == 1, std::string("dimension for ") + name);
    CHECK_MSG(std::fabs(basis.col(0).dot(Eigen::Vector3d::UnitZ())) > 1.0 - 1e-12,
              std::string("axis for ") + name);
  }

  // two commuting half-turn axes leave a whole fixed plane
  auto plane = estar_space(catalog("L6++").group);
  CHECK(plane.cols() == 2);
  for (int c = 0; c < 2; ++c) CHECK(std::fabs(plane(2, c)) <= 1e-12);
}

TEST_CASE("equivariant momentum stays in the fixed subspace") {
  auto setup = ProblemSetup::equal(3);
  for (const char* name : {"C3-", "L6-+", "H4+-", "D6+-", "D12-+"}) {
    const auto& group = catalog(name).group;
    auto x = random_equivariant_loop(group, 5, 23, 1.0);
    auto basis = estar_space(group);
    auto [J_mean, dev] = angular_momentum_profile(setup, x);
    (void)dev;
    Eigen::Vector3d off = basis.cols() == 0
                              ? J_mean
                              : Eigen::Vector3d(J_mean - basis * (basis.transpose() * J_mean));
    double scale = std::max(1.0, J_mean.norm());
    CHECK_MSG(off.norm() <= 1e-10 * scale, std::string("containment for ") + name);
  }
}

TEST_CASE("report on an exact rigid baseline") {
  auto base = lagrange_solution(kEqual, 1.0, 2, 0.3);
  ProblemSetup setup(kEqual, 1.0, RotatingFrame::about_z(0.3));
  auto rep = report(setup, catalog("C1-").group, embedded_loop(base.config));
  CHECK(rep.J_max_deviation <= 1e-10);
  CHECK(rep.J_in_Estar_residual <= 1e-10);
  CHECK(rep.planarity_ratio <= 1e-12);
  double side = base.config.R * std::sqrt(3.0);
  CHECK_CLOSE(rep.min_pairwise_distance, side, 1e-12);
  CHECK(rep.el_residual_max <= 1e-8);
}

TEST_CASE("equations of motion need the frame to balance") {
  // the same triangle is a solution only when the frame supplies the spin
  auto base = lagrange_solution(kEqual, 1.0, 0, 1.0);
  auto loop = embedded_loop(base.config);
  ProblemSetup balanced(kEqual, 1.0, RotatingFrame::about_z(1.0));
  CHECK(report(balanced, generate_group(3, {}), loop).el_residual_max <= 1e-10);
  ProblemSetup frozen(kEqual, 1.0, RotatingFrame{});
  CHECK(report(frozen, generate_group(3, {}), loop).el_residual_max > 0.1);
}

TEST_CASE("collision margins are reported not thrown") {
  auto x = FourierLoop::zero(3, 1);  // everyone parked at the origin
  auto setup = ProblemSetup::equal(3);
  auto rep = report(setup, generate_group(3, {}), x);
  CHECK(rep.min_pairwise_distance == 0.0);
  CHECK(rep.planarity_ratio == 0.0);
}

TESTKIT_MAIN
