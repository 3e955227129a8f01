#include "sym3b/variations.hpp"

#include <cmath>
#include <random>

#include "sym3b/errors.hpp"
#include "testkit.hpp"

using namespace sym3b;

namespace {

const std::vector<double> kEqual{1.0 / 3, 1.0 / 3, 1.0 / 3};

FourierLoop planar_wiggle_loop(int order, unsigned seed, double wiggle) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-wiggle, wiggle);
  auto x = FourierLoop::zero(3, order);
  for (int i = 0; i < 3; ++i) {
    double th = kTwoPi * i / 3.0;
    x.a(3 * i + 0, 0) = std::cos(th);
    x.a(3 * i + 1, 0) = std::sin(th);
    for (int k = 1; k <= order; ++k)
      for (int c = 0; c < 2; ++c) {
        x.a(3 * i + c, k) = u(rng);
        x.b(3 * i + c, k) = u(rng);
      }
  }
  return x;
}

// lift the scalar loops into the vertical rows of a copy of the planar loop
FourierLoop lifted(const FourierLoop& planar, const ScalarLoops& phi, double eps) {
  auto x = FourierLoop::zero(planar.n, std::max(planar.order, phi.order));
  x.a.leftCols(planar.order + 1) = planar.a;
  x.b.leftCols(planar.order + 1) = planar.b;
  for (int i = 0; i < planar.n; ++i) {
    x.a.row(3 * i + 2).head(phi.order + 1) += eps * phi.a.row(i);
    x.b.row(3 * i + 2).head(phi.order + 1) += eps * phi.b.row(i);
  }
  return x;
}

}  // namespace

TEST_CASE("zero variation vanishes") {
  auto base = lagrange_solution(kEqual, 1.0, 1, 0.0);
  auto setup = ProblemSetup::equal(3);
  auto phi = ScalarLoops::zero(3, 2);
  CHECK(second_variation_vertical(setup, embedded_loop(base.config), phi) == 0.0);
}

TEST_CASE("lemma direction reproduces the closed form") {
  struct Case {
    std::vector<double> masses;
    double alpha;
    int k;
    double omega;
  };
  for (const auto& c : {Case{kEqual, 1.0, 1, 0.0}, Case{kEqual, 1.0, 2, 0.3},
                        Case{{0.5, 0.3, 0.2}, 1.4, -1, 0.7},
                        Case{{0.45, 0.45, 0.1}, 0.9, 0, 0.8}}) {
    auto base = lagrange_solution(c.masses, c.alpha, c.k, c.omega);
    auto phi = ScalarLoops::zero(3, 1);
    for (int i = 0; i < 3; ++i) {
      phi.a(i, 1) = base.config.positions(0, i);
      phi.b(i, 1) = base.config.positions(1, i);
    }
    ProblemSetup setup(base.config.masses, c.alpha, RotatingFrame::about_z(c.omega));
    double numeric = second_variation_vertical(setup, embedded_loop(base.config), phi);
    double closed =
        kPi * (base.config.inertia - c.alpha * base.config.shape_potential);
    CHECK_MSG(std::fabs(numeric - closed) <= 1e-6 * (1.0 + std::fabs(closed)),
              "closed form at alpha " + std::to_string(c.alpha));
  }
}

TEST_CASE("matches finite differences of the full action") {
  ProblemSetup setup(kEqual, 1.0, RotatingFrame::about_z(0.3));
  auto planar = planar_wiggle_loop(3, 11, 0.1);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto phi = ScalarLoops::zero(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k <= 3; ++k) {
      phi.a(i, k) = u(rng);
      if (k > 0) phi.b(i, k) = u(rng);
    }
  double predicted = second_variation_vertical(setup, planar, phi);
  auto act = [&](double eps) {
    return action_and_gradient(setup, lifted(planar, phi, eps)).value;
  };
  double a0 = act(0.0);
  auto second_diff = [&](double eps) {
    return (act(eps) - 2.0 * a0 + act(-eps)) / (eps * eps);
  };
  double coarse = second_diff(1e-4);
  double fine = second_diff(5e-5);
  double extrapolated = (4.0 * fine - coarse) / 3.0;
  CHECK_REL(predicted, extrapolated, 1e-5);
}

TEST_CASE("vertical variation preconditions") {
  auto setup = ProblemSetup::equal(3);
  auto planar = planar_wiggle_loop(2, 3, 0.05);
  auto phi = ScalarLoops::zero(3, 1);
  phi.b(0, 1) = 1.0;
  auto bent = planar;
  bent.a(2, 1) = 0.2;  // vertical content in the base loop
  CHECK_THROWS(PreconditionViolated, second_variation_vertical(setup, bent, phi));
  ProblemSetup tilted(kEqual, 1.0, RotatingFrame(Eigen::Vector3d(0.1, 0.0, 0.3)));
  CHECK_THROWS(PreconditionViolated, second_variation_vertical(tilted, planar, phi));
  CHECK_THROWS(PreconditionViolated, second_variation_vertical(setup, planar, phi, 4));
  auto crash = FourierLoop::zero(3, 1);  // everybody at the origin
  CHECK_THROWS(CollisionAtSample, second_variation_vertical(setup, crash, phi));
}

TEST_CASE("equilateral instability report") {
  // at winding 2 the Kepler scale shrinks the triangle, I = (1/3) 4^(-2/3)
  auto fast = lagrange_instability_test(kEqual, 1.0, 2, 0.0);
  double expected = -kPi * std::pow(4.0, -2.0 / 3.0);
  CHECK_CLOSE(*fast.closed_form, expected, 1e-12);
  CHECK_REL(fast.second_derivative, expected, 1e-9);
  CHECK(fast.criterion_satisfied);
  CHECK(*fast.threshold == 1.0);

  auto boundary = lagrange_instability_test(kEqual, 1.0, 1, 0.0);
  CHECK(std::fabs(*boundary.closed_form) <= 1e-12);
  CHECK(!boundary.criterion_satisfied);

  CHECK_THROWS(ZeroFrequency, lagrange_instability_test(kEqual, 1.0, 0, 0.0));

  // every winding the L6-+ constraint allows is unstable for 0 < |omega| < 1
  for (int k : {-4, -2, 2, 4})
    for (double omega : {0.3, -0.7, 0.99}) {
      auto rep = lagrange_instability_test(kEqual, 1.0, k, omega);
      CHECK_MSG(rep.criterion_satisfied,
                "winding " + std::to_string(k) + " at omega " + std::to_string(omega));
      CHECK(*rep.closed_form < 0.0);
    }
}

TEST_CASE("collinear threshold values") {
  CHECK_CLOSE(euler_threshold(kEqual, 1.0), 5.0 / 12.0, 1e-14);
  CHECK_CLOSE(euler_threshold({0.4999999, 0.4999999, 2e-7}, 1.0), 0.125, 1e-6);
  CHECK_CLOSE(euler_threshold({1e-7, 1e-7, 1.0 - 2e-7}, 1.0), 1.0, 1e-6);
  // affine in m1 with slope 2^-(alpha+1) - 2
  for (double alpha : {1.0, 1.4}) {
    double t1 = euler_threshold({0.2, 0.2, 0.6}, alpha);
    double t2 = euler_threshold({0.4, 0.4, 0.2}, alpha);
    double slope = std::pow(2.0, -(alpha + 1.0)) - 2.0;
    CHECK_REL((t2 - t1) / 0.2, slope, 1e-12);
  }
  CHECK_THROWS(AsymmetricMasses, euler_threshold({0.5, 0.3, 0.2}, 1.0));
  CHECK_THROWS(MassOutOfRange, euler_threshold({0.5, 0.5, 0.0}, 1.0));
}

TEST_CASE("sine variation at the collinear baseline") {
  std::vector<double> v{1.0, 1.0, -2.0};
  for (double omega : {0.9, 0.5, 0.7, 1.2}) {
    auto base = euler_solution(kEqual, 1.0, 0, omega);
    ProblemSetup setup(kEqual, 1.0, RotatingFrame::about_z(omega));
    auto rep = sine_variation_test(setup, base, v);
    CHECK(std::fabs(rep.second_derivative - *rep.closed_form) <=
          1e-6 * (1.0 + std::fabs(*rep.closed_form)));
    CHECK_CLOSE(*rep.threshold, 5.0 / 12.0, 1e-14);
    bool expected = omega * omega > 5.0 / 12.0;
    CHECK_MSG(rep.criterion_satisfied == expected,
              "criterion at omega " + std::to_string(omega));
    if (expected) CHECK(rep.second_derivative < 0.0);
  }
  // zero direction: nothing to report
  auto base = euler_solution(kEqual, 1.0, 0, 0.9);
  ProblemSetup setup(kEqual, 1.0, RotatingFrame::about_z(0.9));
  auto rep = sine_variation_test(setup, base, {0.0, 0.0, 0.0});
  CHECK(rep.second_derivative == 0.0);
  CHECK(!rep.criterion_satisfied);
  CHECK_THROWS(PreconditionViolated, sine_variation_test(setup, base, {1.0, 2.0, 3.0}));
  auto lag = lagrange_solution(kEqual, 1.0, 1, 0.0);
  CHECK_THROWS(PreconditionViolated, sine_variation_test(setup, lag, v));
}

TEST_CASE("window of frame speeds forcing non-planar minimizers") {
  auto window = nonplanar_window(kEqual, 1.0, {0}, 2);
  CHECK(window.size() == 1);
  CHECK_CLOSE(window[0].first, std::sqrt(5.0 / 12.0), 1e-12);
  CHECK_CLOSE(window[0].second, 2.0 - std::sqrt(5.0 / 12.0), 1e-12);
  CHECK_CLOSE(window[0].first, 0.645497, 1e-6);

  // unconstrained windings: nonempty exactly when m1 > 3/7
  auto roomy = nonplanar_window({0.45, 0.45, 0.10}, 1.0, {0}, 1);
  CHECK(roomy.size() == 1);
  auto cramped = nonplanar_window({0.42, 0.42, 0.16}, 1.0, {0}, 1);
  CHECK(cramped.empty());

  CHECK_THROWS(PreconditionViolated, nonplanar_window(kEqual, 1.0, {}, 2));
}

TESTKIT_MAIN
