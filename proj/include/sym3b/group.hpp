#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "sym3b/errors.hpp"
#include "sym3b/permutation.hpp"

namespace sym3b {

// All catalog matrices and shifts are exact +-1 / multiples of pi; this slack
// only has to absorb accumulated composition round-off.
inline constexpr double kElementTol = 1e-9;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// t |-> orientation * t + shift on the circle of circumference 2*pi.
struct TimeTransform {
  double shift = 0.0;      // wrapped into [0, 2*pi)
  int orientation = 1;     // +1 or -1

  static TimeTransform identity() { return {}; }
  static TimeTransform time_shift(double s) { return {wrap(s), 1}; }
  static TimeTransform reflection(double about = 0.0) { return {wrap(2.0 * about), -1}; }

  double apply(double t) const { return orientation * t + shift; }

  // (a * b)(t) = a(b(t))
  friend TimeTransform compose(const TimeTransform& a, const TimeTransform& b) {
    return {wrap(a.orientation * b.shift + a.shift), a.orientation * b.orientation};
  }
  TimeTransform inverse() const { return {wrap(-orientation * shift), orientation}; }

  bool is_identity(double tol = kElementTol) const {
    return orientation == 1 && circle_dist(shift, 0.0) <= tol;
  }
  // Reflections always fix two times; a pure shift only if it is trivial.
  bool has_fixed_point(double tol = kElementTol) const {
    return orientation == -1 || circle_dist(shift, 0.0) <= tol;
  }
  // A fixed time of the transform (caller must check has_fixed_point).
  double fixed_time() const { return orientation == -1 ? shift / 2.0 : 0.0; }

  bool approx_equal(const TimeTransform& other, double tol = kElementTol) const {
    return orientation == other.orientation && circle_dist(shift, other.shift) <= tol;
  }

  static double wrap(double s) {
    s = std::fmod(s, kTwoPi);
    if (s < 0) s += kTwoPi;
    if (kTwoPi - s < 1e-12) s = 0.0;
    return s;
  }
  static double circle_dist(double a, double b) {
    double d = std::fabs(wrap(a) - wrap(b));
    return std::min(d, kTwoPi - d);
  }
};

// One symmetry: act on a loop by (g.x)_i(t) = space * x_{perm^-1(i)}(time^-1(t)).
struct GroupElement {
  TimeTransform time;
  Eigen::Matrix3d space = Eigen::Matrix3d::Identity();
  Permutation perm;

  GroupElement() = default;
  GroupElement(TimeTransform t, Eigen::Matrix3d s, Permutation p)
      : time(t), space(std::move(s)), perm(std::move(p)) {}

  static GroupElement identity(int n) {
    return {TimeTransform::identity(), Eigen::Matrix3d::Identity(), Permutation::identity(n)};
  }

  friend GroupElement compose(const GroupElement& a, const GroupElement& b) {
    return {compose(a.time, b.time), a.space * b.space, a.perm * b.perm};
  }
  GroupElement inverse() const { return {time.inverse(), space.transpose(), perm.inverse()}; }

  bool approx_equal(const GroupElement& other, double tol = kElementTol) const {
    return perm == other.perm && time.approx_equal(other.time, tol) &&
           (space - other.space).cwiseAbs().maxCoeff() <= tol;
  }
  bool is_identity(double tol = kElementTol) const {
    return perm.is_identity() && time.is_identity(tol) &&
           (space - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol;
  }

  // Orthogonality and unit determinant, within tol.
  bool is_valid(double tol = kElementTol) const {
    return (space * space.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol &&
           std::fabs(std::fabs(space.determinant()) - 1.0) <= tol &&
           (time.orientation == 1 || time.orientation == -1);
  }

  // det(tau) * det(rho): the character that twists the angular-momentum action
  // and fixes the sign a rotation axis must carry.
  double twist() const { return time.orientation * space.determinant(); }
};

inline constexpr int kDefaultClosureCap = 512;

struct SymmetryGroup {
  int n = 3;
  std::vector<GroupElement> generators;
  std::vector<GroupElement> elements;          // full closure, identity first
  std::optional<std::vector<double>> masses;   // normalized to sum 1 when present

  int order() const { return static_cast<int>(elements.size()); }

  bool contains(const GroupElement& g, double tol = kElementTol) const {
    for (const auto& e : elements)
      if (e.approx_equal(g, tol)) return true;
    return false;
  }

  const std::vector<double>& masses_or_throw() const {
    if (!masses) throw MissingMasses("operation requires masses on the group");
    return *masses;
  }
};

// Smallest closed set containing the generators. Throws CapExceeded when the
// closure grows past cap (irrational shifts never close).
SymmetryGroup generate_group(int n, const std::vector<GroupElement>& generators,
                             int cap = kDefaultClosureCap);

// Attaches masses (normalizing the sum to 1) after checking that masses are
// constant along every permutation orbit of the group.
void set_masses(SymmetryGroup& group, std::vector<double> masses);

// Orbits of the permutation action on {0,..,n-1}; transitivity is one orbit.
std::vector<std::vector<int>> permutation_orbits(const SymmetryGroup& group);
bool acts_transitively(const SymmetryGroup& group);

}  // namespace sym3b
