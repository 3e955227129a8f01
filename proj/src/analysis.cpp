#include "sym3b/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace sym3b {

namespace {

constexpr double kTol = 1e-9;

// Stacked-configuration action: (A x)_i = rho(g) x_{sigma(g)^-1(i)}.
Eigen::MatrixXd config_matrix(const GroupElement& g, int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3 * n, 3 * n);
  Permutation inv = g.perm.inverse();
  for (int i = 0; i < n; ++i) a.block<3, 3>(3 * i, 3 * inv(i)) = g.space;
  return a;
}

// One-dimensional (per-axis) module: (B u)_i = twist(g) u_{sigma(g)^-1(i)}.
// The restriction of rho to any rotation axis is multiplication by the twist,
// which is why a single module serves every axis.
Eigen::MatrixXd axis_module_matrix(const GroupElement& g, int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  Permutation inv = g.perm.inverse();
  for (int i = 0; i < n; ++i) b(i, inv(i)) = g.twist();
  return b;
}

// Orthonormal basis of the fixed space of an orthogonal representation,
// obtained from the averaging projector (eigenvalues are 0 or 1).
Eigen::MatrixXd fixed_space(const std::vector<Eigen::MatrixXd>& rep) {
  const auto dim = rep.front().rows();
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& m : rep) avg += m;
  avg /= static_cast<double>(rep.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 * (avg + avg.transpose()));
  int count = 0;
  for (int i = 0; i < dim; ++i)
    if (eig.eigenvalues()(i) > 0.5) ++count;
  Eigen::MatrixXd basis(dim, count);
  int c = 0;
  for (int i = 0; i < dim; ++i)
    if (eig.eigenvalues()(i) > 0.5) basis.col(c++) = eig.eigenvectors().col(i);
  return basis;
}

int centered_dim(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& centering) {
  if (basis.cols() == 0) return 0;
  Eigen::MatrixXd restricted = centering * basis;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(restricted);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > kTol) ++rank;
  return static_cast<int>(basis.cols()) - rank;
}

bool is_half_turn(const Eigen::Matrix3d& m) {
  return std::fabs(m.determinant() - 1.0) <= kTol && std::fabs(m.trace() + 1.0) <= kTol;
}
bool is_third_turn(const Eigen::Matrix3d& m) {
  return std::fabs(m.determinant() - 1.0) <= kTol && std::fabs(m.trace()) <= kTol;
}
bool is_antipodal(const Eigen::Matrix3d& m) {
  return (m + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= kTol;
}

}  // namespace

std::string to_string(ActionType t) {
  switch (t) {
    case ActionType::cyclic: return "cyclic";
    case ActionType::brake: return "brake";
    case ActionType::dihedral: return "dihedral";
  }
  return "?";
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& A, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  return svd.matrixV().rightCols(A.cols() - rank);
}

std::vector<GroupElement> core_elements(const SymmetryGroup& group) {
  std::vector<GroupElement> out;
  for (const auto& g : group.elements)
    if (g.time.is_identity()) out.push_back(g);
  return out;
}

int core_order(const SymmetryGroup& group) {
  return static_cast<int>(core_elements(group).size());
}

ActionType action_type(const SymmetryGroup& group) {
  bool reflections = false;
  int distinct_shifts = 0;
  std::vector<double> shifts;
  for (const auto& g : group.elements) {
    if (g.time.orientation == -1) {
      reflections = true;
      continue;
    }
    bool seen = false;
    for (double s : shifts)
      if (TimeTransform::circle_dist(s, g.time.shift) <= kElementTol) seen = true;
    if (!seen) shifts.push_back(g.time.shift);
  }
  distinct_shifts = static_cast<int>(shifts.size());
  if (!reflections) return ActionType::cyclic;
  return distinct_shifts > 1 ? ActionType::dihedral : ActionType::brake;
}

Eigen::MatrixXd angular_momentum_subspace(const SymmetryGroup& group) {
  std::vector<Eigen::MatrixXd> rep;
  rep.reserve(group.elements.size());
  for (const auto& g : group.elements) rep.push_back(g.twist() * g.space);
  return fixed_space(rep);
}

std::vector<Eigen::Vector3d> rotation_axes(const SymmetryGroup& group) {
  Eigen::MatrixXd basis = angular_momentum_subspace(group);
  std::vector<Eigen::Vector3d> axes;
  if (basis.cols() == 0) return axes;

  Eigen::Matrix3d projector = basis * basis.transpose();
  std::vector<Eigen::Vector3d> coordinate_hits;
  for (int i = 0; i < 3; ++i) {
    Eigen::Vector3d e = Eigen::Vector3d::Unit(i);
    if ((projector * e - e).norm() <= 1e-7) coordinate_hits.push_back(e);
  }
  if (static_cast<int>(coordinate_hits.size()) == basis.cols()) return coordinate_hits;

  for (int c = 0; c < basis.cols(); ++c) {
    Eigen::Vector3d v = basis.col(c);
    // sign convention: largest component positive; snap near-axis vectors
    int imax = 0;
    for (int i = 1; i < 3; ++i)
      if (std::fabs(v(i)) > std::fabs(v(imax))) imax = i;
    if (v(imax) < 0) v = -v;
    for (int i = 0; i < 3; ++i)
      if (std::fabs(v(i)) <= 1e-9) v(i) = 0.0;
    axes.push_back(v.normalized());
  }
  return axes;
}

int fixed_config_dim(const SymmetryGroup& group) {
  const auto& masses = group.masses_or_throw();
  std::vector<Eigen::MatrixXd> rep;
  rep.reserve(group.elements.size());
  for (const auto& g : group.elements) rep.push_back(config_matrix(g, group.n));
  Eigen::MatrixXd basis = fixed_space(rep);

  Eigen::MatrixXd centering = Eigen::MatrixXd::Zero(3, 3 * group.n);
  for (int i = 0; i < group.n; ++i)
    centering.block<3, 3>(0, 3 * i) = masses[i] * Eigen::Matrix3d::Identity();
  return centered_dim(basis, centering);
}

bool is_bound_to_collisions(const SymmetryGroup& group) {
  const int n = group.n;
  for (const auto& g : group.elements) {
    if (g.is_identity()) continue;
    if (!g.time.has_fixed_point()) continue;
    // Equivariance pins x(t*) inside the fixed subspace of the configuration
    // action; if that subspace lies in some coincidence plane {x_i = x_j},
    // every equivariant loop passes through a collision.
    Eigen::MatrixXd constraint = config_matrix(g, n) - Eigen::MatrixXd::Identity(3 * n, 3 * n);
    if (group.masses) {
      Eigen::MatrixXd stacked(3 * n + 3, 3 * n);
      stacked.topRows(3 * n) = constraint;
      Eigen::MatrixXd centering = Eigen::MatrixXd::Zero(3, 3 * n);
      for (int i = 0; i < n; ++i)
        centering.block<3, 3>(0, 3 * i) = (*group.masses)[i] * Eigen::Matrix3d::Identity();
      stacked.bottomRows(3) = centering;
      constraint = stacked;
    }
    Eigen::MatrixXd fixed = nullspace(constraint);
    if (fixed.cols() == 0) return true;  // total collapse forced at the frozen time
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        bool forced = true;
        for (int c = 0; c < fixed.cols() && forced; ++c)
          if ((fixed.block<3, 1>(3 * i, c) - fixed.block<3, 1>(3 * j, c)).norm() > kTol)
            forced = false;
        if (forced) return true;
      }
  }
  return false;
}

bool is_fully_uncoercive(const SymmetryGroup& group) {
  const auto& masses = group.masses_or_throw();
  if (rotation_axes(group).empty()) return fixed_config_dim(group) > 0;

  // Axis module: escape translations along any rotation axis. A nonzero
  // centered fixed vector gives a bounded-action escape whenever the index
  // action leaves some body behind.
  std::vector<Eigen::MatrixXd> rep;
  rep.reserve(group.elements.size());
  for (const auto& g : group.elements) rep.push_back(axis_module_matrix(g, group.n));
  Eigen::MatrixXd basis = fixed_space(rep);
  Eigen::MatrixXd centering(1, group.n);
  for (int i = 0; i < group.n; ++i) centering(0, i) = masses[i];
  return centered_dim(basis, centering) > 0 && !acts_transitively(group);
}

bool is_vertical_isosceles(const SymmetryGroup& group) {
  auto core = core_elements(group);
  if (core.size() != 2) return false;
  for (const auto& k : core)
    if (!k.is_identity())
      return k.perm.is_transposition() && is_half_turn(k.space);
  return false;
}

bool is_homographic(const SymmetryGroup& group) {
  if (is_bound_to_collisions(group))
    throw PreconditionViolated("homographic test is undefined for collision-bound groups");
  auto core = core_elements(group);
  const size_t order = core.size();
  if (order == 1) return false;

  if (order == 2) {
    for (const auto& k : core)
      if (!k.is_identity())
        return k.perm.is_transposition() && is_antipodal(k.space);
    return false;
  }
  if (order == 3) {
    for (const auto& k : core) {
      if (k.is_identity()) continue;
      if (k.perm.order() != 3 || !is_third_turn(k.space)) return false;
    }
    return true;
  }
  if (order == 6) {
    // dihedral core: third-turns carry the 3-cycles, half-turns the swaps,
    // and the permutation part must be faithful
    std::vector<Permutation> perms;
    for (const auto& k : core) {
      for (const auto& p : perms)
        if (p == k.perm) return false;
      perms.push_back(k.perm);
      if (k.is_identity()) continue;
      if (k.perm.order() == 3 && is_third_turn(k.space)) continue;
      if (k.perm.is_transposition() && is_half_turn(k.space)) continue;
      return false;
    }
    return true;
  }
  return false;
}

GroupProfile profile(const SymmetryGroup& group) {
  SymmetryGroup g = group;
  if (!g.masses) set_masses(g, std::vector<double>(g.n, 1.0));

  GroupProfile p;
  p.core_order = core_order(g);
  p.action_type = action_type(g);
  p.rotation_axes = rotation_axes(g);
  p.type_R = !p.rotation_axes.empty();
  p.fixed_config_dim = fixed_config_dim(g);
  p.bound_to_collisions = is_bound_to_collisions(g);
  p.fully_uncoercive = is_fully_uncoercive(g);
  p.homographic = p.bound_to_collisions ? false : is_homographic(g);
  p.vertical_isosceles = is_vertical_isosceles(g);
  return p;
}

}  // namespace sym3b
