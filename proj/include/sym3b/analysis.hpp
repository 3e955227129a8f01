#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "sym3b/group.hpp"

namespace sym3b {

enum class ActionType { cyclic, brake, dihedral };

std::string to_string(ActionType t);

struct GroupProfile {
  int core_order = 1;
  ActionType action_type = ActionType::cyclic;
  std::vector<Eigen::Vector3d> rotation_axes;  // canonical unit vectors, up to sign
  bool type_R = false;
  int fixed_config_dim = 0;
  bool bound_to_collisions = false;  // sufficient criterion, never a completeness claim
  bool fully_uncoercive = false;
  bool homographic = false;  // false whenever the decision procedure is inapplicable
  bool vertical_isosceles = false;
};

// Elements acting trivially on the time circle.
std::vector<GroupElement> core_elements(const SymmetryGroup& group);
int core_order(const SymmetryGroup& group);

// Shape of the induced action on the time circle: shifts only (cyclic), one
// reflection with trivial rotations (brake), reflections plus rotations (dihedral).
ActionType action_type(const SymmetryGroup& group);

// Orthonormal basis (columns) of the fixed space of g |-> det(tau)det(rho)*rho(g).
// Rotation axes are exactly the unit vectors of this space, and the mean
// angular momentum of any equivariant solution is confined to it.
Eigen::MatrixXd angular_momentum_subspace(const SymmetryGroup& group);

// Canonical representatives: coordinate vectors e_i when they span the space,
// otherwise sign-normalized eigenbasis vectors.
std::vector<Eigen::Vector3d> rotation_axes(const SymmetryGroup& group);

// Dimension of centered configurations fixed by every (rho, sigma) pair.
int fixed_config_dim(const SymmetryGroup& group);

// True when some element freezes a time and its fixed configuration subspace
// forces two bodies to coincide there. Sufficient criterion only.
bool is_bound_to_collisions(const SymmetryGroup& group);

// True when (a) there are no rotation axes but fixed configurations exist, or
// (b) the centered one-dimensional axis module has a nonzero fixed vector and
// the index action is not transitive. Criterion-based; false means "not
// detected", not a coercivity proof.
bool is_fully_uncoercive(const SymmetryGroup& group);

// Decides whether every equivariant loop is forced to be a rigid motion of a
// fixed shape, by matching the core against the known nontrivial-core cases.
// Throws PreconditionViolated on a bound-to-collisions group.
bool is_homographic(const SymmetryGroup& group);

// Core generated by a half-turn paired with a transposition.
bool is_vertical_isosceles(const SymmetryGroup& group);

// Aggregate. Groups without masses are profiled with equal masses.
GroupProfile profile(const SymmetryGroup& group);

// Nullspace basis columns of A with singular-value threshold tol.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& A, double tol = 1e-9);

}  // namespace sym3b
