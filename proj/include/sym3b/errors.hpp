#pragma once

#include <stdexcept>
#include <string>

namespace sym3b {

// Every failure mode gets its own type so callers (and the CLI exit-code
// mapping) can dispatch on it without string matching.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SYM3B_DEFINE_ERROR(Name)                                  \
  struct Name : Error {                                           \
    explicit Name(const std::string& what) : Error(what) {}       \
  }

SYM3B_DEFINE_ERROR(CapExceeded);        // group closure blew past the cap
SYM3B_DEFINE_ERROR(MissingMasses);      // operation needs masses, group has none
SYM3B_DEFINE_ERROR(PreconditionViolated);
SYM3B_DEFINE_ERROR(DimensionMismatch);
SYM3B_DEFINE_ERROR(DegenerateOutput);   // projected loop identically zero
SYM3B_DEFINE_ERROR(CollisionAtSample);  // pairwise distance under epsilon on the grid
SYM3B_DEFINE_ERROR(ZeroFrequency);      // k + omega = 0, rotating scale undefined
SYM3B_DEFINE_ERROR(AsymmetricMasses);   // collinear shape needs m1 = m2
SYM3B_DEFINE_ERROR(MassOutOfRange);
SYM3B_DEFINE_ERROR(IncompatibleShape);  // no labeling satisfies the mass constraints
SYM3B_DEFINE_ERROR(NotARotationAxis);   // frame axis not admissible for the group
SYM3B_DEFINE_ERROR(AllStartsCollided);  // every minimization start hit the guard
SYM3B_DEFINE_ERROR(BoundToCollisions);  // refusing to minimize over such a group
SYM3B_DEFINE_ERROR(FullyUncoercive);    // refusing: infimum escapes for every frame
SYM3B_DEFINE_ERROR(ReductionMismatch);  // survivor set differs from the expected table
SYM3B_DEFINE_ERROR(UnknownName);

#undef SYM3B_DEFINE_ERROR

}  // namespace sym3b
