#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sym3b/analysis.hpp"
#include "sym3b/group.hpp"

namespace sym3b {

// One candidate row pattern for a pair of diagonal generators. Each of the
// three rows carries the signs of the r and h diagonal entries; a row is
// encoded as a digit 0..3 (0=[++], 1=[+-], 2=[-+], 3=[--]) and the code keeps
// the digits sorted, since row order is only a choice of coordinate axes.
struct SignMatrix {
  std::array<int, 3> digits{0, 0, 0};

  static SignMatrix from_code(const std::string& code);
  std::string code() const;

  static int r_sign(int digit) { return digit < 2 ? 1 : -1; }
  static int h_sign(int digit) { return digit % 2 == 0 ? 1 : -1; }

  Eigen::Matrix3d r_matrix() const;
  Eigen::Matrix3d h_matrix() const;

  // generator change h -> r*h; per digit this flips the h sign by the r sign
  SignMatrix half_turned() const;
};

// All 20 canonical codes (non-decreasing digit multisets).
std::vector<SignMatrix> canonical_sign_matrices();

struct SigmaPair {
  Permutation sigma_r;
  Permutation sigma_h;
  std::string label;  // e.g. "[(1,2,3),(1,2)]"
};

// The five permutation patterns of the dihedral scheme, in pipeline order.
const std::vector<SigmaPair>& dihedral_sigma_pairs();
const SigmaPair& sigma_pair_by_label(const std::string& label);

struct CyclicCandidate {
  int minus_count = 0;  // diagonal of r has this many -1 entries (trailing)
  Permutation sigma;
  std::string name;        // grid cell name, e.g. "C2-", "H2-", "~C3-"
  std::string reduces_to;  // empty, or the cell this one folds onto
};

// The 12 single-generator candidates (4 sign multisets x 3 permutations),
// row-major in the grid order.
std::vector<CyclicCandidate> cyclic_candidates();

struct CandidateSet {
  std::vector<std::pair<SignMatrix, SigmaPair>> dihedral;  // 20 x 5
  std::vector<CyclicCandidate> cyclic;                     // 12
};
CandidateSet enumerate_candidates();

// Concrete generators. The rotation generator gets the smallest shift that
// makes the element's order match the order of its (matrix, permutation) part;
// the reflection generator reflects time about 0.
GroupElement rotation_generator(const Eigen::Matrix3d& space, const Permutation& sigma);
GroupElement reflection_generator(const Eigen::Matrix3d& space, const Permutation& sigma);

SymmetryGroup build_dihedral(const SignMatrix& m, const SigmaPair& pair);
SymmetryGroup build_cyclic(const CyclicCandidate& c);

// Central-configuration shapes used for rotating-loop admissibility.
enum class Shape { lagrange, euler };

struct ShapeResidues {
  int period = 1;           // q: all group shifts are multiples of 2*pi/q
  std::set<int> lagrange;   // admissible winding numbers mod period
  std::set<int> euler;
};

// Whether a rigidly rotating loop of the given shape and winding number k
// (horizontal, about e3) is equivariant for some body-to-site labeling and
// phase. Requires masses on the group.
bool admits_rotating_loop(const SymmetryGroup& group, Shape shape, int k);
int time_period_denominator(const SymmetryGroup& group);
ShapeResidues admissible_residues(const SymmetryGroup& group);

struct CatalogEntry {
  std::string name;
  std::string digit_code;  // "" for entries outside the sign-matrix scheme
  std::string sigma_pair;
  SymmetryGroup group;     // equal masses
  GroupProfile profile;    // published flags (one retention exception, see notes)
  ShapeResidues residues;
};

// Step-by-step reduction of one sigma-pair family, kept for reporting.
struct PairReduction {
  std::string sigma_label;
  std::vector<std::string> collision_bound;                      // step 1 removals
  std::vector<std::pair<std::string, std::string>> deduplicated;  // step 2: code -> kept code
  std::vector<std::pair<std::string, std::string>> frame_merged;  // step 3: code -> kept code
  std::vector<std::string> uncoercive;                           // step 4 removals
  std::vector<std::string> survivors;
  std::string folded_into;  // set when the whole family folds onto another pair
};

PairReduction reduce_sigma_pair(const SigmaPair& pair);

// Full pipeline over all candidates; returns the named trivial-core entries in
// canonical order. Throws ReductionMismatch when any step disagrees with the
// expected outcome tables (a self-test failure).
std::vector<CatalogEntry> reduce_to_representatives(const CandidateSet& candidates);

// Named entry lookup: the reduced entries plus "vertical-isosceles",
// "D12-eight" and "000-with-transpositions". Throws UnknownName.
const CatalogEntry& catalog(const std::string& name);
const std::vector<std::string>& catalog_names();

// Axes per canonical code for the [(1,2,3),(1,2)] family, after the collision
// and generator-change steps (9 rows). Computed from concrete groups; the 223
// row uses the coordinate presentation of its generator-change partner.
std::map<std::string, std::vector<Eigen::Vector3d>> rotation_axes_table();

// The 4x3 single-generator grid with computed escape flags.
struct CyclicCell {
  std::string name;
  int minus_count = 0;
  std::string sigma;
  bool fully_uncoercive = false;
  std::string reduces_to;
};
std::vector<CyclicCell> cyclic_type_grid();

// Planar-group extension: the third coordinate of each generator matrix gets
// its own sign. Planar names: C1, C2, C3, C6, L2, H2, H4, L6, D6, D12.
SymmetryGroup planar_extension(const std::string& planar_name, int eps_r, int eps_h);

struct NamedEquivalence {
  std::string from, to;
  bool conjugacy;  // true: same group up to conjugation; false: frame change
};
const std::vector<NamedEquivalence>& named_equivalences();

// Conjugation-invariant summary (sorted element signatures); equal strings for
// conjugate groups.
std::string group_fingerprint(const SymmetryGroup& group);

}  // namespace sym3b
