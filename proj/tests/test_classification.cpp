#include "sym3b/classification.hpp"

#include <algorithm>
#include <set>

#include "sym3b/errors.hpp"
#include "testkit.hpp"

using namespace sym3b;

namespace {

std::set<std::string> to_set(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

bool same_fingerprint(const SymmetryGroup& a, const SymmetryGroup& b) {
  return group_fingerprint(a) == group_fingerprint(b);
}

const PairReduction& reduction_of(const std::string& label) {
  static std::map<std::string, PairReduction> cache;
  auto it = cache.find(label);
  if (it == cache.end())
    it = cache.emplace(label, reduce_sigma_pair(sigma_pair_by_label(label))).first;
  return it->second;
}

}  // namespace

TEST_CASE("candidate enumeration counts") {
  CHECK(canonical_sign_matrices().size() == 20);
  CHECK(cyclic_candidates().size() == 12);
  auto set = enumerate_candidates();
  CHECK(set.dihedral.size() == 100);
  CHECK(set.cyclic.size() == 12);
  CHECK(dihedral_sigma_pairs().size() == 5);
}

TEST_CASE("digit codes round-trip and stay sorted") {
  for (const auto& m : canonical_sign_matrices()) {
    CHECK(SignMatrix::from_code(m.code()).code() == m.code());
    CHECK(std::is_sorted(m.digits.begin(), m.digits.end()));
  }
  // unsorted input is canonicalized
  CHECK(SignMatrix::from_code("231").code() == "123");
  CHECK_THROWS(PreconditionViolated, SignMatrix::from_code("40"));
}

TEST_CASE("digit code 112 decodes to its sign rows") {
  // rows [+-],[+-],[-+]
  SignMatrix m = SignMatrix::from_code("112");
  CHECK(m.r_matrix().diagonal().isApprox(Eigen::Vector3d(1, 1, -1)));
  CHECK(m.h_matrix().diagonal().isApprox(Eigen::Vector3d(-1, -1, 1)));
}

TEST_CASE("generator-change partners") {
  CHECK(SignMatrix::from_code("013").half_turned().code() == "012");
  CHECK(SignMatrix::from_code("113").half_turned().code() == "112");
  CHECK(SignMatrix::from_code("133").half_turned().code() == "122");
  CHECK(SignMatrix::from_code("233").half_turned().code() == "223");
  // self-paired codes
  CHECK(SignMatrix::from_code("023").half_turned().code() == "023");
  CHECK(SignMatrix::from_code("123").half_turned().code() == "123");
  CHECK(SignMatrix::from_code("011").half_turned().code() == "011");
}

TEST_CASE("builders match the published presentations") {
  // C3-: single generator (shift pi/3, diag(1,1,-1), (1,2,3)), order 6
  auto c3m = build_cyclic(cyclic_candidates()[5]);  // row 1, col 2
  CHECK(c3m.order() == 6);
  CHECK(c3m.generators.size() == 1);
  CHECK_CLOSE(c3m.generators[0].time.shift, kPi / 3.0, 1e-12);
  CHECK(c3m.generators[0].space.diagonal().isApprox(Eigen::Vector3d(1, 1, -1)));
  CHECK(c3m.generators[0].perm.to_cycles() == "(1,2,3)");

  // L2-+: r=(shift pi, diag(1,1,-1), ()), h=(reflection, diag(1,-1,1), ())
  auto l2mp = build_dihedral(SignMatrix::from_code("012"), sigma_pair_by_label("[(),()]"));
  CHECK(l2mp.order() == 4);
  CHECK(l2mp.generators.size() == 2);
  CHECK_CLOSE(l2mp.generators[0].time.shift, kPi, 1e-12);
  CHECK(l2mp.generators[0].space.diagonal().isApprox(Eigen::Vector3d(1, 1, -1)));
  CHECK(l2mp.generators[0].perm.is_identity());
  CHECK(l2mp.generators[1].time.orientation == -1);
  CHECK(l2mp.generators[1].space.diagonal().isApprox(Eigen::Vector3d(1, -1, 1)));

  // identity rotation generators are dropped, not stored
  auto h2pm = build_dihedral(SignMatrix::from_code("011"), sigma_pair_by_label("[(),(1,2)]"));
  CHECK(h2pm.order() == 2);
  CHECK(h2pm.generators.size() == 1);
  CHECK(h2pm.generators[0].time.orientation == -1);
}

TEST_CASE("reduction steps per sigma-pair") {
  const std::set<std::string> btc_shared = {"000", "002", "003", "022", "033", "222", "333"};

  const auto& sp1 = reduction_of("[(1,2,3),(1,2)]");
  CHECK(to_set(sp1.collision_bound) == btc_shared);
  CHECK(sp1.deduplicated.size() == 4);
  CHECK(sp1.frame_merged.size() == 3);
  CHECK(sp1.uncoercive.empty());
  CHECK(sp1.survivors == std::vector<std::string>(
                             {"001", "011", "012", "111", "112", "122"}));

  const auto& sp2 = reduction_of("[(),(1,2)]");
  CHECK(to_set(sp2.collision_bound) == btc_shared);
  CHECK(to_set(sp2.uncoercive) == std::set<std::string>({"001", "111", "112", "122"}));
  CHECK(sp2.survivors == std::vector<std::string>({"011", "012"}));

  const auto& sp3 = reduction_of("[(1,2),()]");
  CHECK(sp3.folded_into == "[(1,2),(1,2)]");
  CHECK(sp3.survivors.empty());

  const auto& sp4 = reduction_of("[(1,2),(1,2)]");
  CHECK(to_set(sp4.collision_bound) ==
        std::set<std::string>({"000", "002", "022", "111", "112", "122", "222"}));
  CHECK(sp4.deduplicated.empty());
  CHECK(sp4.frame_merged.size() == 4);
  CHECK(to_set(sp4.uncoercive) ==
        std::set<std::string>({"001", "003", "013", "033", "113", "133", "333"}));
  CHECK(sp4.survivors == std::vector<std::string>({"011", "012"}));

  const auto& sp5 = reduction_of("[(),()]");
  CHECK(to_set(sp5.collision_bound) ==
        std::set<std::string>({"111", "112", "113", "122", "133", "222", "333"}));
  CHECK(to_set(sp5.uncoercive) == std::set<std::string>({"000", "001", "002", "022"}));
  CHECK(sp5.survivors == std::vector<std::string>({"011", "012"}));
}

TEST_CASE("reduction records merge directions") {
  const auto& sp1 = reduction_of("[(1,2,3),(1,2)]");
  std::map<std::string, std::string> dedup(sp1.deduplicated.begin(), sp1.deduplicated.end());
  CHECK(dedup.at("013") == "012");
  CHECK(dedup.at("113") == "112");
  CHECK(dedup.at("133") == "122");
  CHECK(dedup.at("233") == "223");

  std::map<std::string, std::string> frame(sp1.frame_merged.begin(), sp1.frame_merged.end());
  CHECK(frame.at("023") == "001");
  CHECK(frame.at("123") == "011");
  CHECK(frame.at("223") == "012");
}

TEST_CASE("full reduction yields the fifteen entries") {
  auto entries = reduce_to_representatives(enumerate_candidates());
  std::vector<std::string> names;
  for (const auto& e : entries) names.push_back(e.name);
  CHECK(names == std::vector<std::string>(
                     {"C1-", "L2+-", "L2-+", "H2+-", "H2-+", "H4+-", "H4-+", "C3+",
                      "C3-", "L6++", "L6+-", "L6-+", "D6+-", "D6-+", "D12-+"}));
  for (const auto& e : entries) {
    CHECK_MSG(!e.profile.bound_to_collisions, e.name + " must not be collision-bound");
    CHECK_MSG(!e.profile.fully_uncoercive, e.name + " must be coercive-eligible");
    CHECK_MSG(e.profile.core_order == 1, e.name + " must have trivial core");
  }
  // deterministic: a second run reproduces the same list
  auto again = reduce_to_representatives(enumerate_candidates());
  CHECK(again.size() == entries.size());
  for (size_t i = 0; i < entries.size(); ++i) {
    CHECK(again[i].name == entries[i].name);
    CHECK(again[i].digit_code == entries[i].digit_code);
    CHECK(same_fingerprint(again[i].group, entries[i].group));
  }
}

TEST_CASE("catalog lookup") {
  CHECK(catalog_names().size() == 18);
  CHECK(catalog("C3-").group.order() == 6);
  CHECK(catalog("vertical-isosceles").group.order() == 2);
  CHECK(catalog("vertical-isosceles").profile.core_order == 2);
  CHECK(catalog("vertical-isosceles").profile.vertical_isosceles);
  CHECK(catalog("000-with-transpositions").profile.bound_to_collisions);
  CHECK_THROWS(UnknownName, catalog("nope"));
}

TEST_CASE("catalog axes spot checks") {
  auto axis_is = [](const CatalogEntry& e, const Eigen::Vector3d& v) {
    return e.profile.rotation_axes.size() == 1 &&
           (e.profile.rotation_axes[0] - v).norm() <= 1e-9;
  };
  CHECK(axis_is(catalog("C3-"), Eigen::Vector3d::UnitZ()));
  CHECK(axis_is(catalog("L6-+"), Eigen::Vector3d::UnitZ()));
  CHECK(catalog("D6+-").profile.rotation_axes.empty());
  CHECK(catalog("D12-+").profile.rotation_axes.empty());
}

TEST_CASE("rotation axes table") {
  auto table = rotation_axes_table();
  CHECK(table.size() == 9);
  auto row = [&](const std::string& code) {
    std::set<std::string> out;
    for (const auto& v : table.at(code)) {
      if ((v - Eigen::Vector3d::UnitX()).norm() <= 1e-9) out.insert("e1");
      else if ((v - Eigen::Vector3d::UnitY()).norm() <= 1e-9) out.insert("e2");
      else if ((v - Eigen::Vector3d::UnitZ()).norm() <= 1e-9) out.insert("e3");
      else out.insert("other");
    }
    return out;
  };
  CHECK(row("001") == std::set<std::string>({"e1", "e2"}));
  CHECK(row("011") == std::set<std::string>({"e2", "e3"}));
  CHECK(row("012") == std::set<std::string>({"e3"}));
  CHECK(row("023") == std::set<std::string>({"e1"}));
  CHECK(row("111").empty());
  CHECK(row("112").empty());
  CHECK(row("122").empty());
  CHECK(row("123") == std::set<std::string>({"e1"}));
  CHECK(row("223") == std::set<std::string>({"e2", "e3"}));
}

TEST_CASE("cyclic grid names and escape flags") {
  auto grid = cyclic_type_grid();
  CHECK(grid.size() == 12);
  std::vector<std::string> names;
  std::vector<bool> flags;
  for (const auto& c : grid) {
    names.push_back(c.name);
    flags.push_back(c.fully_uncoercive);
  }
  CHECK(names == std::vector<std::string>({"C1+", "C2+", "C3+", "C1-", "C2-", "C3-",
                                           "L2-", "H2-", "C6-", "~C1-", "~C2-", "~C3-"}));
  CHECK(flags == std::vector<bool>({true, true, false, false, true, false,
                                    true, true, false, false, true, false}));
  CHECK(grid[8].reduces_to == "C3+");    // C6-
  CHECK(grid[9].reduces_to == "C1-");    // ~C1-
  CHECK(grid[10].reduces_to == "C2-");
  CHECK(grid[11].reduces_to == "C3-");
}

TEST_CASE("planar extensions agree with the catalog") {
  CHECK(same_fingerprint(planar_extension("C3", -1, 1), catalog("C3-").group));
  CHECK(same_fingerprint(planar_extension("L2", -1, 1), catalog("L2-+").group));
  CHECK(same_fingerprint(planar_extension("L6", 1, -1), catalog("L6+-").group));
  CHECK(same_fingerprint(planar_extension("L6", 1, 1), catalog("L6++").group));
  CHECK(same_fingerprint(planar_extension("D6", 1, -1), catalog("D6+-").group));
  CHECK(same_fingerprint(planar_extension("D6", -1, 1), catalog("D6-+").group));
  CHECK(same_fingerprint(planar_extension("H4", 1, -1), catalog("H4+-").group));
  CHECK(same_fingerprint(planar_extension("H2", 1, -1), catalog("H2+-").group));
  CHECK_THROWS(UnknownName, planar_extension("Q8", 1, 1));
}

TEST_CASE("named equivalences hold") {
  auto build_named = [](const std::string& name) -> SymmetryGroup {
    if (name == "C6+") return planar_extension("C6", 1, 1);
    if (name == "C6-") return planar_extension("C6", -1, 1);
    if (name == "D6++") return planar_extension("D6", 1, 1);
    if (name == "D12++") return planar_extension("D12", 1, 1);
    return catalog(name).group;
  };
  for (const auto& eq : named_equivalences()) {
    auto from = build_named(eq.from);
    auto to = build_named(eq.to);
    if (eq.conjugacy) {
      CHECK_MSG(from.order() == to.order(), eq.from + " and " + eq.to + " order");
      CHECK_MSG(same_fingerprint(from, to), eq.from + " vs " + eq.to);
    } else {
      // frame changes need not preserve order (C6- has order 6, C3+ order 3)
      CHECK(from.order() != to.order() || same_fingerprint(from, to));
    }
  }
  CHECK(same_fingerprint(catalog("D12-eight").group, catalog("L6-+").group));
}

TEST_CASE("axis groups restrict to plane-rotation type") {
  // groups with a rotation axis restrict to type R in the orthogonal plane:
  // the planar determinant equals the time orientation, element-wise
  for (const auto& name : catalog_names()) {
    const auto& entry = catalog(name);
    for (const auto& axis : entry.profile.rotation_axes) {
      for (const auto& g : entry.group.elements) {
        double det3 = g.space.determinant();
        double axis_sign = axis.dot(g.space * axis);
        double det2 = det3 * axis_sign;  // restriction to the plane
        CHECK_MSG(std::fabs(det2 - g.time.orientation) <= 1e-9, name + " type R");
      }
    }
  }
}

TEST_CASE("time period denominators") {
  CHECK(time_period_denominator(catalog("H2+-").group) == 1);
  CHECK(time_period_denominator(catalog("C1-").group) == 2);
  CHECK(time_period_denominator(catalog("C3+").group) == 3);
  CHECK(time_period_denominator(catalog("C3-").group) == 6);
  CHECK(time_period_denominator(catalog("L6+-").group) == 3);
  CHECK(time_period_denominator(catalog("D12-+").group) == 6);
  CHECK(time_period_denominator(catalog("vertical-isosceles").group) == 1);
}

TEST_CASE("admissible winding residues") {
  auto res = [](const std::string& name) { return catalog(name).residues; };
  auto I = [](std::initializer_list<int> v) { return std::set<int>(v); };

  CHECK(res("C1-").lagrange == I({0}));
  CHECK(res("C1-").euler == I({0}));
  CHECK(res("L2+-").lagrange.empty());
  CHECK(res("L2+-").euler == I({0}));
  CHECK(res("L2-+").period == 2);
  CHECK(res("L2-+").lagrange.empty());
  CHECK(res("L2-+").euler == I({0}));
  CHECK(res("H2+-").lagrange == I({0}));
  CHECK(res("H2+-").euler == I({0}));
  CHECK(res("H4+-").lagrange.empty());
  CHECK(res("H4+-").euler == I({1}));
  CHECK(res("H4-+").euler == I({1}));
  CHECK(res("C3+").lagrange == I({1, 2}));
  CHECK(res("C3+").euler.empty());
  CHECK(res("C3-").lagrange == I({2, 4}));
  CHECK(res("C3-").euler.empty());
  CHECK(res("L6++").lagrange.empty());
  CHECK(res("L6++").euler.empty());
  CHECK(res("L6+-").lagrange == I({1, 2}));
  CHECK(res("L6-+").lagrange == I({2, 4}));
  CHECK(res("L6-+").euler.empty());
  CHECK(res("D6+-").lagrange.empty());
  CHECK(res("D6+-").euler.empty());
  CHECK(res("D6-+").lagrange.empty());
  CHECK(res("D12-+").lagrange.empty());
  CHECK(res("vertical-isosceles").euler == I({0}));
  CHECK(res("vertical-isosceles").lagrange.empty());
  CHECK(res("D12-eight").lagrange.empty());
  CHECK(res("D12-eight").euler.empty());
  CHECK(res("000-with-transpositions").lagrange.empty());
  CHECK(res("000-with-transpositions").euler.empty());
}

TEST_CASE("admissibility is periodic in the winding number") {
  for (const std::string name : {"C3-", "H4+-", "L6-+"}) {
    const auto& entry = catalog(name);
    int q = entry.residues.period;
    for (int k = 0; k < q; ++k) {
      bool in = entry.residues.lagrange.count(k) > 0;
      CHECK(admits_rotating_loop(entry.group, Shape::lagrange, k + q) == in);
      CHECK(admits_rotating_loop(entry.group, Shape::lagrange, k - q) == in);
    }
  }
}

TEST_CASE("collinear shape needs an equal outer pair") {
  auto group = generate_group(3, {});
  set_masses(group, {0.5, 0.3, 0.2});
  CHECK_THROWS(IncompatibleShape, admits_rotating_loop(group, Shape::euler, 0));
  // lagrange has no such constraint
  CHECK(admits_rotating_loop(group, Shape::lagrange, 0));
  // and an equal pair somewhere is enough
  auto ok = generate_group(3, {});
  set_masses(ok, {0.25, 0.5, 0.25});
  CHECK(admits_rotating_loop(ok, Shape::euler, 0));
}

TEST_CASE("catalog retention for the drifting brake swap") {
  // the [(),(1,2)] reduction keeps 011 although the drift escape fires for it
  auto g = build_dihedral(SignMatrix::from_code("011"), sigma_pair_by_label("[(),(1,2)]"));
  CHECK(is_fully_uncoercive(g));
  CHECK(!catalog("H2+-").profile.fully_uncoercive);
}

TESTKIT_MAIN
