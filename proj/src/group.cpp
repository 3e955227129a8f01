#include "sym3b/group.hpp"

#include <cmath>
#include <numeric>

namespace sym3b {

SymmetryGroup generate_group(int n, const std::vector<GroupElement>& generators, int cap) {
  if (cap < 1) throw PreconditionViolated("closure cap must be >= 1");
  for (const auto& g : generators) {
    if (g.perm.size() != n) throw DimensionMismatch("generator permutation size != n");
    if (!g.is_valid()) throw PreconditionViolated("generator space matrix is not orthogonal");
  }

  SymmetryGroup group;
  group.n = n;
  group.generators = generators;
  group.elements.push_back(GroupElement::identity(n));

  // Breadth-first closure; duplicates are detected up to kElementTol.
  std::vector<GroupElement> frontier = group.elements;
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& e : frontier) {
      for (const auto& g : generators) {
        GroupElement prod = compose(e, g);
        if (!group.contains(prod)) {
          if (group.order() >= cap)
            throw CapExceeded("group closure exceeded cap " + std::to_string(cap));
          group.elements.push_back(prod);
          next.push_back(prod);
        }
      }
    }
    frontier = std::move(next);
  }
  return group;
}

void set_masses(SymmetryGroup& group, std::vector<double> masses) {
  if (static_cast<int>(masses.size()) != group.n)
    throw DimensionMismatch("mass count != body count");
  double total = std::accumulate(masses.begin(), masses.end(), 0.0);
  if (total <= 0.0) throw MassOutOfRange("masses must be positive");
  for (double& m : masses) {
    if (m <= 0.0) throw MassOutOfRange("masses must be positive");
    m /= total;
  }
  // Masses must be constant along permutation orbits.
  for (const auto& g : group.elements)
    for (int i = 0; i < group.n; ++i)
      if (std::fabs(masses[i] - masses[g.perm(i)]) > 1e-12)
        throw PreconditionViolated("masses are not constant on group orbits");
  group.masses = std::move(masses);
}

std::vector<std::vector<int>> permutation_orbits(const SymmetryGroup& group) {
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(group.n, false);
  for (int i = 0; i < group.n; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit{i};
    seen[i] = true;
    for (size_t k = 0; k < orbit.size(); ++k)
      for (const auto& g : group.elements) {
        int j = g.perm(orbit[k]);
        if (!seen[j]) {
          seen[j] = true;
          orbit.push_back(j);
        }
      }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

bool acts_transitively(const SymmetryGroup& group) {
  return permutation_orbits(group).size() == 1;
}

}  // namespace sym3b
