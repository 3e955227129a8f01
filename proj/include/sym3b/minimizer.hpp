#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sym3b/action.hpp"
#include "sym3b/diagnostics.hpp"
#include "sym3b/group.hpp"
#include "sym3b/loop.hpp"

namespace sym3b {

struct MinimizeConfig {
  int max_iters = 5000;           // accepted-step budget per start
  double grad_tol = 1e-8;         // projected-gradient norm at which a run converges
  int starts = 8;                 // random starts, seeded deterministically
  double collision_guard = 1e-6;  // trials with a smaller pairwise distance are rejected
  std::uint64_t seed = 1;
  int order = kDefaultOrder;      // every start is resized to this truncation
  int grid = kDefaultGrid;
  bool allow_uncoercive = false;  // opt-in for groups whose infimum escapes to infinity
  std::optional<FourierLoop> warm_start;  // tried in addition to the random starts
};

struct MinimizeResult {
  FourierLoop loop;
  double action = 0.0;
  double grad_norm = 0.0;  // projected gradient at the reported loop
  int iterations = 0;      // accepted steps of the winning start
  bool converged = false;  // implies grad_norm <= grad_tol
  double min_distance = 0.0;
  DiagnosticsReport diagnostics;
  std::vector<double> trace;  // action after each accepted step, initial value first
};

// Best-of-starts projected nonlinear conjugate gradient over the equivariant
// loop space. Refuses groups bound to collisions, groups flagged fully
// uncoercive (unless allow_uncoercive), and frame axes the group does not
// admit. Throws AllStartsCollided when no start clears the collision guard.
MinimizeResult minimize(const ProblemSetup& setup, const SymmetryGroup& group,
                        const MinimizeConfig& config = {});

struct SweepPoint {
  double omega = 0.0;
  std::optional<MinimizeResult> result;  // empty when this grid point failed
  std::string error;                     // failure description, empty on success
};

// One minimization per grid value of the frame speed, keeping the template's
// axis direction (e3 when the template frame is zero). After the first point
// each minimization warm-starts from the previous accepted loop plus one cold
// start; failures are recorded in their row and the sweep continues. Results
// follow the input grid order. SYM3B_WORKERS > 1 splits the grid into
// contiguous chunks, each chunk chaining its own warm starts. on_point fires
// once per finished point (serialized; grid order only in serial mode).
std::vector<SweepPoint> sweep_omega(const ProblemSetup& setup_template, const SymmetryGroup& group,
                                    const std::vector<double>& omega_grid,
                                    const MinimizeConfig& config = {},
                                    const std::function<void(const SweepPoint&)>& on_point = {});

}  // namespace sym3b
