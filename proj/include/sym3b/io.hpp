#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "sym3b/action.hpp"
#include "sym3b/classification.hpp"
#include "sym3b/group.hpp"
#include "sym3b/loop.hpp"
#include "sym3b/minimizer.hpp"
#include "sym3b/variations.hpp"

namespace sym3b {

// Group spec files: { "n": int, "masses": [..], "generators":
//   [ { "time": {"shift": s, "orientation": +-1}, "space": [[3x3]],
//       "perm": [1-based image] } ] }.
// Import closes the generators into a full group; masses are optional and
// attached when present. Spatial parts must be orthogonal to 1e-12.
nlohmann::json group_to_json(const SymmetryGroup& group);
SymmetryGroup group_from_json(const nlohmann::json& spec);

// "e1"/"e2"/"e3" for (signed) coordinate axes, a numeric triple otherwise.
std::string axis_label(const Eigen::Vector3d& v);

nlohmann::json diagnostics_to_json(const DiagnosticsReport& report);
nlohmann::json result_to_json(const MinimizeResult& result);
nlohmann::json variation_to_json(const VariationReport& report);

// One catalog row: {name, digit_code, sigma_pair, order, axes, flags}.
nlohmann::json entry_to_json(const CatalogEntry& entry);

// Sweep report line; omega_display lets the caller relabel the speed without
// touching the computed record. Failed points carry {omega, error} only.
nlohmann::json sweep_point_to_json(const SweepPoint& point, double omega_display);

// Header t,x1,y1,z1,...,xn,yn,zn; one row per grid point t_j = 2*pi*j/M.
// The inertial variant applies the frame rotation e^{t Omega} to each sample.
void write_trajectory_csv(const std::string& path, const ProblemSetup& setup,
                          const FourierLoop& x, int M, bool inertial);

struct TrajectorySamples {
  std::vector<double> t;
  std::vector<Eigen::Matrix3Xd> positions;  // 3 x n per row
};

TrajectorySamples read_trajectory_csv(const std::string& path);

// Checks the samples sit on the uniform grid, then fits coefficients.
FourierLoop loop_from_samples(const TrajectorySamples& samples, int order);

}  // namespace sym3b
