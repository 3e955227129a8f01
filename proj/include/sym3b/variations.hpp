#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "sym3b/action.hpp"
#include "sym3b/baselines.hpp"
#include "sym3b/loop.hpp"

namespace sym3b {

// One scalar Fourier loop per body, used for vertical variations.
struct ScalarLoops {
  int n = 0;
  int order = 0;
  Eigen::MatrixXd a;  // n x (order+1) cosine coefficients
  Eigen::MatrixXd b;  // same layout, sine, column 0 ignored

  static ScalarLoops zero(int n, int order);
  double value(int body, double t) const;
  double derivative(int body, double t) const;
};

struct VariationReport {
  double second_derivative = 0.0;
  std::optional<double> closed_form;
  bool criterion_satisfied = false;
  std::optional<double> threshold;
};

// d^2/de^2 of the action of the spatial path (x, e*phi) at e = 0:
//   integral of sum_i m_i phi_i'^2 - alpha sum_{i<j} m_i m_j (phi_i-phi_j)^2 / |x_i-x_j|^(alpha+2).
// Requires a loop with zero vertical part and a frame along e3 (or zero), so
// the vertical direction decouples from the planar motion.
double second_variation_vertical(const ProblemSetup& setup, const FourierLoop& planar_loop,
                                 const ScalarLoops& phi, int grid_points = kDefaultGrid);

// In-plane-direction variation at the Kepler-scaled equilateral: the second
// derivative is pi*I*(1 - (k+omega)^2), negative exactly when (k+omega)^2 > 1.
VariationReport lagrange_instability_test(const std::vector<double>& masses, double alpha,
                                          int k, double omega);

// T(m1) = m1 / 2^(alpha+1) + 1 - 2 m1 for collinear configurations with m1 = m2.
double euler_threshold(const std::vector<double>& masses, double alpha);

// The sine variation phi_i = v_i sin t at a collinear baseline; negative
// exactly when (k+omega)^2 exceeds euler_threshold.
VariationReport sine_variation_test(const ProblemSetup& setup, const Baseline& euler_base,
                                    const std::vector<double>& v);

// Frame speeds for which every winding allowed by the residue constraint
// leaves (k+omega)^2 above the collinear threshold. Returned as maximal open
// intervals whose left endpoints lie in [0, period).
std::vector<std::pair<double, double>> nonplanar_window(const std::vector<double>& masses,
                                                        double alpha,
                                                        const std::set<int>& residues,
                                                        int period);

}  // namespace sym3b
