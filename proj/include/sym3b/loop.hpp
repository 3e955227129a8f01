#pragma once

#include <cstdint>
#include <vector>

#include "sym3b/group.hpp"

namespace sym3b {

inline constexpr int kDefaultOrder = 32;
// 12 | M keeps every catalog time shift on the grid; see notes on the default.
inline constexpr int kDefaultGrid = 264;

// Centered loop x: T -> R^{3n} as a truncated Fourier series with period 2*pi,
//   x_i(t) = sum_k a_{i,k} cos(k t) + b_{i,k} sin(k t),  k = 0..order.
// Row layout is body-major: row 3*i+c holds coordinate c of body i. b's k=0
// column is kept zero. The same container carries coefficient-space gradients,
// which are not centered loops; centering is enforced by the operations that
// promise it, not by the type.
struct FourierLoop {
  int n = 0;
  int order = 0;
  Eigen::MatrixXd a, b;  // 3n x (order+1)

  static FourierLoop zero(int n, int order);

  Eigen::Vector3d position(int body, double t) const;
  Eigen::Vector3d velocity(int body, double t) const;
  Eigen::Vector3d acceleration(int body, double t) const;

  double max_abs_coeff() const;
};

// Uniform-grid samples at t_j = 2*pi*j/M.
struct SampledLoop {
  int M = 0;
  std::vector<Eigen::Matrix3Xd> positions;   // per grid point, 3 x n
  std::vector<Eigen::Matrix3Xd> velocities;
};

// Alias-free sampling needs M >= 2*order + 2; throws PreconditionViolated below that.
SampledLoop sample(const FourierLoop& x, int M);

// Discrete Fourier analysis of grid samples; exact for trigonometric loops of
// the given order when M >= 2*order + 2.
FourierLoop fit_loop(const std::vector<Eigen::Matrix3Xd>& positions, int order);

// Subtracts the mass-weighted mean from every harmonic.
void center_loop(FourierLoop& x, const std::vector<double>& masses);

// (g.x)_i(t) = space * x_{perm^-1(i)}(time^-1(t)), exactly on coefficients.
FourierLoop act_on_loop(const GroupElement& g, const FourierLoop& x);

// Group average (1/|G|) sum_g g.x followed by re-centering: the orthogonal
// projection onto the equivariant subspace. Requires masses.
FourierLoop project_equivariant(const SymmetryGroup& group, const FourierLoop& x);

// Random centered equivariant loop, deterministic per seed; coefficient scale
// decays as amplitude/(1+k^2). Throws DegenerateOutput when the projection of
// the sampled harmonics is identically zero.
FourierLoop random_equivariant_loop(const SymmetryGroup& group, int order, std::uint64_t seed,
                                    double amplitude);

}  // namespace sym3b
