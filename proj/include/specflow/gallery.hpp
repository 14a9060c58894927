#pragma once

#include <cstdint>

#include "specflow/path.hpp"

namespace specflow {
namespace gallery {

/// Truncated momentum operator with twisted boundary phase: diagonal
/// diag(2 pi k + lambda), k = -K..K.
HermitianOperator twisted_fourier(int K, double lambda);
OperatorPath twisted_fourier_path(int K, double t0, double t1);

/// Centered-difference realization of i u' on n grid points with the wrap
/// entry twisted by e^{-i lambda}; spectrum n sin((2 pi k + lambda)/n).
HermitianOperator twisted_fd(int n, double lambda);
OperatorPath twisted_fd_path(int n, double t0, double t1);

/// diag with n_side entries +1, n_side entries -1 and one entry lambda.
HermitianOperator normalization_operator(int n_side, double lambda);
OperatorPath normalization_path(int n_side, double t0 = -1.0, double t1 = 1.0);

/// t -> (1 - t) A0 + t A1 on [0, 1], derivative A1 - A0.
OperatorPath linear_pencil(const HermitianOperator& a0,
                           const HermitianOperator& a1);

/// Seeded Hermitian trigonometric-polynomial path on [0, 1] with analytic
/// derivative; identical bits for identical (dim, seed, knots).
OperatorPath random_smooth(int dim, std::uint64_t seed, int knots);

/// Seeded dense Hermitian matrix (entries ~ standard complex Gaussian).
HermitianOperator random_hermitian(int dim, std::uint64_t seed);

}  // namespace gallery
}  // namespace specflow
