#pragma once

#include "dirac/errors.hpp"
#include "dirac/types.hpp"

namespace dirac {

// Lower-triangular Cholesky factor of a Hermitian positive definite matrix.
// Symmetrizes (H + H*)/2 first; rejects inputs whose anti-Hermitian part
// exceeds tol * max(1, ||H||) with NotHermitian, and indefinite inputs with
// NotPositiveDefinite.
Mat cholesky(const Mat& H, double tol = 1e-10);

// Solve A X = B by full-pivot LU.  Throws Singular if A is not invertible.
Mat solve_linear(const Mat& A, const Mat& B);

// Inverse via full-pivot LU.  Throws Singular.
Mat inverse(const Mat& A);

bool is_invertible(const Mat& A);

// Eigenvalues of a general square matrix (unordered).
Vec eigvals(const Mat& A);

// Largest singular value by power iteration on M* M: at most 100 iterations,
// relative change below 1e-12 stops early.  Deterministic start vector.
double spectral_norm(const Mat& M);

// Eigenvalue extremes of the Hermitian part (H + H*)/2.
double lambda_min(const Mat& H);
double lambda_max(const Mat& H);

inline Mat hermitize(const Mat& H) { return 0.5 * (H + H.adjoint()); }

bool all_finite(const Mat& M);

// Solve A X + X B = C via the Kronecker linearization.  Intended for the
// small state dimensions this library works at; cost is O((n*m)^3).
Mat sylvester(const Mat& A, const Mat& B, const Mat& C);

}  // namespace dirac
