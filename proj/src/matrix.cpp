#include "dirac/matrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace dirac {

Mat signature_matrix(const Signature& sig) {
  Mat j = Mat::Identity(sig.m(), sig.m());
  for (int i = sig.m1; i < sig.m(); ++i) j(i, i) = -1.0;
  return j;
}

Mat swap_matrix(const Signature& sig) {
  Mat J = Mat::Zero(sig.m(), sig.m());
  for (int i = 0; i < sig.m2; ++i) J(i, sig.m1 + i) = 1.0;
  for (int i = 0; i < sig.m1; ++i) J(sig.m2 + i, i) = 1.0;
  return J;
}

Mat cholesky(const Mat& H, double tol) {
  if (H.rows() != H.cols()) throw Error("NotHermitian", "matrix is not square");
  const double scale = std::max(1.0, H.norm());
  if ((H - H.adjoint()).norm() > tol * scale)
    throw Error("NotHermitian", "anti-Hermitian part too large");
  Eigen::LLT<Mat> llt(hermitize(H));
  if (llt.info() != Eigen::Success)
    throw Error("NotPositiveDefinite", "Cholesky factorization failed");
  return llt.matrixL();
}

Mat solve_linear(const Mat& A, const Mat& B) {
  Eigen::FullPivLU<Mat> lu(A);
  if (!lu.isInvertible()) throw Error("Singular", "linear solve with singular matrix");
  return lu.solve(B);
}

Mat inverse(const Mat& A) {
  Eigen::FullPivLU<Mat> lu(A);
  if (!lu.isInvertible()) throw Error("Singular", "inverse of singular matrix");
  return lu.inverse();
}

bool is_invertible(const Mat& A) {
  return Eigen::FullPivLU<Mat>(A).isInvertible();
}

Vec eigvals(const Mat& A) {
  Eigen::ComplexEigenSolver<Mat> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw Error("NonConvergence", "eigenvalue iteration failed");
  return es.eigenvalues();
}

double spectral_norm(const Mat& M) {
  if (M.size() == 0) return 0.0;
  const Mat G = M.adjoint() * M;
  const int n = static_cast<int>(G.rows());
  Vec v = Vec::Constant(n, Complex(1.0 / std::sqrt(double(n)), 0.0));
  double lam = 0.0;
  for (int it = 0; it < 100; ++it) {
    Vec w = G * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    const double lam_new = std::real(v.dot(G * v));
    if (std::abs(lam_new - lam) <= 1e-12 * std::max(1.0, std::abs(lam_new))) {
      lam = lam_new;
      break;
    }
    lam = lam_new;
  }
  return std::sqrt(std::max(0.0, lam));
}

double lambda_min(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(H), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("NonConvergence", "Hermitian eigensolve failed");
  return es.eigenvalues().minCoeff();
}

double lambda_max(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(H), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("NonConvergence", "Hermitian eigensolve failed");
  return es.eigenvalues().maxCoeff();
}

bool all_finite(const Mat& M) {
  for (Eigen::Index c = 0; c < M.cols(); ++c)
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
      const Complex& z = M(r, c);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

Mat sylvester(const Mat& A, const Mat& B, const Mat& C) {
  const Eigen::Index n = A.rows(), m = B.cols();
  Mat K = Mat::Zero(n * m, n * m);
  // vec(A X + X B) = (I_m (x) A + B^T (x) I_n) vec(X), column-major vec.
  for (Eigen::Index j = 0; j < m; ++j) {
    K.block(j * n, j * n, n, n) += A;
    for (Eigen::Index i = 0; i < m; ++i)
      K.block(i * n, j * n, n, n) += B(j, i) * Mat::Identity(n, n);
  }
  Vec c(n * m);
  for (Eigen::Index j = 0; j < m; ++j) c.segment(j * n, n) = C.col(j);
  Vec x = solve_linear(K, c);
  Mat X(n, m);
  for (Eigen::Index j = 0; j < m; ++j) X.col(j) = x.segment(j * n, n);
  return X;
}

}  // namespace dirac
