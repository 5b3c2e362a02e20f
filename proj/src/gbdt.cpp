#include "dirac/gbdt.hpp"

#include <cmath>

namespace dirac {

namespace {

constexpr long kMaxHorizon = 1000000;
constexpr double kOverflowGuard = 1e280;

double identity_scale(const Mat& A, const Mat& S, const Mat& Pi) {
  return A.norm() * S.norm() + Pi.squaredNorm() + 1.0;
}

void check_horizon(long k_max) {
  if (k_max < 0) throw InputError("k_max must be nonnegative");
  if (k_max > kMaxHorizon) throw InputError("k_max exceeds the hard cap 1e6");
}

}  // namespace

AdmissibleTriple make_triple(const Mat& A, const Mat& S0, const Mat& theta1,
                             const Mat& theta2, double tol) {
  const int n = static_cast<int>(A.rows());
  if (n < 1 || A.cols() != n) throw InputError("A must be square and nonempty");
  if (S0.rows() != n || S0.cols() != n) throw InputError("S0 must be n x n");
  if (theta1.rows() != n || theta2.rows() != n)
    throw InputError("theta blocks must have n rows");
  const int m1 = static_cast<int>(theta1.cols());
  const int m2 = static_cast<int>(theta2.cols());
  if (m1 < 1 || m2 < 1) throw InputError("both signature blocks must be nonempty");
  if (!all_finite(A) || !all_finite(S0) || !all_finite(theta1) || !all_finite(theta2))
    throw InputError("triple contains non-finite entries");

  AdmissibleTriple t;
  t.n = n;
  t.sig = Signature{m1, m2};
  t.A = A;
  t.S0 = hermitize(S0);
  t.theta1 = theta1;
  t.theta2 = theta2;

  if ((S0 - S0.adjoint()).norm() > tol * std::max(1.0, S0.norm()))
    throw Error("S0NotPositive", "S0 is not Hermitian");
  Eigen::LLT<Mat> llt(t.S0);
  if (llt.info() != Eigen::Success)
    throw Error("S0NotPositive", "S0 is not positive definite");
  if (!is_invertible(A)) throw Error("SingularA", "A must be invertible");

  const Mat Pi = pi0(t);
  const Mat j = signature_matrix(t.sig);
  const Mat res = A * t.S0 - t.S0 * A.adjoint() - kI * Pi * j * Pi.adjoint();
  t.identity_residual = res.norm() / identity_scale(A, t.S0, Pi);
  if (t.identity_residual > tol)
    throw Error("IdentityViolated", "A S0 - S0 A* = i Pi j Pi* fails");
  return t;
}

Mat pi0(const AdmissibleTriple& t) {
  Mat Pi(t.n, t.sig.m());
  Pi.leftCols(t.sig.m1) = t.theta1;
  Pi.rightCols(t.sig.m2) = t.theta2;
  return Pi;
}

RawState initial_state(const AdmissibleTriple& t) {
  return RawState{0, pi0(t), t.S0};
}

void step_in_place(const AdmissibleTriple& t, RawState& s, double tol) {
  if (s.S.norm() > kOverflowGuard)
    throw Error("IdentityDrift", "raw state passed the overflow guard at k=" +
                                     std::to_string(s.k));
  const Mat j = signature_matrix(t.sig);
  const Mat Ainv_Pi = solve_linear(t.A, s.Pi);
  const Mat Ainv_S = solve_linear(t.A, s.S);
  const Mat Pi_next = s.Pi + kI * Ainv_Pi * j;
  // S_{k+1} = S_k + A^{-1} (S_k + Pi_k Pi_k*) A^{-*}
  const Mat M = Ainv_S + Ainv_Pi * s.Pi.adjoint();
  const Mat S_next = s.S + solve_linear(t.A, M.adjoint()).adjoint();
  const Mat res = t.A * S_next - S_next * t.A.adjoint() -
                  kI * Pi_next * j * Pi_next.adjoint();
  if (res.norm() > tol * identity_scale(t.A, S_next, Pi_next))
    throw Error("IdentityDrift", "transported identity left tolerance at k=" +
                                     std::to_string(s.k + 1));
  s.k += 1;
  s.Pi = Pi_next;
  s.S = hermitize(S_next);
}

FrameCursor::FrameCursor(const AdmissibleTriple& t, double tol)
    : t_(t), tol_(tol), j_(signature_matrix(t.sig)), ApI_lu_(t.A + kI * Mat::Identity(t.n, t.n)) {
  if (!ApI_lu_.isInvertible())
    throw Error("SpectrumConflict", "-i lies in sigma(A); conjugated recursion unavailable");
  MR_ = ApI_lu_.solve(t_.A - kI * Mat::Identity(t_.n, t_.n));
  R_ = t_.S0;
  N_ = t_.theta2;
  id_scale_ = t_.A.norm();
}

void FrameCursor::advance() {
  const Mat P = ApI_lu_.solve(N_);
  R_ = hermitize(R_ + 2.0 * P * P.adjoint());
  N_ = MR_ * N_;
  k_ += 1;
  const Mat res = t_.A * R_ - R_ * t_.A.adjoint() -
                  kI * (t_.theta1 * t_.theta1.adjoint() - N_ * N_.adjoint());
  const double scale =
      id_scale_ * R_.norm() + t_.theta1.squaredNorm() + N_.squaredNorm() + 1.0;
  if (res.norm() > tol_ * scale)
    throw Error("IdentityDrift", "frame identity left tolerance at k=" +
                                     std::to_string(k_));
}

Mat FrameCursor::theta_cat() const {
  Mat Th(t_.n, t_.sig.m());
  Th.leftCols(t_.sig.m1) = t_.theta1;
  Th.rightCols(t_.sig.m2) = N_;
  return Th;
}

Mat FrameCursor::phi() const {
  const Mat Th = theta_cat();
  Eigen::LLT<Mat> llt(R_);
  if (llt.info() != Eigen::Success)
    throw Error("IdentityDrift", "R_k lost positivity at k=" + std::to_string(k_));
  return hermitize(Th.adjoint() * llt.solve(Th));
}

Mat FrameCursor::transfer(Complex lambda) const {
  const Mat Th = theta_cat();
  const Mat Y = solve_linear(t_.A - lambda * Mat::Identity(t_.n, t_.n), Th);
  Eigen::LLT<Mat> llt(R_);
  if (llt.info() != Eigen::Success)
    throw Error("IdentityDrift", "R_k lost positivity at k=" + std::to_string(k_));
  const int m = t_.sig.m();
  return Mat::Identity(m, m) - kI * j_ * Th.adjoint() * llt.solve(Y);
}

double FrameCursor::lambda_min_R() const { return lambda_min(R_); }

namespace {

Mat potential_entry(const Mat& phi_k, const Mat& phi_next, const Signature& sig,
                    long k) {
  const int m = sig.m();
  Mat C = Mat::Identity(m, m) + phi_k - phi_next;
  C = hermitize(C);
  Eigen::LLT<Mat> llt(C);
  if (llt.info() != Eigen::Success)
    throw Error("PotentialInvariantViolated",
                "C_k is not positive definite at k=" + std::to_string(k));
  const Mat j = signature_matrix(sig);
  const Mat res = C * j * C - j;
  const double scale = C.norm() * C.norm() + 1.0;
  if (res.norm() > 1e-8 * scale)
    throw Error("PotentialInvariantViolated",
                "C j C = j fails at k=" + std::to_string(k));
  return C;
}

}  // namespace

std::vector<Mat> potential(const AdmissibleTriple& t, long k_max) {
  check_horizon(k_max);
  if (!is_invertible(t.A + kI * Mat::Identity(t.n, t.n)))
    return potential_raw(t, k_max);
  FrameCursor cur(t);
  std::vector<Mat> C;
  C.reserve(k_max + 1);
  Mat phi_prev = cur.phi();
  for (long k = 0; k <= k_max; ++k) {
    cur.advance();
    const Mat phi_next = cur.phi();
    C.push_back(potential_entry(phi_prev, phi_next, t.sig, k));
    phi_prev = phi_next;
  }
  return C;
}

std::vector<Mat> potential_raw(const AdmissibleTriple& t, long k_max) {
  check_horizon(k_max);
  RawState s = initial_state(t);
  std::vector<Mat> C;
  C.reserve(k_max + 1);
  auto phi_of = [](const RawState& st) {
    Eigen::LLT<Mat> llt(hermitize(st.S));
    if (llt.info() != Eigen::Success)
      throw Error("IdentityDrift",
                  "S_k lost positivity at k=" + std::to_string(st.k));
    return hermitize(st.Pi.adjoint() * llt.solve(st.Pi));
  };
  Mat phi_prev = phi_of(s);
  for (long k = 0; k <= k_max; ++k) {
    step_in_place(t, s);
    const Mat phi_next = phi_of(s);
    C.push_back(potential_entry(phi_prev, phi_next, t.sig, k));
    phi_prev = phi_next;
  }
  return C;
}

Mat transfer(const AdmissibleTriple& t, long k, Complex lambda) {
  check_horizon(k);
  FrameCursor cur(t);
  for (long i = 0; i < k; ++i) cur.advance();
  return cur.transfer(lambda);
}

Mat fundamental_explicit(const AdmissibleTriple& t, long k, Complex z) {
  check_horizon(k);
  const int m = t.sig.m();
  if (z == Complex(0.0, 0.0)) return Mat::Identity(m, m);
  const Complex lambda = -1.0 / z;
  FrameCursor cur(t);
  const Mat w0 = cur.transfer(lambda);
  for (long i = 0; i < k; ++i) cur.advance();
  const Mat wk = cur.transfer(lambda);
  Mat D = Mat::Identity(m, m);
  for (int i = 0; i < t.sig.m1; ++i) D(i, i) = 1.0 + kI * z;
  for (int i = t.sig.m1; i < m; ++i) D(i, i) = 1.0 - kI * z;
  Mat Dk = Mat::Identity(m, m);
  for (long i = 0; i < k; ++i) Dk = Dk * D;
  return wk * Dk * inverse(w0);
}

Mat fundamental_product(const std::vector<Mat>& C, const Signature& sig, long k,
                        Complex z) {
  if (k < 0 || k > static_cast<long>(C.size()))
    throw InputError("product index exceeds the stored potential");
  const int m = sig.m();
  const Mat j = signature_matrix(sig);
  Mat W = Mat::Identity(m, m);
  for (long i = 0; i < k; ++i)
    W = (Mat::Identity(m, m) + kI * z * j * C[i]) * W;
  return W;
}

Signature dual_signature(const Signature& sig) { return Signature{sig.m2, sig.m1}; }

std::vector<Mat> dual_potential(const std::vector<Mat>& C, const Signature& sig) {
  const Mat J = swap_matrix(sig);
  std::vector<Mat> Cd;
  Cd.reserve(C.size());
  for (const Mat& Ck : C) Cd.push_back(J * Ck * J.adjoint());
  return Cd;
}

}  // namespace dirac
