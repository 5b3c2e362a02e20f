#pragma once

#include <vector>

#include "dirac/matrix.hpp"

namespace dirac {

// Parameter triple {A, S0, [theta1 theta2]} with det A != 0, S0 > 0 and
// A S0 - S0 A* = i Pi0 j Pi0*.  All constructors of system data go through
// make_triple so the identity is checked exactly once at the boundary.
struct AdmissibleTriple {
  int n = 0;
  Signature sig;
  Mat A, S0, theta1, theta2;
  double identity_residual = 0.0;
};

AdmissibleTriple make_triple(const Mat& A, const Mat& S0, const Mat& theta1,
                             const Mat& theta2, double tol = 1e-9);

// [theta1 theta2], the k = 0 column block.
Mat pi0(const AdmissibleTriple& t);

// Raw recursion state (Pi_k, S_k).  Both matrices grow roughly geometrically
// in k, so this representation is only suitable for short horizons; the
// FrameCursor below is the long-horizon route.
struct RawState {
  long k = 0;
  Mat Pi, S;
};

RawState initial_state(const AdmissibleTriple& t);

// Advance (Pi_k, S_k) -> (Pi_{k+1}, S_{k+1}) and re-verify the transported
// identity A S - S A* = i Pi j Pi*.  Throws IdentityDrift when the residual
// leaves the tolerance band or when ||S|| passes the overflow guard 1e280.
void step_in_place(const AdmissibleTriple& t, RawState& s, double tol = 1e-8);

// Streaming state of the conjugated recursion.  With L = I + i A^{-1} the
// factorization S_k = L^k R_k (L^k)* holds, R_k is Hermitian positive
// definite and monotonically nondecreasing, and
//   Pi_k* S_k^{-1} Pi_k = [theta1 N_k]* R_k^{-1} [theta1 N_k],
//   N_k = ((A+iI)^{-1}(A-iI))^k theta2.
// This keeps every stored matrix bounded in k and is the representation used
// for long products.  Requires -i outside sigma(A); the constructor throws
// SpectrumConflict otherwise and callers fall back to the raw recursion.
class FrameCursor {
 public:
  explicit FrameCursor(const AdmissibleTriple& t, double tol = 1e-8);

  long k() const { return k_; }
  const Mat& R() const { return R_; }
  const Mat& N() const { return N_; }

  void advance();

  // Pi_k* S_k^{-1} Pi_k.
  Mat phi() const;

  // w_A(k, lambda) = I - i j [theta1 N_k]* R_k^{-1} (A - lambda I)^{-1} [theta1 N_k].
  Mat transfer(Complex lambda) const;

  double lambda_min_R() const;
  Mat theta_cat() const;  // [theta1 N_k]

 private:
  const AdmissibleTriple t_;
  double tol_;
  Mat j_, MR_;
  Eigen::FullPivLU<Mat> ApI_lu_;
  long k_ = 0;
  Mat R_, N_;
  double id_scale_ = 1.0;
};

// Potential sequence C_0 .. C_{k_max} from the conjugated recursion, falling
// back to the raw recursion when -i lies in sigma(A).  Each entry is checked
// for positivity and for C j C = j; violations raise
// PotentialInvariantViolated.  k_max is capped at 1e6.
std::vector<Mat> potential(const AdmissibleTriple& t, long k_max);

// Same sequence through the raw recursion only (test and fallback path).
std::vector<Mat> potential_raw(const AdmissibleTriple& t, long k_max);

// Transfer matrix w_A(k, lambda).  Rebuilds a cursor, so cost is O(k).
Mat transfer(const AdmissibleTriple& t, long k, Complex lambda);

// Fundamental solution W_k(z) in closed form,
//   W_k(z) = w_A(k, -1/z) diag((1+iz) I_{m1}, (1-iz) I_{m2})^k w_A(0, -1/z)^{-1},
// and as the forward product of the factors I + i z j C_k.
Mat fundamental_explicit(const AdmissibleTriple& t, long k, Complex z);
Mat fundamental_product(const std::vector<Mat>& C, const Signature& sig, long k,
                        Complex z);

// Dual system data: signature blocks swap and the potential conjugates to
// J C J*.  The fundamental solutions are related by W_dual(z) = J W(-z) J*.
Signature dual_signature(const Signature& sig);
std::vector<Mat> dual_potential(const std::vector<Mat>& C, const Signature& sig);

}  // namespace dirac
