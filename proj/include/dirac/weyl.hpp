#pragma once

#include <vector>

#include "dirac/gbdt.hpp"

namespace dirac {

// Weyl function of the system generated by an admissible triple, in the
// closed rational form
//   phi(z) = -i z theta1* S0^{-1} (I + z Across)^{-1} theta2,
//   Across = A + i theta2 theta2* S0^{-1}.
// phi is holomorphic and contractive on the open lower half-plane.
class WeylEvaluator {
 public:
  explicit WeylEvaluator(const AdmissibleTriple& t);

  // Throws Singular when I + z Across is singular and ContractivityViolated
  // when z lies in the open lower half-plane but ||phi(z)|| > 1 + 1e-9.
  Mat eval(Complex z) const;

  const Mat& across() const { return Across_; }

 private:
  AdmissibleTriple t_;
  Mat Sinv_theta1_, Across_;
};

// Same value through the transfer-matrix blocks: with w = w_A(0, -1/z)
// partitioned by the signature, phi(z) = w_12 w_22^{-1}.
Mat weyl_via_blocks(const AdmissibleTriple& t, Complex z);

// Left-boundary values of the fundamental solution applied to [phi; I]:
// v_0 = [phi(z); I], v_{k+1} = (I + i z j C_k) v_k.
std::vector<Mat> weyl_column_seq(const std::vector<Mat>& C, const Signature& sig,
                                 const Mat& phi0, Complex z, long r_max);

// Partial sums of the weighted series
//   sum_{k<=r} q^k v_k* C_k v_k,  q = 1/(1+|z|^2),
// which stay below (1+|z|^2)/(-2 Im z) * I for the Weyl function.  Throws
// BoundViolated when the largest eigenvalue excess passes tol.
struct SummabilityProbe {
  Complex z;
  double q = 0.0;
  double bound = 0.0;          // scalar multiple of I dominating every partial sum
  std::vector<Mat> partials;   // partial sums for r = 0 .. r_max
  double max_excess = 0.0;     // max_r lambda_max(partial_r - bound I)
};

SummabilityProbe summability_partial(const std::vector<Mat>& C, const Signature& sig,
                                     const Mat& phi0, Complex z, long r_max,
                                     double tol = 1e-9);

// Top-left partial sums sum_{k<=r} q^k (W_k* C_k W_k)_{11}; for any potential
// these dominate ((r+1) - tol) I, which rules out column choices with a
// nonzero top block in place of [phi; I].
struct DivergenceProbe {
  std::vector<Mat> partials;
  double min_gap = 0.0;  // min_r lambda_min(partial_r - (r+1) I)
};

DivergenceProbe divergence_partials(const std::vector<Mat>& C, const Signature& sig,
                                    Complex z, long r_max);

// Nonsingular m x m2 matrices P with P*P > 0 and P* j P <= 0 parameterize the
// Weyl disks.  Sampled as [K; I] c with ||K|| < 1 and c invertible.
bool has_property_j(const Mat& P, const Signature& sig, double tol = 1e-9);
Mat sample_property_j(const Signature& sig, unsigned long long seed);

// Linear fractional transform of the disk at depth r:
//   phi_r(z, P) = (W_r^{-1} P)_top ((W_r^{-1} P)_bottom)^{-1}.
// Throws DegeneratePencil when the bottom block is singular.
Mat disk_transform(const std::vector<Mat>& C, const Signature& sig, Complex z,
                   long r, const Mat& P);

// Pulling P through one factor keeps property j: P -> (I + i z j C_r)^{-1} P.
Mat disk_pullback(const std::vector<Mat>& C, const Signature& sig, Complex z,
                  long r, const Mat& P);

}  // namespace dirac
