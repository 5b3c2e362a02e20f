#include "dirac/weyl.hpp"

#include <cmath>

#include "dirac/sampling.hpp"

namespace dirac {

WeylEvaluator::WeylEvaluator(const AdmissibleTriple& t) : t_(t) {
  const Mat S0inv = inverse(t.S0);
  Sinv_theta1_ = S0inv * t.theta1;
  Across_ = t.A + kI * t.theta2 * t.theta2.adjoint() * S0inv;
}

Mat WeylEvaluator::eval(Complex z) const {
  const Mat M = Mat::Identity(t_.n, t_.n) + z * Across_;
  const Mat Y = solve_linear(M, t_.theta2);
  const Mat phi = -kI * z * Sinv_theta1_.adjoint() * Y;
  if (z.imag() < -1e-12) {
    const double nrm = spectral_norm(phi);
    if (nrm > 1.0 + 1e-9)
      throw Error("ContractivityViolated",
                  "||phi|| = " + std::to_string(nrm) + " on the lower half-plane");
  }
  return phi;
}

Mat weyl_via_blocks(const AdmissibleTriple& t, Complex z) {
  if (z == Complex(0.0, 0.0)) return Mat::Zero(t.sig.m1, t.sig.m2);
  const Mat w = transfer(t, 0, -1.0 / z);
  const Mat b = w.block(0, t.sig.m1, t.sig.m1, t.sig.m2);
  const Mat d = w.block(t.sig.m1, t.sig.m1, t.sig.m2, t.sig.m2);
  return b * inverse(d);
}

std::vector<Mat> weyl_column_seq(const std::vector<Mat>& C, const Signature& sig,
                                 const Mat& phi0, Complex z, long r_max) {
  if (r_max < 0 || r_max >= static_cast<long>(C.size()))
    throw InputError("column sequence needs C_0..C_{r_max}");
  const int m = sig.m();
  const Mat j = signature_matrix(sig);
  Mat v(m, sig.m2);
  v.topRows(sig.m1) = phi0;
  v.bottomRows(sig.m2) = Mat::Identity(sig.m2, sig.m2);
  std::vector<Mat> out;
  out.reserve(r_max + 1);
  out.push_back(v);
  for (long k = 0; k < r_max; ++k) {
    v = (Mat::Identity(m, m) + kI * z * j * C[k]) * v;
    out.push_back(v);
  }
  return out;
}

SummabilityProbe summability_partial(const std::vector<Mat>& C, const Signature& sig,
                                     const Mat& phi0, Complex z, long r_max,
                                     double tol) {
  if (z.imag() >= 0.0)
    throw InputError("summability bound requires Im z < 0");
  SummabilityProbe probe;
  probe.z = z;
  const double abs2 = std::norm(z);
  probe.q = 1.0 / (1.0 + abs2);
  probe.bound = (1.0 + abs2) / (-2.0 * z.imag());

  const std::vector<Mat> v = weyl_column_seq(C, sig, phi0, z, r_max);
  Mat sum = Mat::Zero(sig.m2, sig.m2);
  double qk = 1.0;
  for (long k = 0; k <= r_max; ++k) {
    sum = hermitize(sum + qk * v[k].adjoint() * C[k] * v[k]);
    probe.partials.push_back(sum);
    const double excess = lambda_max(sum) - probe.bound;
    if (k == 0 || excess > probe.max_excess) probe.max_excess = excess;
    qk *= probe.q;
  }
  if (probe.max_excess > tol)
    throw Error("BoundViolated", "weighted partial sums exceed the half-plane bound");
  return probe;
}

DivergenceProbe divergence_partials(const std::vector<Mat>& C, const Signature& sig,
                                    Complex z, long r_max) {
  if (r_max < 0 || r_max >= static_cast<long>(C.size()))
    throw InputError("divergence probe needs C_0..C_{r_max}");
  const int m = sig.m();
  const Mat j = signature_matrix(sig);
  const double q = 1.0 / (1.0 + std::norm(z));
  DivergenceProbe probe;
  Mat W = Mat::Identity(m, m);
  Mat sum = Mat::Zero(sig.m1, sig.m1);
  double qk = 1.0;
  for (long k = 0; k <= r_max; ++k) {
    const Mat G = qk * W.adjoint() * C[k] * W;
    sum = hermitize(sum + G.topLeftCorner(sig.m1, sig.m1));
    probe.partials.push_back(sum);
    const double gap = lambda_min(sum) - static_cast<double>(k + 1);
    if (k == 0 || gap < probe.min_gap) probe.min_gap = gap;
    W = (Mat::Identity(m, m) + kI * z * j * C[k]) * W;
    qk *= q;
  }
  return probe;
}

bool has_property_j(const Mat& P, const Signature& sig, double tol) {
  if (P.rows() != sig.m() || P.cols() != sig.m2) return false;
  const Mat G = P.adjoint() * P;
  const double scale = std::max(1.0, G.norm());
  if (lambda_min(G) <= tol * scale) return false;
  const Mat Gj = P.adjoint() * signature_matrix(sig) * P;
  return lambda_max(Gj) <= tol * scale;
}

Mat sample_property_j(const Signature& sig, unsigned long long seed) {
  Rng rng(seed);
  Mat K = rng.cmatrix(sig.m1, sig.m2);
  const double nk = spectral_norm(K);
  const double target = 0.1 + 0.8 * rng.uniform();
  if (nk > 0.0) K *= target / nk;
  Mat c(sig.m2, sig.m2);
  for (int tries = 0; tries < 100; ++tries) {
    c = rng.cmatrix(sig.m2, sig.m2);
    if (is_invertible(c)) break;
  }
  Mat P(sig.m(), sig.m2);
  P.topRows(sig.m1) = K;
  P.bottomRows(sig.m2) = Mat::Identity(sig.m2, sig.m2);
  return P * c;
}

Mat disk_transform(const std::vector<Mat>& C, const Signature& sig, Complex z,
                   long r, const Mat& P) {
  const Mat Wr = fundamental_product(C, sig, r, z);
  const Mat U = solve_linear(Wr, P);
  const Mat bottom = U.bottomRows(sig.m2);
  Eigen::FullPivLU<Mat> lu(bottom);
  if (!lu.isInvertible())
    throw Error("DegeneratePencil", "bottom block of W_r^{-1} P is singular");
  return U.topRows(sig.m1) * lu.inverse();
}

Mat disk_pullback(const std::vector<Mat>& C, const Signature& sig, Complex z,
                  long r, const Mat& P) {
  if (r < 0 || r >= static_cast<long>(C.size()))
    throw InputError("pullback index exceeds the stored potential");
  const int m = sig.m();
  const Mat F = Mat::Identity(m, m) + kI * z * signature_matrix(sig) * C[r];
  return solve_linear(F, P);
}

}  // namespace dirac
