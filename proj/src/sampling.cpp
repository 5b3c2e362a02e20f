#include "dirac/sampling.hpp"

#include <cmath>

namespace dirac {

unsigned long long Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  unsigned long long z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Complex Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * M_SQRT1_2;
}

Mat Rng::cmatrix(int rows, int cols) {
  Mat M(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) M(r, c) = cnormal();
  return M;
}

unsigned long long mix_seed(unsigned long long seed, unsigned long long a,
                            unsigned long long b) {
  Rng r(seed ^ (a * 0xA24BAED4963EE407ull) ^ (b * 0x9FB21C651E98DF25ull));
  return r.next_u64();
}

Mat random_hpd(int n, Rng& rng) {
  const Mat G = rng.cmatrix(n, n);
  return hermitize(G * G.adjoint() + Mat::Identity(n, n));
}

AdmissibleTriple random_triple(int n, int m1, int m2, Rng& rng, double margin,
                               int max_tries) {
  // The spectrum of A is drawn first, strictly inside the upper half-plane
  // and clear of 0 and +-i by construction.  S0 is then the unique Hermitian
  // solution of A S0 - S0 A* = i (th1 th1* - th2 th2*), computed in the
  // eigenbasis of A; it is positive definite whenever (A, theta1) is
  // controllable, so rejection only handles conditioning accidents.
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Vec d(n);
    for (int i = 0; i < n; ++i) {
      Complex lam;
      do {
        lam = Complex(2.4 * rng.uniform() - 1.2,
                      2.0 * margin + 2.0 * rng.uniform());
      } while (std::abs(lam) < 2.0 * margin ||
               std::abs(lam - kI) < 2.0 * margin ||
               std::abs(lam + kI) < 2.0 * margin);
      d[i] = lam;
    }
    const Mat V = rng.cmatrix(n, n);
    const Mat theta1 = rng.cmatrix(n, m1);
    Mat W = rng.cmatrix(m1, m2);
    const double target = 0.2 + 0.7 * rng.uniform();
    const double nw = spectral_norm(W);
    if (nw == 0.0) continue;
    W *= target / nw;
    const Mat theta2 = theta1 * W;

    if (!is_invertible(V)) continue;
    const Mat Vinv = inverse(V);
    if (spectral_norm(V) * spectral_norm(Vinv) > 100.0) continue;
    const Mat A = V * d.asDiagonal() * Vinv;

    const Mat K =
        hermitize(theta1 * theta1.adjoint() - theta2 * theta2.adjoint());
    // In the eigenbasis the identity decouples entrywise: with G = V^-1 K V^-*
    // the solution is Y_rc = i G_rc / (d_r - conj(d_c)), and every divisor has
    // imaginary part at least 4 * margin.
    const Mat G = Vinv * K * Vinv.adjoint();
    Mat Y(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        Y(r, c) = kI * G(r, c) / (d[r] - std::conj(d[c]));
    const Mat S0 = hermitize(V * Y * V.adjoint());

    const double lmax = lambda_max(S0);
    if (!(lmax > 0.0) || lambda_min(S0) < 1e-5 * lmax) continue;
    const Mat res = A * S0 - S0 * A.adjoint() - kI * K;
    const double scale = spectral_norm(A) * S0.norm() + K.norm() + 1.0;
    if (res.norm() > 1e-10 * scale) continue;
    return make_triple(A, S0, theta1, theta2);
  }
  throw Error("NonConvergence", "triple sampler exhausted max_tries");
}

}  // namespace dirac
