#pragma once

#include "dirac/gbdt.hpp"

namespace dirac {

// SplitMix64 counter generator with Box-Muller normals.  Hand-rolled rather
// than <random> so that sampled streams are bit-identical across platforms
// and standard-library versions; report determinism depends on this.
class Rng {
 public:
  explicit Rng(unsigned long long seed) : state_(seed) {}

  unsigned long long next_u64();
  double uniform();  // [0, 1)
  double normal();
  Complex cnormal();  // complex standard normal, E|z|^2 = 1
  Mat cmatrix(int rows, int cols);

 private:
  unsigned long long state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stable combination of a base seed with cell indices, for per-cell streams.
unsigned long long mix_seed(unsigned long long seed, unsigned long long a,
                            unsigned long long b);

// Random Hermitian positive definite matrix G G* + I.
Mat random_hpd(int n, Rng& rng);

// Random admissible triple with sigma(A) strictly inside the open upper
// half-plane and at distance > margin from 0, i and -i.  theta2 = theta1 W
// with ||W|| < 1 makes i-times-the-commutator positive semidefinite, which
// pushes sigma(A) upward; the margin is then enforced by rejection.  Throws
// NonConvergence if max_tries rejections are exhausted.
AdmissibleTriple random_triple(int n, int m1, int m2, Rng& rng,
                               double margin = 0.05, int max_tries = 200);

}  // namespace dirac
