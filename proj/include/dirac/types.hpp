#pragma once

#include <Eigen/Dense>
#include <complex>

namespace dirac {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Block signature sizes of the system: m = m1 + m2.
struct Signature {
  int m1 = 0;
  int m2 = 0;
  int m() const { return m1 + m2; }
};

// j = diag(I_{m1}, -I_{m2}).
Mat signature_matrix(const Signature& sig);

// Block-swap permutation J mapping the (m1, m2) splitting to (m2, m1).
Mat swap_matrix(const Signature& sig);

}  // namespace dirac
