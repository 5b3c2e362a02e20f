#pragma once

#include <cmath>

#include "dirac/gbdt.hpp"
#include "dirac/inverse.hpp"

// Hand-checkable data shared across the suites.
//
// t1: {A = i, S0 = 1, theta1 = 2, theta2 = sqrt 2}.  One recursion step gives
// Pi_1 = [4 0], S_1 = 8, so
//   C_0 = [[3, 2 sqrt 2], [2 sqrt 2, 3]],  C_k = I for k >= 1,
// and the Weyl function is phi(z) = -2 sqrt 2 i z / (1 + 3 i z).
//
// t0: {A = i, S0 = 1, theta1 = sqrt 2, theta2 = 0}.  The potential is
// identically I and phi = 0, which makes every series closed-form.
//
// fixture_realization: {Acal = 3i, B = sqrt 2, Ccal = 2i}, the state-space
// data of psi(z) = 2 sqrt 2 i / (z - 3i).  Its Riccati solution is X = 1 and
// the recovered generator data is exactly t1.
namespace fixtures {

inline dirac::Mat scalar(dirac::Complex v) {
  dirac::Mat M(1, 1);
  M(0, 0) = v;
  return M;
}

inline dirac::AdmissibleTriple t1() {
  using dirac::Complex;
  return dirac::make_triple(scalar(Complex(0, 1)), scalar(1.0), scalar(2.0),
                            scalar(std::sqrt(2.0)));
}

inline dirac::AdmissibleTriple t0() {
  using dirac::Complex;
  return dirac::make_triple(scalar(Complex(0, 1)), scalar(1.0),
                            scalar(std::sqrt(2.0)), scalar(0.0));
}

inline dirac::Mat c0_t1() {
  dirac::Mat C(2, 2);
  const double s = 2.0 * std::sqrt(2.0);
  C << 3.0, s, s, 3.0;
  return C;
}

inline dirac::Realization fixture_realization() {
  using dirac::Complex;
  return dirac::make_realization(scalar(Complex(0, 3)),
                                 scalar(std::sqrt(2.0)), scalar(Complex(0, 2)));
}

// {A = diag(i, -i), S0 = I, theta1 = [sqrt 2; 0], theta2 = [0; sqrt 2]}:
// admissible, but both i and -i sit in sigma(A), so neither conjugated
// recursion applies and only the raw route works.
inline dirac::AdmissibleTriple both_conflict() {
  using dirac::Complex;
  dirac::Mat A = dirac::Mat::Zero(2, 2);
  A(0, 0) = Complex(0, 1);
  A(1, 1) = Complex(0, -1);
  dirac::Mat th1 = dirac::Mat::Zero(2, 1), th2 = dirac::Mat::Zero(2, 1);
  th1(0, 0) = std::sqrt(2.0);
  th2(1, 0) = std::sqrt(2.0);
  return dirac::make_triple(A, dirac::Mat::Identity(2, 2), th1, th2);
}

// Mirror of t0 with A = -i: only the Q-side conjugation exists.
inline dirac::AdmissibleTriple t0_mirror() {
  using dirac::Complex;
  return dirac::make_triple(scalar(Complex(0, -1)), scalar(1.0), scalar(0.0),
                            scalar(std::sqrt(2.0)));
}

inline double rel_err(const dirac::Mat& got, const dirac::Mat& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

}  // namespace fixtures
