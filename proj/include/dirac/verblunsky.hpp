#pragma once

#include <vector>

#include "dirac/gbdt.hpp"

namespace dirac {

// Contraction coefficient of one potential entry: rho = C_11^{-1} C_12.
// Throws TopBlockSingular if C_11 is singular and NotStrictContraction if
// ||rho|| >= 1.
Mat rho_from_potential(const Mat& Ck, const Signature& sig);

// Rebuild the potential entry from its coefficient,
//   C = diag((I - rho rho*)^{-1/2}, (I - rho* rho)^{-1/2}) [[I, rho], [rho*, I]].
Mat halmos_reconstruct(const Mat& rho, const Signature& sig);

// Same coefficient straight from the triple, mixing the conjugated-frame
// scalar block with the raw-recursion cross block; meant as a cross-check of
// the two recursion routes at moderate k.
Mat rho_explicit(const AdmissibleTriple& t, long k);

// Monotone sequences attached to the recursion:
//   R_k = (I + i A^{-1})^{-k} S_k (I - i A^{-*})^{-k}   (needs -i not in sigma(A)),
//   Q_k = (I - i A^{-1})^{-k} S_k (I + i A^{-*})^{-k}   (needs  i not in sigma(A)).
// Both start at S0 and grow by rank-m updates.  Each side is computed only
// where its spectrum condition holds; asking for k_max > 0 with neither side
// available raises SpectrumConflict.  Explicit matrices, so only for moderate
// k; the asymptotics report below tracks the same data in a scaled form that
// survives long horizons.
struct RQSequences {
  std::vector<Mat> R, Q;
  bool r_available = false;
  bool q_available = false;
};

RQSequences rq_sequences(const AdmissibleTriple& t, long k_max);

// F = sum_{l=1}^{n} (A - iI)^{n-l} (A + iI)^{l-1} theta1 theta1*
//                 (A* - iI)^{l-1} (A* + iI)^{n-l}.
// Polynomial in A, so defined for every triple.  Strictly positive exactly
// when {A, theta1} is controllable; its smallest eigenvalue feeds the uniform
// gap estimate below.
Mat f_matrix(const AdmissibleTriple& t);

struct AsymptoticsRow {
  long k = 0;
  double rho_norm = 0.0;
  double c_err = 0.0;    // ||C_k - I||
  double lmin_R = 0.0;   // smallest eigenvalue of R_k
  double lmin_Q = 0.0;   // smallest eigenvalue of Q_k (NaN when unavailable)
};

struct AsymptoticsReport {
  std::vector<AsymptoticsRow> rows;
  Mat kappa_R, kappa_Q;       // limits of R_k^{-1}, Q_k^{-1}, clipped to >= 0
  bool q_route_available = false;
  bool diagonalizable = false;
  double lmin_F = 0.0;
  double epsilon_gap = 0.0;   // min_k lambda_min(Q_{k+n} - Q_k)
  long first_k_small_rho = -1;   // first k with ||rho_k|| < rho_tol
  double after_ratio = 0.0;      // max_{j >= first_k} ||rho_j|| / rho_tol
  long r_growth_k = -1;          // first k with lambda_min(R_k) >= 1e6
  long q_growth_k = -1;
};

// Decay telemetry over k = 0 .. k_max.  The Q-sequence outgrows double
// precision on long horizons, so its smallest eigenvalue is tracked through
// the inverse: Q_{k+1}^{-1} follows from Q_k^{-1} by a guarded downdate with
// the update column held in log scale.
AsymptoticsReport asymptotics_report(const AdmissibleTriple& t, long k_max,
                                     double rho_tol = 1e-3);

}  // namespace dirac
