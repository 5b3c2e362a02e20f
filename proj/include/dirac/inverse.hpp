#pragma once

#include <vector>

#include "dirac/gbdt.hpp"

namespace dirac {

// State-space data of the rational function psi(z) = Ccal (z I - Acal)^{-1} B.
// The inverse problem consumes psi with phi(z) = psi(-1/z) contractive on the
// open lower half-plane.
struct Realization {
  int n = 0;
  Signature sig;
  Mat Acal, B, Ccal;
};

Realization make_realization(const Mat& Acal, const Mat& B, const Mat& Ccal);

// Canonical realization of the Weyl function of a triple:
//   Acal = A + i theta2 theta2* S0^{-1},  B = theta2,  Ccal = i theta1* S0^{-1}.
Realization realization_from_triple(const AdmissibleTriple& t);

Mat eval_psi(const Realization& r, Complex z);

// Kalman-style two-sided compression to a minimal realization.  Ranks are
// read off singular values with the relative cutoff tol.
Realization minimal_reduce(const Realization& r, double tol = 1e-10);

int controllability_rank(const Realization& r, double tol = 1e-10);
int observability_rank(const Realization& r, double tol = 1e-10);

// Membership probe for the admissible class: minimality, spectrum of Acal
// confined to the closed upper half-plane, and ||psi|| <= 1 on a fixed grid
// in the lower half-plane (41 tangent-spaced real parts at depths 0.1, 1, 10).
struct ClassCheck {
  bool minimal = false;
  bool no_lower_poles = false;
  bool contractive = false;
  int ctrl_rank = 0;
  int obs_rank = 0;
  double min_imag_pole = 0.0;
  double max_grid_norm = 0.0;
};

ClassCheck check_class(const Realization& r);

struct RiccatiSolution {
  Mat X;
  double residual = 0.0;  // relative residual of the quadratic equation
  int newton_iters = 0;
  bool ill_conditioned = false;  // closed-loop spectrum within 1e-8 of the real axis
  Vec closed_loop;               // sigma(Acal - i B B* X)
};

// Residual X B B* X - i (Acal* X - X Acal) + Ccal* Ccal, relative to a norm
// scale of the data.
double riccati_residual(const Realization& r, const Mat& X);

// Positive solution selected by the closed-loop spectrum condition
// sigma(Acal - i B B* X) in the closed upper half-plane.  The stable
// invariant subspace of the Hamiltonian
//   H = [[i Acal, B B*], [-Ccal* Ccal, i Acal*]]
// yields X = U2 U1^{-1}, refined by Newton steps on the quadratic residual.
// Requires a minimal realization of a function contractive on C_-.
RiccatiSolution solve_riccati(const Realization& r);

// Newton iteration from a caller-supplied starting point; used to track the
// solution across perturbations of the realization.
RiccatiSolution newton_riccati(const Realization& r, const Mat& X0,
                               int max_iters = 50);

// Triple recovery from a Riccati solution:
//   A = Acal - i B B* X,  S0 = X^{-1},  theta1 = i X^{-1} Ccal*,  theta2 = B.
AdmissibleTriple triple_from_realization(const Realization& r, const Mat& X);

struct InverseResult {
  Realization reduced;
  RiccatiSolution ric;
  AdmissibleTriple triple;
  std::vector<Mat> C;
  double weyl_agreement = 0.0;  // max mismatch over the fixed sample points
};

// Full pipeline: class gate, minimal reduction, Riccati solve, triple
// recovery, potential, and a Weyl-function round check at 20 fixed points in
// the lower half-plane.  Throws PoleInLowerHalfPlane or NotContractive at the
// gate and ToleranceError if the round check misses tol.
InverseResult inverse_problem(const Realization& r, long k_max,
                              double tol = 1e-6);

// Reruns Newton from randomly perturbed copies of X0 and reports the largest
// pairwise distance between the solutions found (uniqueness probe).
double multistart_spread(const Realization& r, const Mat& X0, int starts,
                         unsigned long long seed);

}  // namespace dirac
