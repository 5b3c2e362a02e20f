#pragma once

#include <string>
#include <vector>

#include "dirac/inverse.hpp"
#include "dirac/sampling.hpp"

namespace dirac {

// Sweep configuration: samples per perturbation size, potential horizon for
// the error sup, and the base seed all cell streams derive from.
struct PerturbationSpec {
  double delta = 1e-6;  // single-cell size; the sweep takes its own list
  int samples = 8;
  long k_max = 200;
  unsigned long long seed = 1;
};

// Additive perturbation of the realization with three independent complex
// Gaussian directions, scaled so the spectral-norm sum equals delta / 2, then
// resampled until the result stays in the admissible class (minimal, no lower
// poles, contractive).  Throws ClassExitUnavoidable after 100 rejections.
Realization perturb_in_class(const Realization& r, double delta,
                             unsigned long long seed);
Realization perturb_in_class(const Realization& r, double delta, Rng& rng);

// Newton iteration on the perturbed quadratic equation started from the
// reference solution; the tracked solution must reach relative residual
// 1e-10 or NewtonDiverged is thrown.
RiccatiSolution recover_near(const Realization& r_tilde, const Mat& X_reference);

struct StabilityRow {
  double delta = 0.0;
  int sample = 0;
  bool accepted = false;
  std::string fail_reason;  // empty when accepted
  double dX = 0.0;          // ||X - X~|| / max(1, ||X||)
  double dC_sup = 0.0;      // sup_k ||C_k - C~_k||, k <= k_max
  double dC_head = 0.0;     // same sup restricted to k <= growth index
  double dC_tail = 0.0;     // and past it
  double tail_bound = 0.0;  // max_k 2 (||C_k - I|| + ||C~_k - I||) past the index
  bool tail_ok = true;      // every tail error below its near-identity bound
};

struct StabilitySummary {
  double delta = 0.0;
  int rejected = 0;
  double median_dX = 0.0, max_dX = 0.0;
  double median_dC = 0.0, max_dC = 0.0;
};

struct StabilityReport {
  std::vector<StabilityRow> rows;  // sorted by (delta, sample)
  std::vector<StabilitySummary> summary;
  unsigned long long seed = 0;
  long k_max = 0;
  bool r_growth_flag = false;  // lambda_min(R_k) reached 1e6 within k_max
  bool q_growth_flag = false;  // lambda_min(Q_k) reached 1e6 within k_max
  long growth_k = -1;          // first crossing; -1 when neither fires
};

// Reference Riccati solve on r, then per cell: perturb, track the solution by
// Newton from the reference X, recover both potentials, and compare.  The
// Gaussian direction of a cell depends on the sample index only, so shrinking
// delta along a fixed sample keeps the perturbation direction fixed.  Cells
// run in parallel; failures become rejected rows, never aborts.  Identical
// inputs give a bit-identical report.
StabilityReport stability_sweep(const Realization& r,
                                const std::vector<double>& deltas,
                                const PerturbationSpec& spec);

}  // namespace dirac
