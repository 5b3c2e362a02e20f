#include "dirac/stability.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "dirac/verblunsky.hpp"

namespace dirac {

Realization perturb_in_class(const Realization& r, double delta, Rng& rng) {
  if (!(delta > 0.0)) throw InputError("perturbation size must be positive");
  Realization last;
  bool have_last = false;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Mat GA = rng.cmatrix(r.n, r.n);
    const Mat GB = rng.cmatrix(r.n, r.sig.m2);
    const Mat GC = rng.cmatrix(r.sig.m1, r.n);
    const double total =
        spectral_norm(GA) + spectral_norm(GB) + spectral_norm(GC);
    if (total == 0.0) continue;
    const double f = 0.5 * delta / total;
    Realization p = r;
    p.Acal = r.Acal + f * GA;
    p.B = r.B + f * GB;
    p.Ccal = r.Ccal + f * GC;
    const ClassCheck gate = check_class(p);
    if (gate.minimal && gate.no_lower_poles && gate.contractive) return p;
    last = p;
    have_last = true;
  }
  // The class checks keep failing; note whether the quadratic equation still
  // has a Hermitian solution near the reference data for the last draw.
  std::string hermitian = "unknown";
  if (have_last) {
    try {
      RiccatiSolution probe = solve_riccati(minimal_reduce(last));
      hermitian =
          (probe.X - probe.X.adjoint()).norm() <= 1e-8 * (1.0 + probe.X.norm())
              ? "yes"
              : "no";
    } catch (const Error&) {
      hermitian = "no";
    }
  }
  throw Error("ClassExitUnavoidable",
              "no admissible perturbation in 100 draws (hermitian_solution=" +
                  hermitian + ")");
}

Realization perturb_in_class(const Realization& r, double delta,
                             unsigned long long seed) {
  Rng rng(seed);
  return perturb_in_class(r, delta, rng);
}

RiccatiSolution recover_near(const Realization& r_tilde,
                             const Mat& X_reference) {
  RiccatiSolution sol = newton_riccati(r_tilde, X_reference);
  if (sol.residual > 1e-10)
    throw Error("NewtonDiverged", "tracked solution stuck at residual " +
                                      std::to_string(sol.residual));
  return sol;
}

namespace {

StabilityRow run_cell(const Realization& r, const Mat& X_ref,
                      const std::vector<Mat>& C_ref, long growth_k,
                      double delta, int sample, unsigned long long cell_seed,
                      long k_max) {
  StabilityRow row;
  row.delta = delta;
  row.sample = sample;
  try {
    Rng rng(cell_seed);
    const Realization pert = perturb_in_class(r, delta, rng);
    const RiccatiSolution sol = recover_near(pert, X_ref);
    row.dX = (sol.X - X_ref).norm() / std::max(1.0, X_ref.norm());

    const AdmissibleTriple tri = triple_from_realization(pert, sol.X);
    const std::vector<Mat> C_pert = potential(tri, k_max);
    const int m = r.sig.m();
    const Mat I = Mat::Identity(m, m);
    const long split = growth_k >= 0 ? growth_k : k_max;
    for (long k = 0; k <= k_max; ++k) {
      const double err = spectral_norm(C_ref[k] - C_pert[k]);
      row.dC_sup = std::max(row.dC_sup, err);
      if (k <= split) {
        row.dC_head = std::max(row.dC_head, err);
      } else {
        row.dC_tail = std::max(row.dC_tail, err);
        const double near_identity =
            2.0 * (spectral_norm(C_ref[k] - I) + spectral_norm(C_pert[k] - I));
        row.tail_bound = std::max(row.tail_bound, near_identity);
        if (err > near_identity + 1e-15) row.tail_ok = false;
      }
    }
    row.accepted = true;
  } catch (const Error& e) {
    row.accepted = false;
    row.fail_reason = e.name;
  }
  return row;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

StabilityReport stability_sweep(const Realization& r,
                                const std::vector<double>& deltas,
                                const PerturbationSpec& spec) {
  const ClassCheck gate = check_class(r);
  if (!gate.no_lower_poles)
    throw Error("PoleInLowerHalfPlane", "reference realization has lower poles");
  if (!gate.contractive)
    throw Error("NotContractive", "reference realization is not contractive");
  if (!gate.minimal)
    throw Error("NotMinimal", "stability sweep needs a minimal realization");
  if (spec.samples < 1 || deltas.empty())
    throw InputError("sweep needs at least one delta and one sample");
  for (double d : deltas)
    if (!(d > 0.0)) throw InputError("perturbation sizes must be positive");

  std::vector<double> ds = deltas;
  std::sort(ds.begin(), ds.end());

  StabilityReport rep;
  rep.seed = spec.seed;
  rep.k_max = spec.k_max;
  const RiccatiSolution ref = solve_riccati(r);
  const AdmissibleTriple tri = triple_from_realization(r, ref.X);
  const std::vector<Mat> C_ref = potential(tri, spec.k_max);

  {
    const AsymptoticsReport as = asymptotics_report(tri, spec.k_max);
    rep.r_growth_flag = as.r_growth_k >= 0;
    rep.q_growth_flag = as.q_growth_k >= 0;
    rep.growth_k = -1;
    if (rep.r_growth_flag) rep.growth_k = as.r_growth_k;
    if (rep.q_growth_flag &&
        (rep.growth_k < 0 || as.q_growth_k < rep.growth_k))
      rep.growth_k = as.q_growth_k;
  }

  const size_t cells = ds.size() * static_cast<size_t>(spec.samples);
  std::vector<std::future<StabilityRow>> futs(cells);
  for (size_t di = 0; di < ds.size(); ++di) {
    for (int s = 0; s < spec.samples; ++s) {
      // Direction fixed per sample: the cell stream ignores the delta index,
      // so a shrinking delta rescales the same perturbation.
      const unsigned long long cell_seed = mix_seed(spec.seed, 0x5eedull, s);
      futs[di * spec.samples + s] =
          std::async(std::launch::async, run_cell, std::cref(r),
                     std::cref(ref.X), std::cref(C_ref), rep.growth_k, ds[di],
                     s, cell_seed, spec.k_max);
    }
  }
  rep.rows.reserve(cells);
  for (auto& f : futs) rep.rows.push_back(f.get());

  for (size_t di = 0; di < ds.size(); ++di) {
    std::vector<double> dx, dc;
    StabilitySummary sum;
    sum.delta = ds[di];
    for (int s = 0; s < spec.samples; ++s) {
      const StabilityRow& row = rep.rows[di * spec.samples + s];
      if (!row.accepted) {
        ++sum.rejected;
        continue;
      }
      dx.push_back(row.dX);
      dc.push_back(row.dC_sup);
      sum.max_dX = std::max(sum.max_dX, row.dX);
      sum.max_dC = std::max(sum.max_dC, row.dC_sup);
    }
    sum.median_dX = median_of(dx);
    sum.median_dC = median_of(dc);
    rep.summary.push_back(sum);
  }
  return rep;
}

}  // namespace dirac
