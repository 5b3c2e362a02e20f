#include "dirac/inverse.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dirac/sampling.hpp"
#include "dirac/weyl.hpp"

namespace dirac {

namespace {

Mat controllability_matrix(const Realization& r) {
  Mat K(r.n, static_cast<Eigen::Index>(r.n) * r.sig.m2);
  Mat col = r.B;
  for (int i = 0; i < r.n; ++i) {
    K.middleCols(static_cast<Eigen::Index>(i) * r.sig.m2, r.sig.m2) = col;
    col = r.Acal * col;
  }
  return K;
}

Mat observability_matrix(const Realization& r) {
  Mat O(static_cast<Eigen::Index>(r.n) * r.sig.m1, r.n);
  Mat row = r.Ccal;
  for (int i = 0; i < r.n; ++i) {
    O.middleRows(static_cast<Eigen::Index>(i) * r.sig.m1, r.sig.m1) = row;
    row = row * r.Acal;
  }
  return O;
}

int rank_of(const Mat& M, double tol) {
  Eigen::JacobiSVD<Mat> svd(M);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol * s[0]) ++rank;
  return rank;
}

// Orthonormal basis of the column space, via SVD with relative cutoff.
Mat range_basis(const Mat& M, double tol) {
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[0] > 0.0 && s[i] > tol * s[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

Realization make_realization(const Mat& Acal, const Mat& B, const Mat& Ccal) {
  Realization r;
  r.n = static_cast<int>(Acal.rows());
  if (Acal.cols() != r.n) throw InputError("Acal must be square");
  if (B.rows() != r.n || Ccal.cols() != r.n)
    throw InputError("B and Ccal must match the state dimension");
  r.sig = Signature{static_cast<int>(Ccal.rows()), static_cast<int>(B.cols())};
  if (r.sig.m1 < 1 || r.sig.m2 < 1)
    throw InputError("realization must have nonempty input and output spaces");
  if (!all_finite(Acal) || !all_finite(B) || !all_finite(Ccal))
    throw InputError("realization contains non-finite entries");
  r.Acal = Acal;
  r.B = B;
  r.Ccal = Ccal;
  return r;
}

Realization realization_from_triple(const AdmissibleTriple& t) {
  const Mat S0inv = inverse(t.S0);
  Realization r;
  r.n = t.n;
  r.sig = t.sig;
  r.Acal = t.A + kI * t.theta2 * t.theta2.adjoint() * S0inv;
  r.B = t.theta2;
  r.Ccal = kI * t.theta1.adjoint() * S0inv;
  return r;
}

Mat eval_psi(const Realization& r, Complex z) {
  const Mat M = z * Mat::Identity(r.n, r.n) - r.Acal;
  return r.Ccal * solve_linear(M, r.B);
}

int controllability_rank(const Realization& r, double tol) {
  return rank_of(controllability_matrix(r), tol);
}

int observability_rank(const Realization& r, double tol) {
  return rank_of(observability_matrix(r), tol);
}

Realization minimal_reduce(const Realization& r, double tol) {
  // Compress onto the reachable subspace, then onto the observable one.
  const Mat U = range_basis(controllability_matrix(r), tol);
  Realization c;
  c.n = static_cast<int>(U.cols());
  c.sig = r.sig;
  c.Acal = U.adjoint() * r.Acal * U;
  c.B = U.adjoint() * r.B;
  c.Ccal = r.Ccal * U;

  const Mat V = range_basis(observability_matrix(c).adjoint(), tol);
  Realization o;
  o.n = static_cast<int>(V.cols());
  o.sig = r.sig;
  o.Acal = V.adjoint() * c.Acal * V;
  o.B = V.adjoint() * c.B;
  o.Ccal = c.Ccal * V;
  return o;
}

ClassCheck check_class(const Realization& r) {
  ClassCheck out;
  out.ctrl_rank = controllability_rank(r);
  out.obs_rank = observability_rank(r);
  out.minimal = (out.ctrl_rank == r.n) && (out.obs_rank == r.n);

  const Vec ev = eigvals(r.Acal);
  out.min_imag_pole = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (i == 0 || ev[i].imag() < out.min_imag_pole)
      out.min_imag_pole = ev[i].imag();
  if (r.n == 0) out.min_imag_pole = 0.0;
  out.no_lower_poles = out.min_imag_pole >= -1e-10;

  out.max_grid_norm = 0.0;
  const double depths[3] = {0.1, 1.0, 10.0};
  for (double y : depths) {
    for (int i = 0; i < 41; ++i) {
      const double a = (i + 0.5) / 41.0;
      const double x = std::tan(M_PI * (a - 0.5));
      const Complex z(x, -y);
      double nrm = 0.0;
      try {
        nrm = spectral_norm(eval_psi(r, z));
      } catch (const Error&) {
        nrm = std::numeric_limits<double>::infinity();
      }
      out.max_grid_norm = std::max(out.max_grid_norm, nrm);
    }
  }
  out.contractive = out.max_grid_norm <= 1.0 + 1e-9;
  return out;
}

double riccati_residual(const Realization& r, const Mat& X) {
  const Mat BB = r.B * r.B.adjoint();
  const Mat res = X * BB * X - kI * (r.Acal.adjoint() * X - X * r.Acal) +
                  r.Ccal.adjoint() * r.Ccal;
  const double scale = X.norm() * X.norm() * BB.norm() +
                       r.Acal.norm() * X.norm() + r.Ccal.squaredNorm() + 1.0;
  return res.norm() / scale;
}

namespace {

// One Newton sweep on the quadratic residual.  Solves the Sylvester equation
// Acl* D + D (-Acl) = -i res with Acl = Acal - i B B* X and keeps D Hermitian.
struct NewtonOutcome {
  Mat X;
  double residual;
  int iters;
};

NewtonOutcome newton_refine(const Realization& r, Mat X, int max_iters) {
  const Mat BB = r.B * r.B.adjoint();
  double cur = riccati_residual(r, X);
  double best = cur;
  Mat bestX = X;
  int used = 0;
  for (int it = 0; it < max_iters; ++it) {
    if (cur <= 1e-14) break;
    const Mat res = X * BB * X - kI * (r.Acal.adjoint() * X - X * r.Acal) +
                    r.Ccal.adjoint() * r.Ccal;
    const Mat Acl = r.Acal - kI * BB * X;
    Mat D;
    try {
      D = sylvester(Acl.adjoint(), -Acl, -kI * res);
    } catch (const Error&) {
      break;
    }
    D = hermitize(D);
    if (!all_finite(D)) break;
    // From a stabilizing iterate (closed-loop spectrum strictly in the upper
    // half-plane) the full Newton step stays stabilizing and converges to the
    // stabilizing solution, though the residual may rise transiently; keep
    // full steps there.  Outside that cone, fall back to a backtracked step,
    // which always decreases the residual because the residual is exactly
    // quadratic along the Newton direction.
    double min_im = std::numeric_limits<double>::infinity();
    const Vec ev = eigvals(Acl);
    for (Eigen::Index e = 0; e < ev.size(); ++e)
      min_im = std::min(min_im, ev[e].imag());
    bool stepped = false;
    if (min_im > 0.0) {
      const Mat Xtry = hermitize(X + D);
      const double now = riccati_residual(r, Xtry);
      if (std::isfinite(now)) {
        X = Xtry;
        cur = now;
        stepped = true;
      }
    }
    if (!stepped) {
      double t = 1.0;
      for (int h = 0; h < 45; ++h) {
        const Mat Xtry = hermitize(X + t * D);
        const double now = riccati_residual(r, Xtry);
        if (std::isfinite(now) &&
            (now <= 1e-14 || now < cur * (1.0 - 0.25 * t))) {
          X = Xtry;
          cur = now;
          stepped = true;
          break;
        }
        t *= 0.5;
      }
    }
    ++used;
    if (!stepped) break;
    if (cur < best) {
      best = cur;
      bestX = X;
    }
  }
  return NewtonOutcome{bestX, best, used};
}

void classify_closed_loop(const Realization& r, RiccatiSolution& sol) {
  const Mat Acl = r.Acal - kI * (r.B * r.B.adjoint()) * sol.X;
  sol.closed_loop = eigvals(Acl);
  double min_imag = 0.0;
  for (Eigen::Index i = 0; i < sol.closed_loop.size(); ++i) {
    const double im = sol.closed_loop[i].imag();
    if (i == 0 || im < min_imag) min_imag = im;
  }
  if (r.n > 0 && min_imag < -1e-8)
    throw Error("NoStabilizingSolution",
                "closed-loop spectrum dips below the real axis");
  sol.ill_conditioned = false;
  for (Eigen::Index i = 0; i < sol.closed_loop.size(); ++i)
    if (std::abs(sol.closed_loop[i].imag()) < 1e-8) sol.ill_conditioned = true;
}

}  // namespace

RiccatiSolution solve_riccati(const Realization& r) {
  RiccatiSolution sol;
  if (r.n == 0) {
    sol.X = Mat(0, 0);
    sol.closed_loop = Vec(0);
    return sol;
  }
  const int n = r.n;
  const Mat BB = r.B * r.B.adjoint();
  Mat H(2 * n, 2 * n);
  H.topLeftCorner(n, n) = kI * r.Acal;
  H.topRightCorner(n, n) = BB;
  H.bottomLeftCorner(n, n) = -r.Ccal.adjoint() * r.Ccal;
  H.bottomRightCorner(n, n) = kI * r.Acal.adjoint();

  Eigen::ComplexEigenSolver<Mat> es(H, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success)
    throw Error("NonConvergence", "Hamiltonian eigensolve failed");
  std::vector<int> idx(2 * n);
  std::iota(idx.begin(), idx.end(), 0);
  const Vec& ev = es.eigenvalues();
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return ev[a].real() < ev[b].real();
  });

  Mat U1(n, n), U2(n, n);
  for (int c = 0; c < n; ++c) {
    U1.col(c) = es.eigenvectors().col(idx[c]).head(n);
    U2.col(c) = es.eigenvectors().col(idx[c]).tail(n);
  }
  Eigen::FullPivLU<Mat> lu(U1);
  if (!lu.isInvertible())
    throw Error("NoStabilizingSolution",
                "stable Hamiltonian subspace has no graph representation");
  Mat X = hermitize(U2 * lu.inverse());

  const NewtonOutcome ref = newton_refine(r, X, 20);
  sol.X = ref.X;
  sol.residual = ref.residual;
  sol.newton_iters = ref.iters;
  if (sol.residual > 1e-8)
    throw Error("NoStabilizingSolution", "Riccati residual stuck at " +
                                             std::to_string(sol.residual));
  Eigen::LLT<Mat> llt(hermitize(sol.X));
  if (llt.info() != Eigen::Success)
    throw Error("NoStabilizingSolution", "selected solution is not positive");
  classify_closed_loop(r, sol);
  return sol;
}

RiccatiSolution newton_riccati(const Realization& r, const Mat& X0,
                               int max_iters) {
  if (X0.rows() != r.n || X0.cols() != r.n)
    throw InputError("starting point has wrong dimensions");
  const NewtonOutcome ref = newton_refine(r, hermitize(X0), max_iters);
  if (ref.residual > 1e-6)
    throw Error("NewtonDiverged", "Riccati Newton stalled at residual " +
                                      std::to_string(ref.residual));
  RiccatiSolution sol;
  sol.X = ref.X;
  sol.residual = ref.residual;
  sol.newton_iters = ref.iters;
  classify_closed_loop(r, sol);
  return sol;
}

AdmissibleTriple triple_from_realization(const Realization& r, const Mat& X) {
  Eigen::LLT<Mat> llt(hermitize(X));
  if (llt.info() != Eigen::Success)
    throw Error("AdmissibilityViolated", "X must be positive definite");
  const Mat Xinv = hermitize(llt.solve(Mat::Identity(r.n, r.n)));
  const Mat A = r.Acal - kI * r.B * r.B.adjoint() * X;
  const Mat theta1 = kI * Xinv * r.Ccal.adjoint();
  try {
    return make_triple(A, Xinv, theta1, r.B);
  } catch (const Error& e) {
    throw Error("AdmissibilityViolated",
                std::string("recovered triple rejected: ") + e.what());
  }
}

namespace {

// Fixed probe points in the lower half-plane: tangent-spaced real parts with
// depths cycling over four decades.
std::vector<Complex> sample_points() {
  std::vector<Complex> pts;
  for (int s = 0; s < 20; ++s) {
    const double a = (s + 0.5) / 20.0;
    const double x = std::tan(M_PI * (a - 0.5));
    const double y = std::pow(10.0, -1.5 + 3.0 * ((s * 7) % 20) / 19.0);
    pts.emplace_back(x, -y);
  }
  return pts;
}

}  // namespace

InverseResult inverse_problem(const Realization& r, long k_max, double tol) {
  const ClassCheck gate = check_class(r);
  if (!gate.no_lower_poles)
    throw Error("PoleInLowerHalfPlane",
                "sigma(Acal) reaches " + std::to_string(gate.min_imag_pole) +
                    " below the real axis");
  if (!gate.contractive)
    throw Error("NotContractive", "||psi|| = " +
                                      std::to_string(gate.max_grid_norm) +
                                      " on the lower half-plane grid");
  InverseResult out;
  out.reduced = minimal_reduce(r);
  out.ric = solve_riccati(out.reduced);
  out.triple = triple_from_realization(out.reduced, out.ric.X);
  out.C = potential(out.triple, k_max);

  const WeylEvaluator ev(out.triple);
  out.weyl_agreement = 0.0;
  for (const Complex& z : sample_points()) {
    const Mat psi_in = eval_psi(r, z);
    const Mat psi_rec = ev.eval(-1.0 / z);
    const double diff =
        spectral_norm(psi_in - psi_rec) / std::max(1.0, spectral_norm(psi_in));
    out.weyl_agreement = std::max(out.weyl_agreement, diff);
  }
  if (out.weyl_agreement > tol)
    throw ToleranceError("recovered Weyl function misses the input by " +
                         std::to_string(out.weyl_agreement));
  return out;
}

double multistart_spread(const Realization& r, const Mat& X0, int starts,
                         unsigned long long seed) {
  std::vector<Mat> sols;
  Rng rng(seed);
  const double scale = std::max(1.0, X0.norm());
  for (int s = 0; s < starts; ++s) {
    const Mat G = hermitize(rng.cmatrix(r.n, r.n));
    const Mat start = hermitize(X0 + 1e-3 * scale * G);
    sols.push_back(newton_riccati(r, start).X);
  }
  double spread = 0.0;
  for (size_t a = 0; a < sols.size(); ++a)
    for (size_t b = a + 1; b < sols.size(); ++b)
      spread = std::max(spread, (sols[a] - sols[b]).norm() / scale);
  return spread;
}

}  // namespace dirac
