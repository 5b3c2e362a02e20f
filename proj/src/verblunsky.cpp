#include "dirac/verblunsky.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <deque>
#include <limits>
#include <memory>

namespace dirac {

namespace {

// Hermitian inverse square root; rejects eigenvalues at or below zero.
Mat inv_sqrt_hermitian(const Mat& H, const char* who) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(H));
  if (es.info() != Eigen::Success)
    throw Error("NonConvergence", "Hermitian eigensolve failed");
  const RealVec& lam = es.eigenvalues();
  if (lam.minCoeff() <= 0.0)
    throw Error("NotStrictContraction", std::string(who) + " is not strictly contractive");
  Mat D = Mat::Zero(lam.size(), lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    D(i, i) = 1.0 / std::sqrt(lam[i]);
  return es.eigenvectors() * D * es.eigenvectors().adjoint();
}

Mat psd_clip(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(H));
  Mat D = Mat::Zero(H.rows(), H.cols());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    D(i, i) = std::max(0.0, es.eigenvalues()[i]);
  return es.eigenvectors() * D * es.eigenvectors().adjoint();
}

// Moore-Penrose solve for a Hermitian PSD system, with a relative spectral
// cutoff; keeps the downdate finite when the inner matrix loses rank.
Mat psd_pseudo_solve(const Mat& H, const Mat& B) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(H));
  const RealVec& lam = es.eigenvalues();
  const double cut = std::max(0.0, lam.maxCoeff()) * 1e-13;
  Mat D = Mat::Zero(lam.size(), lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > cut && lam[i] > 0.0) D(i, i) = 1.0 / lam[i];
  return es.eigenvectors() * D * es.eigenvectors().adjoint() * B;
}

}  // namespace

Mat rho_from_potential(const Mat& Ck, const Signature& sig) {
  if (Ck.rows() != sig.m() || Ck.cols() != sig.m())
    throw InputError("potential entry has wrong dimensions");
  const Mat C11 = Ck.topLeftCorner(sig.m1, sig.m1);
  const Mat C12 = Ck.topRightCorner(sig.m1, sig.m2);
  Eigen::FullPivLU<Mat> lu(C11);
  if (!lu.isInvertible())
    throw Error("TopBlockSingular", "top-left block of C_k is singular");
  const Mat rho = lu.solve(C12);
  if (spectral_norm(rho) >= 1.0)
    throw Error("NotStrictContraction", "coefficient has norm >= 1");
  return rho;
}

Mat halmos_reconstruct(const Mat& rho, const Signature& sig) {
  if (rho.rows() != sig.m1 || rho.cols() != sig.m2)
    throw InputError("coefficient has wrong dimensions");
  const Mat D1 = inv_sqrt_hermitian(
      Mat::Identity(sig.m1, sig.m1) - rho * rho.adjoint(), "rho rho*");
  const Mat D2 = inv_sqrt_hermitian(
      Mat::Identity(sig.m2, sig.m2) - rho.adjoint() * rho, "rho* rho");
  const int m = sig.m();
  Mat C(m, m);
  C.topLeftCorner(sig.m1, sig.m1) = D1;
  C.topRightCorner(sig.m1, sig.m2) = D1 * rho;
  C.bottomLeftCorner(sig.m2, sig.m1) = D2 * rho.adjoint();
  C.bottomRightCorner(sig.m2, sig.m2) = D2;
  return hermitize(C);
}

Mat rho_explicit(const AdmissibleTriple& t, long k) {
  if (!is_invertible(t.A + kI * Mat::Identity(t.n, t.n)))
    throw Error("Singular", "-i lies in sigma(A); R_k is undefined");
  FrameCursor cur(t);
  for (long i = 0; i < k; ++i) cur.advance();
  const Mat phi_k = cur.phi();
  cur.advance();
  const Mat diff = phi_k - cur.phi();
  const Mat lead = Mat::Identity(t.sig.m1, t.sig.m1) +
                   diff.topLeftCorner(t.sig.m1, t.sig.m1);
  const Mat cross = diff.topRightCorner(t.sig.m1, t.sig.m2);
  return solve_linear(lead, cross);
}

RQSequences rq_sequences(const AdmissibleTriple& t, long k_max) {
  const Mat I = Mat::Identity(t.n, t.n);
  Eigen::FullPivLU<Mat> ApI(t.A + kI * I);
  Eigen::FullPivLU<Mat> AmI(t.A - kI * I);
  RQSequences seq;
  seq.r_available = ApI.isInvertible();
  seq.q_available = AmI.isInvertible();
  if (!seq.r_available && !seq.q_available)
    throw Error("SpectrumConflict", "sigma(A) contains both i and -i");
  if (seq.r_available) {
    const Mat MR = ApI.solve(t.A - kI * I);
    Mat R = t.S0, N = t.theta2;
    for (long k = 0; k <= k_max; ++k) {
      seq.R.push_back(R);
      const Mat P = ApI.solve(N);
      R = hermitize(R + 2.0 * P * P.adjoint());
      N = MR * N;
    }
  }
  if (seq.q_available) {
    const Mat MQ = AmI.solve(t.A + kI * I);
    Mat Q = t.S0, H = t.theta1;
    for (long k = 0; k <= k_max; ++k) {
      seq.Q.push_back(Q);
      const Mat Pp = AmI.solve(H);
      Q = hermitize(Q + 2.0 * Pp * Pp.adjoint());
      H = MQ * H;
    }
  }
  return seq;
}

Mat f_matrix(const AdmissibleTriple& t) {
  const Mat I = Mat::Identity(t.n, t.n);
  const Mat Am = t.A - kI * I;
  const Mat Ap = t.A + kI * I;
  std::vector<Mat> am_pow(t.n + 1), ap_pow(t.n + 1);
  am_pow[0] = I;
  ap_pow[0] = I;
  for (int i = 1; i <= t.n; ++i) {
    am_pow[i] = am_pow[i - 1] * Am;
    ap_pow[i] = ap_pow[i - 1] * Ap;
  }
  Mat F = Mat::Zero(t.n, t.n);
  for (int l = 1; l <= t.n; ++l) {
    const Mat G = am_pow[t.n - l] * ap_pow[l - 1] * t.theta1;
    F += G * G.adjoint();
  }
  return hermitize(F);
}

namespace {

// Forward tracker of the Q-sequence.  Q_k grows geometrically, so the matrix
// is held unit-normalized with the magnitude in a separate log factor, and the
// rank-m1 update column is held the same way.  Each step only adds a positive
// term, which keeps lambda_min honest for as long as it fits in a double;
// beyond that the last certified value is carried forward, which is still a
// valid lower bound because the increments are positive semidefinite.
class QTracker {
 public:
  explicit QTracker(const AdmissibleTriple& t)
      : AmI_(t.A - kI * Mat::Identity(t.n, t.n)) {
    MQ_ = AmI_.solve(t.A + kI * Mat::Identity(t.n, t.n));
    Qhat_ = hermitize(t.S0);
    lq_ = 0.0;
    normalize_q();
    Hhat_ = t.theta1;
    ls_ = 0.0;
    normalize_h();
  }

  double lmin_Q() {
    const double lm = lambda_min(Qhat_);
    double val;
    if (lq_ < 700.0)
      val = lm * std::exp(lq_);
    else
      val = lm > 0.0 ? std::numeric_limits<double>::infinity() : best_;
    best_ = std::max(best_, val);
    return best_;
  }

  Mat qinv() const {
    if (lq_ >= 700.0) return Mat::Zero(Qhat_.rows(), Qhat_.cols());
    const Mat I = Mat::Identity(Qhat_.rows(), Qhat_.cols());
    return Mat(psd_pseudo_solve(Qhat_, I) * std::exp(-lq_));
  }

  // Scaled update column of the step just taken: P' = e^{ls} Phat.
  const Mat& last_phat() const { return last_phat_; }
  double last_ls() const { return last_ls_; }

  void advance() {
    const Mat Phat = AmI_.solve(Hhat_);
    last_phat_ = Phat;
    last_ls_ = ls_;
    const double u = 2.0 * ls_;
    const double lt = std::max(lq_, u);
    Qhat_ = hermitize(std::exp(lq_ - lt) * Qhat_ +
                      2.0 * std::exp(u - lt) * Phat * Phat.adjoint());
    lq_ = lt;
    normalize_q();
    Hhat_ = MQ_ * Hhat_;
    normalize_h();
  }

 private:
  void normalize_q() {
    const double s = spectral_norm(Qhat_);
    if (s > 0.0) {
      Qhat_ /= s;
      lq_ += std::log(s);
    }
  }
  void normalize_h() {
    const double s = Hhat_.norm();
    if (s > 0.0) {
      Hhat_ /= s;
      ls_ += std::log(s);
    }
  }

  Eigen::FullPivLU<Mat> AmI_;
  Mat MQ_, Qhat_, Hhat_, last_phat_;
  double lq_ = 0.0, ls_ = 0.0, last_ls_ = 0.0;
  double best_ = -std::numeric_limits<double>::infinity();
};

}  // namespace

AsymptoticsReport asymptotics_report(const AdmissibleTriple& t, long k_max,
                                     double rho_tol) {
  if (k_max < 0 || k_max > 1000000)
    throw InputError("k_max out of range");
  AsymptoticsReport rep;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  FrameCursor cur(t);
  const bool q_ok = is_invertible(t.A - kI * Mat::Identity(t.n, t.n));
  rep.q_route_available = q_ok;

  std::unique_ptr<QTracker> qt;
  if (q_ok) qt = std::make_unique<QTracker>(t);

  {
    Eigen::ComplexEigenSolver<Mat> es(t.A, /*computeEigenvectors=*/true);
    if (es.info() == Eigen::Success) {
      Eigen::JacobiSVD<Mat> svd(es.eigenvectors());
      const double smin = svd.singularValues().minCoeff();
      const double smax = svd.singularValues().maxCoeff();
      rep.diagonalizable = smin > 0.0 && smax / smin < 1e6;
    }
  }
  rep.lmin_F = lambda_min(f_matrix(t));

  // Rolling window of the last n scaled Q-updates for the uniform gap
  // min_k lambda_min(Q_{k+n} - Q_k).  The window directions collapse onto
  // the dominant eigendirection as k grows, so collection stops once the
  // window's own conditioning would make its smallest eigenvalue noise;
  // later windows only exceed the minimum already recorded.
  std::deque<std::pair<Mat, double>> window;
  rep.epsilon_gap = q_ok ? std::numeric_limits<double>::infinity() : nan;
  bool gap_seen = false;
  bool gap_alive = true;

  Mat phi_prev = cur.phi();
  rep.rows.reserve(k_max + 1);
  for (long k = 0; k <= k_max; ++k) {
    AsymptoticsRow row;
    row.k = k;
    row.lmin_R = cur.lambda_min_R();
    row.lmin_Q = q_ok ? qt->lmin_Q() : nan;
    if (rep.r_growth_k < 0 && row.lmin_R >= 1e6) rep.r_growth_k = k;
    if (q_ok && rep.q_growth_k < 0 && row.lmin_Q >= 1e6) rep.q_growth_k = k;

    cur.advance();
    const Mat phi_next = cur.phi();
    const int m = t.sig.m();
    const Mat C = hermitize(Mat::Identity(m, m) + phi_prev - phi_next);
    phi_prev = phi_next;
    row.c_err = spectral_norm(C - Mat::Identity(m, m));
    row.rho_norm = spectral_norm(rho_from_potential(C, t.sig));

    if (rep.first_k_small_rho < 0 && row.rho_norm < rho_tol)
      rep.first_k_small_rho = k;
    if (rep.first_k_small_rho >= 0)
      rep.after_ratio = std::max(rep.after_ratio, row.rho_norm / rho_tol);

    if (q_ok) {
      qt->advance();
      window.emplace_back(qt->last_phat(), qt->last_ls());
      if (static_cast<long>(window.size()) > t.n) window.pop_front();
      if (gap_alive && static_cast<long>(window.size()) == t.n) {
        double lsm = window.front().second;
        for (const auto& w : window) lsm = std::max(lsm, w.second);
        if (2.0 * lsm < 650.0) {
          Mat G = Mat::Zero(t.n, t.n);
          for (const auto& w : window) {
            const double f = std::exp(2.0 * (w.second - lsm));
            G += 2.0 * f * w.first * w.first.adjoint();
          }
          const double gmin = lambda_min(G);
          const double gmax = lambda_max(G);
          if (gmin > 0.0 && gmin >= 1e-12 * gmax) {
            rep.epsilon_gap =
                std::min(rep.epsilon_gap, gmin * std::exp(2.0 * lsm));
            gap_seen = true;
          } else {
            gap_alive = false;
          }
        }
      }
    }
    rep.rows.push_back(row);
  }
  if (q_ok && !gap_seen) rep.epsilon_gap = nan;

  rep.kappa_R = psd_clip(inverse(cur.R()));
  rep.kappa_Q = q_ok ? psd_clip(qt->qinv()) : Mat();
  return rep;
}

}  // namespace dirac
