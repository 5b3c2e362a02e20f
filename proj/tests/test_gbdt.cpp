#include <doctest.h>

#include <cmath>
#include <limits>

#include "dirac/gbdt.hpp"
#include "dirac/sampling.hpp"
#include "fixtures.hpp"

using namespace dirac;

namespace {

double identity_residual(const Mat& A, const Mat& S, const Mat& Pi,
                         const Signature& sig) {
  const Mat j = signature_matrix(sig);
  return (A * S - S * A.adjoint() - kI * Pi * j * Pi.adjoint()).norm();
}

}  // namespace

TEST_SUITE("gbdt") {

TEST_CASE("make_triple accepts the fixtures and reports a tiny residual") {
  const AdmissibleTriple t = fixtures::t1();
  CHECK(t.n == 1);
  CHECK(t.sig.m1 == 1);
  CHECK(t.sig.m2 == 1);
  CHECK(t.identity_residual < 1e-14);
  CHECK(fixtures::t0().identity_residual < 1e-14);
  CHECK(fixtures::both_conflict().identity_residual < 1e-14);
}

TEST_CASE("make_triple rejects bad data with named errors") {
  const Mat i1 = fixtures::scalar(Complex(0, 1));
  const Mat one = fixtures::scalar(1.0);
  CHECK_THROWS_WITH_AS(make_triple(i1, fixtures::scalar(-1.0), one, one),
                       doctest::Contains("S0NotPositive"), Error);
  CHECK_THROWS_WITH_AS(make_triple(fixtures::scalar(0.0), one, one, one),
                       doctest::Contains("SingularA"), Error);
  CHECK_THROWS_WITH_AS(make_triple(i1, one, fixtures::scalar(2.0), one),
                       doctest::Contains("IdentityViolated"), Error);
  CHECK_THROWS_AS(make_triple(Mat::Identity(2, 2), one, one, one), InputError);
  Mat bad = one;
  bad(0, 0) = Complex(std::numeric_limits<double>::quiet_NaN(), 0);
  CHECK_THROWS_AS(make_triple(i1, one, bad, one), InputError);
}

TEST_CASE("raw recursion reproduces the hand-computed fixture states") {
  const AdmissibleTriple t = fixtures::t1();
  RawState s = initial_state(t);
  CHECK(s.k == 0);
  step_in_place(t, s);
  CHECK(s.k == 1);
  CHECK(std::abs(s.Pi(0, 0) - 4.0) < 1e-14);
  CHECK(std::abs(s.Pi(0, 1)) < 1e-14);
  CHECK(std::abs(s.S(0, 0) - 8.0) < 1e-13);
  step_in_place(t, s);
  CHECK(std::abs(s.Pi(0, 0) - 8.0) < 1e-13);
  CHECK(std::abs(s.S(0, 0) - 32.0) < 1e-12);

  const AdmissibleTriple z = fixtures::t0();
  RawState s0 = initial_state(z);
  step_in_place(z, s0);
  CHECK(std::abs(s0.Pi(0, 0) - 2.0 * std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(s0.S(0, 0) - 4.0) < 1e-13);
}

TEST_CASE("raw recursion transports the matrix identity across 200 steps") {
  const AdmissibleTriple t = fixtures::t1();
  RawState s = initial_state(t);
  for (int k = 0; k < 200; ++k) {
    step_in_place(t, s);
    const double scale =
        spectral_norm(t.A) * s.S.norm() + s.Pi.squaredNorm() + 1.0;
    CHECK(identity_residual(t.A, s.S, s.Pi, t.sig) <= 1e-10 * scale);
  }
}

TEST_CASE("raw recursion overflow raises IdentityDrift") {
  const double big = 1e150;
  const AdmissibleTriple t = make_triple(
      fixtures::scalar(Complex(0, 1)), fixtures::scalar(1.0),
      fixtures::scalar(big), fixtures::scalar(std::sqrt(big * big - 2.0)));
  RawState s = initial_state(t);
  CHECK_THROWS_WITH_AS(
      [&] {
        for (int k = 0; k < 5; ++k) step_in_place(t, s);
      }(),
      doctest::Contains("IdentityDrift"), Error);
}

TEST_CASE("frame cursor matches the raw recursion") {
  const AdmissibleTriple t = fixtures::t1();
  FrameCursor cur(t);
  CHECK(std::abs(cur.R()(0, 0) - 1.0) < 1e-15);
  Mat phi0 = cur.phi();
  CHECK(std::abs(phi0(0, 0) - 4.0) < 1e-13);
  CHECK(std::abs(phi0(0, 1) - 2.0 * std::sqrt(2.0)) < 1e-13);
  CHECK(std::abs(phi0(1, 1) - 2.0) < 1e-13);
  cur.advance();
  CHECK(std::abs(cur.R()(0, 0) - 2.0) < 1e-14);
  CHECK(cur.N().norm() < 1e-14);

  Rng rng(314);
  const AdmissibleTriple r = random_triple(3, 2, 1, rng);
  FrameCursor fc(r);
  RawState rs = initial_state(r);
  // The raw route loses roughly eps * cond(S_k) of relative accuracy, so the
  // comparison carries that scale and stops once S_k is numerically singular.
  int compared = 0;
  for (int k = 0; k < 20; ++k) {
    const double cond = lambda_max(rs.S) / lambda_min(rs.S);
    if (!(cond > 0.0) || cond > 1e12) break;
    const Mat from_frame = fc.phi();
    const Mat from_raw = rs.Pi.adjoint() * solve_linear(rs.S, rs.Pi);
    CHECK(fixtures::rel_err(from_frame, from_raw) < 1e-15 * cond + 1e-13);
    ++compared;
    fc.advance();
    step_in_place(r, rs);
  }
  CHECK(compared >= 8);
}

TEST_CASE("frame cursor needs -i outside the spectrum") {
  CHECK_THROWS_WITH_AS(FrameCursor{fixtures::both_conflict()},
                       doctest::Contains("SpectrumConflict"), Error);
}

TEST_CASE("conjugated identity holds along a long frame run") {
  Rng rng(2718);
  const AdmissibleTriple t = random_triple(4, 2, 2, rng);
  const Mat K = t.theta1 * t.theta1.adjoint();
  FrameCursor cur(t);
  for (int k = 0; k < 200; ++k) cur.advance();
  const Mat R = cur.R();
  const Mat N = cur.N();
  const Mat lhs = t.A * R - R * t.A.adjoint();
  const Mat rhs = kI * (K - N * N.adjoint());
  const double scale = spectral_norm(t.A) * R.norm() + K.norm() + 1.0;
  CHECK((lhs - rhs).norm() <= 1e-10 * scale);
}

TEST_CASE("potential reproduces the fixture sequence") {
  const std::vector<Mat> C = potential(fixtures::t1(), 10);
  REQUIRE(C.size() == 11);
  CHECK((C[0] - fixtures::c0_t1()).cwiseAbs().maxCoeff() < 1e-12);
  for (int k = 1; k <= 10; ++k)
    CHECK((C[k] - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  const std::vector<Mat> C0 = potential(fixtures::t0(), 6);
  for (const Mat& Ck : C0)
    CHECK((Ck - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("potential routes agree and the fallback route engages") {
  Rng rng(99);
  const AdmissibleTriple t = random_triple(3, 1, 2, rng);
  const std::vector<Mat> a = potential(t, 7);
  const std::vector<Mat> b = potential_raw(t, 7);
  for (int k = 0; k <= 7; ++k) CHECK(fixtures::rel_err(a[k], b[k]) < 1e-7);

  const AdmissibleTriple mixed = fixtures::both_conflict();
  const std::vector<Mat> cm = potential(mixed, 8);
  const Mat j = signature_matrix(mixed.sig);
  for (const Mat& Ck : cm) {
    CHECK(lambda_min(Ck) > 0.0);
    CHECK((Ck * j * Ck - j).norm() < 1e-9 * std::max(1.0, Ck.squaredNorm()));
  }
}

TEST_CASE("potential horizon is capped") {
  CHECK_THROWS_AS(potential(fixtures::t1(), 2000000), InputError);
  CHECK_THROWS_AS(potential(fixtures::t1(), -1), InputError);
}

TEST_CASE("potential entries stay positive, j-unitary and above j") {
  Rng rng(4242);
  const AdmissibleTriple t = random_triple(4, 2, 2, rng);
  const Mat j = signature_matrix(t.sig);
  const std::vector<Mat> C = potential(t, 60);
  for (const Mat& Ck : C) {
    CHECK(lambda_min(Ck) > 0.0);
    CHECK((Ck * j * Ck - j).norm() <= 1e-9 * std::max(1.0, Ck.squaredNorm()));
    CHECK(lambda_min(Ck - j) > -1e-9);
  }
}

TEST_CASE("transfer matrix matches the hand computation at the fixture") {
  const AdmissibleTriple t = fixtures::t1();
  const Mat w0 = transfer(t, 0, Complex(-1, 0));
  Mat want(2, 2);
  const double s = std::sqrt(2.0);
  want << Complex(-1, -2), Complex(-s, -s), Complex(s, s), Complex(2, 1);
  CHECK((w0 - want).cwiseAbs().maxCoeff() < 1e-12);

  const Mat w1 = transfer(t, 1, Complex(-1, 0));
  CHECK(std::abs(w1(0, 0) - Complex(0, -1)) < 1e-12);
  CHECK(std::abs(w1(1, 1) - 1.0) < 1e-12);
  CHECK(std::abs(w1(0, 1)) < 1e-12);
  CHECK(std::abs(w1(1, 0)) < 1e-12);

  CHECK_THROWS_WITH_AS(transfer(t, 0, Complex(0, 1)),
                       doctest::Contains("Singular"), Error);
}

TEST_CASE("transfer matrices are j-unitary on the real line") {
  const Mat j1 = signature_matrix(fixtures::t1().sig);
  const Mat w = transfer(fixtures::t1(), 0, Complex(-1, 0));
  CHECK((w.adjoint() * j1 * w - j1).norm() < 1e-12);

  Rng rng(777);
  const AdmissibleTriple t = random_triple(3, 2, 2, rng);
  const Mat j = signature_matrix(t.sig);
  for (long k : {0L, 3L, 12L}) {
    const Mat wk = transfer(t, k, Complex(0.7, 0.0));
    const double scale = std::max(1.0, wk.squaredNorm());
    CHECK((wk.adjoint() * j * wk - j).norm() <= 1e-9 * scale);
  }
}

TEST_CASE("fundamental solution fixture value and closed forms") {
  const AdmissibleTriple t = fixtures::t1();
  const Complex z(0, -0.5);
  Mat want(2, 2);
  const double s = std::sqrt(2.0);
  want << 2.5, s, -s, -0.5;
  CHECK((fundamental_explicit(t, 1, z) - want).cwiseAbs().maxCoeff() < 1e-12);
  const std::vector<Mat> C = potential(t, 1);
  CHECK((fundamental_product(C, t.sig, 1, z) - want).cwiseAbs().maxCoeff() <
        1e-12);

  const AdmissibleTriple z0 = fixtures::t0();
  const Complex zz(0.3, -0.2);
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = std::pow(Complex(1, 0) + kI * zz, 5);
  diag(1, 1) = std::pow(Complex(1, 0) - kI * zz, 5);
  CHECK(fixtures::rel_err(fundamental_explicit(z0, 5, zz), diag) < 1e-12);

  CHECK((fundamental_explicit(t, 7, Complex(0, 0)) - Mat::Identity(2, 2))
            .norm() < 1e-15);
}

TEST_CASE("product and explicit fundamental solutions agree") {
  Rng rng(1618);
  const AdmissibleTriple t = random_triple(3, 1, 2, rng);
  const std::vector<Mat> C = potential(t, 50);
  for (int trial = 0; trial < 6; ++trial) {
    const Complex z(rng.uniform() * 4.0 - 2.0, rng.uniform() * 4.0 - 2.0);
    if (std::abs(z) < 0.1) continue;
    const Mat a = fundamental_explicit(t, 50, z);
    const Mat b = fundamental_product(C, t.sig, 50, z);
    CHECK((a - b).norm() <= 1e-8 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("dual data: swapped signature, conjugated potential, reflected z") {
  const AdmissibleTriple t = fixtures::t1();
  const std::vector<Mat> C = potential(t, 20);
  const Signature sd = dual_signature(t.sig);
  CHECK(sd.m1 == t.sig.m2);
  CHECK(sd.m2 == t.sig.m1);
  const std::vector<Mat> Cd = dual_potential(C, t.sig);
  CHECK((Cd[0] - fixtures::c0_t1()).cwiseAbs().maxCoeff() < 1e-13);
  const std::vector<Mat> back = dual_potential(Cd, sd);
  for (int k = 0; k <= 20; ++k) CHECK((back[k] - C[k]).norm() < 1e-14);

  Rng rng(55);
  const AdmissibleTriple r = random_triple(3, 2, 1, rng);
  const std::vector<Mat> Cr = potential(r, 20);
  const std::vector<Mat> Crd = dual_potential(Cr, r.sig);
  const Mat J = swap_matrix(r.sig);
  for (const Complex z : {Complex(0.4, 0.3), Complex(-1.1, -0.6)}) {
    const Mat Wd = fundamental_product(Crd, dual_signature(r.sig), 20, z);
    const Mat W = fundamental_product(Cr, r.sig, 20, -z);
    CHECK(fixtures::rel_err(Wd, J * W * J.adjoint()) < 1e-10);
  }
}

}  // TEST_SUITE
