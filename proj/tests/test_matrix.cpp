#include <doctest.h>

#include <cmath>
#include <limits>

#include "dirac/matrix.hpp"
#include "fixtures.hpp"

using namespace dirac;

TEST_SUITE("matrix") {

TEST_CASE("cholesky factors a positive definite matrix") {
  const Mat H = fixtures::c0_t1();
  const Mat L = cholesky(H);
  CHECK(std::abs(L(0, 1)) == 0.0);
  CHECK(std::abs(L(0, 0) - std::sqrt(3.0)) < 1e-14);
  CHECK((L * L.adjoint() - H).norm() < 1e-13);
}

TEST_CASE("cholesky rejects indefinite and non-Hermitian input") {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = -1.0;
  CHECK_THROWS_WITH_AS(cholesky(D), doctest::Contains("NotPositiveDefinite"),
                       Error);
  Mat N = Mat::Zero(2, 2);
  N(0, 0) = 1.0;
  N(0, 1) = 1.0;
  N(1, 1) = 1.0;
  CHECK_THROWS_WITH_AS(cholesky(N), doctest::Contains("NotHermitian"), Error);
}

TEST_CASE("solve and inverse round-trip, singular input is rejected") {
  Mat A(2, 2);
  A << Complex(2, 1), Complex(0, -1), Complex(1, 0), Complex(3, -2);
  const Mat X = solve_linear(A, Mat::Identity(2, 2));
  CHECK((A * X - Mat::Identity(2, 2)).norm() < 1e-14);
  CHECK((inverse(A) - X).norm() < 1e-14);
  CHECK(is_invertible(A));

  Mat S = Mat::Zero(2, 2);
  S(0, 0) = 1.0;
  CHECK(!is_invertible(S));
  CHECK_THROWS_WITH_AS(inverse(S), doctest::Contains("Singular"), Error);
  CHECK_THROWS_WITH_AS(solve_linear(S, Mat::Identity(2, 2)),
                       doctest::Contains("Singular"), Error);
}

TEST_CASE("eigvals of the rotation generator are plus and minus i") {
  Mat A(2, 2);
  A << 0.0, 1.0, -1.0, 0.0;
  Vec ev = eigvals(A);
  REQUIRE(ev.size() == 2);
  const double lo = std::min(ev(0).imag(), ev(1).imag());
  const double hi = std::max(ev(0).imag(), ev(1).imag());
  CHECK(std::abs(lo + 1.0) < 1e-14);
  CHECK(std::abs(hi - 1.0) < 1e-14);
  CHECK(std::abs(ev(0).real()) < 1e-14);
}

TEST_CASE("spectral norm matches closed forms") {
  Mat D = Mat::Zero(2, 2);
  D(0, 0) = 3.0;
  D(1, 1) = Complex(0, -4);
  CHECK(std::abs(spectral_norm(D) - 4.0) < 1e-10);

  Mat col(2, 1);
  col << 2.0, std::sqrt(2.0);
  CHECK(std::abs(spectral_norm(col) - std::sqrt(6.0)) < 1e-10);
  CHECK(spectral_norm(Mat::Zero(3, 3)) == 0.0);
}

TEST_CASE("hermitian eigenvalue extremes") {
  const Mat H = fixtures::c0_t1();
  const double s = 2.0 * std::sqrt(2.0);
  CHECK(std::abs(lambda_min(H) - (3.0 - s)) < 1e-13);
  CHECK(std::abs(lambda_max(H) - (3.0 + s)) < 1e-13);
}

TEST_CASE("all_finite flags injected non-finite entries") {
  Mat M = Mat::Identity(2, 2);
  CHECK(all_finite(M));
  M(0, 1) = Complex(std::numeric_limits<double>::infinity(), 0.0);
  CHECK(!all_finite(M));
  M(0, 1) = Complex(0.0, std::numeric_limits<double>::quiet_NaN());
  CHECK(!all_finite(M));
}

TEST_CASE("sylvester solves the linear matrix equation") {
  Mat A = Mat::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  Mat B = fixtures::scalar(3.0);
  Mat C(2, 1);
  C << 8.0, 10.0;
  const Mat X = sylvester(A, B, C);
  CHECK((A * X + X * B - C).norm() < 1e-13);
  CHECK(std::abs(X(0, 0) - 2.0) < 1e-13);
  CHECK(std::abs(X(1, 0) - 2.0) < 1e-13);

  const Mat Xc = sylvester(fixtures::scalar(Complex(0, 1)),
                           fixtures::scalar(Complex(0, 1)),
                           fixtures::scalar(Complex(0, 2)));
  CHECK(std::abs(Xc(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("signature and swap matrices") {
  const Signature sig{1, 2};
  const Mat j = signature_matrix(sig);
  CHECK(j(0, 0) == Complex(1, 0));
  CHECK(j(1, 1) == Complex(-1, 0));
  CHECK(j(2, 2) == Complex(-1, 0));
  const Mat J = swap_matrix(sig);
  CHECK((J * J.adjoint() - Mat::Identity(3, 3)).norm() < 1e-15);
  const Signature dual{2, 1};
  CHECK((J * j * J.adjoint() + signature_matrix(dual)).norm() < 1e-15);
}

}  // TEST_SUITE
