#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qsnr/errors.hpp"
#include "qsnr/linalg.hpp"
#include "qsnr/rng.hpp"

using namespace qsnr;
using linalg::Matrix;
using cplx = std::complex<double>;

namespace {

Matrix<double> random_real(std::size_t r, std::size_t c, std::uint64_t seed) {
  Matrix<double> A(r, c);
  rng::Stream s(seed);
  for (std::size_t i = 0; i < A.data.size(); ++i) A.data[i] = s.normal_pair(i).first;
  return A;
}

Matrix<cplx> random_complex(std::size_t r, std::size_t c, std::uint64_t seed) {
  Matrix<cplx> A(r, c);
  rng::Stream s(seed);
  for (std::size_t i = 0; i < A.data.size(); ++i) {
    const auto [re, im] = s.normal_pair(i);
    A.data[i] = cplx(re, im);
  }
  return A;
}

}  // namespace

TEST_CASE("adjoint is the conjugate transpose and an involution") {
  const auto A = random_complex(7, 5, 11);
  const auto B = linalg::adjoint(A);
  REQUIRE(B.rows == 5);
  REQUIRE(B.cols == 7);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) CHECK(B(j, i) == std::conj(A(i, j)));

  const auto C = linalg::adjoint(B);
  REQUIRE(C.rows == A.rows);
  CHECK(C.data == A.data);

  // real adjoint is the plain transpose
  const auto R = random_real(4, 6, 3);
  const auto Rt = linalg::adjoint(R);
  for (std::size_t i = 0; i < R.rows; ++i)
    for (std::size_t j = 0; j < R.cols; ++j) CHECK(Rt(j, i) == R(i, j));
}

TEST_CASE("matvec matches a hand-rolled triple loop") {
  const auto A = random_real(9, 13, 21);
  std::vector<double> x(13);
  rng::Stream s(22);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = s.normal_pair(j).second;

  std::vector<double> want(9, 0.0);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 13; ++j) want[i] += A(i, j) * x[j];

  std::vector<double> got;
  linalg::matvec_serial(A, x, got);
  REQUIRE(got.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));

  // adjoint product equals the explicit inner product against columns
  const auto At = linalg::adjoint(A);
  std::vector<double> y(9);
  for (std::size_t i = 0; i < 9; ++i) y[i] = s.normal_pair(100 + i).first;
  std::vector<double> aty;
  linalg::matvec_serial(At, y, aty);
  for (std::size_t j = 0; j < 13; ++j) {
    double want_j = 0.0;
    for (std::size_t i = 0; i < 9; ++i) want_j += A(i, j) * y[i];
    CHECK(aty[j] == doctest::Approx(want_j).epsilon(1e-14));
  }
}

TEST_CASE("complex matvec carries the conjugate in the adjoint product") {
  const auto A = random_complex(6, 4, 31);
  std::vector<cplx> x(6);
  rng::Stream s(32);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto [re, im] = s.normal_pair(i);
    x[i] = cplx(re, im);
  }
  const auto At = linalg::adjoint(A);
  std::vector<cplx> got;
  linalg::matvec_serial(At, x, got);
  for (std::size_t j = 0; j < 4; ++j) {
    cplx want{};
    for (std::size_t i = 0; i < 6; ++i) want += std::conj(A(i, j)) * x[i];
    CHECK(std::abs(got[j] - want) <= 1e-13);
  }
}

TEST_CASE("serial and parallel kernels are bitwise identical") {
  const auto A = random_real(257, 383, 41);
  const auto Z = random_complex(130, 211, 42);
  std::vector<double> x(383);
  std::vector<cplx> zx(211);
  rng::Stream s(43);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = s.normal_pair(j).first;
  for (std::size_t j = 0; j < zx.size(); ++j) {
    const auto [re, im] = s.normal_pair(1000 + j);
    zx[j] = cplx(re, im);
  }

#ifdef _OPENMP
  omp_set_num_threads(4);
#endif
  std::vector<double> ys, yp;
  linalg::matvec_serial(A, x, ys);
  linalg::matvec_omp(A, x, yp);
  REQUIRE(ys.size() == yp.size());
  CHECK(ys == yp);  // exact, not approximate

  std::vector<cplx> zs, zp;
  linalg::matvec_serial(Z, zx, zs);
  linalg::matvec_omp(Z, zx, zp);
  CHECK(zs == zp);

  // the dispatch wrapper routes to the same two kernels
  std::vector<double> yw;
  linalg::matvec(A, x, yw, true);
  CHECK(yw == ys);
  linalg::matvec(A, x, yw, false);
  CHECK(yw == ys);
}

TEST_CASE("matvec rejects a dimension mismatch") {
  const auto A = random_real(3, 4, 51);
  std::vector<double> x(5, 1.0);
  std::vector<double> y;
  CHECK_THROWS_AS(linalg::matvec_serial(A, x, y), InvalidSpecError);
  CHECK_THROWS_AS(linalg::matvec_omp(A, x, y), InvalidSpecError);
}

TEST_CASE("norm2sq sums squared magnitudes") {
  CHECK(linalg::norm2sq(std::vector<double>{3.0, 4.0}) == doctest::Approx(25.0));
  CHECK(linalg::norm2sq(std::vector<double>{}) == 0.0);
  CHECK(linalg::norm2sq(std::vector<cplx>{{3.0, 4.0}, {0.0, 2.0}}) ==
        doctest::Approx(29.0));
}

TEST_CASE("QSNR_THREADS overrides the worker-thread count") {
#ifdef _OPENMP
  ::setenv("QSNR_THREADS", "2", 1);
  CHECK(linalg::worker_threads() == 2);
  CHECK(linalg::apply_thread_env() == 2);
  ::setenv("QSNR_THREADS", "1", 1);
  CHECK(linalg::worker_threads() == 1);
  ::unsetenv("QSNR_THREADS");
  CHECK(linalg::worker_threads() >= 1);
#else
  CHECK(linalg::worker_threads() == 1);
#endif
}
