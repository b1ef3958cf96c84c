#pragma once

// Dense row-major kernels used by the AMP loop, each in a serial reference
// form and an OpenMP row-parallel form. Both variants sum every output
// element in the same index order (one thread owns one output row), so the
// results are bitwise identical for any thread count; the benchmark target
// compares their throughput.

#include <complex>
#include <cstddef>
#include <vector>

#include "qsnr/errors.hpp"

namespace qsnr::linalg {

// Number of worker threads the parallel kernels will use: the QSNR_THREADS
// environment variable if set, otherwise OpenMP's default (serial builds: 1).
int worker_threads();

// Installs the QSNR_THREADS override (if any) as the OpenMP team size.
// No-op in serial builds. Returns the effective thread count.
int apply_thread_env();

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  const T* row(std::size_t i) const { return data.data() + i * cols; }
};

inline double conj_val(double v) { return v; }
inline std::complex<double> conj_val(const std::complex<double>& v) { return std::conj(v); }

// Conjugate transpose, so adjoint products run as plain row-major matvecs.
template <class T>
Matrix<T> adjoint(const Matrix<T>& A) {
  Matrix<T> B(A.cols, A.rows);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t j = 0; j < A.cols; ++j) B(j, i) = conj_val(A(i, j));
  return B;
}

// y = A x; serial reference.
template <class T>
void matvec_serial(const Matrix<T>& A, const std::vector<T>& x, std::vector<T>& y) {
  if (x.size() != A.cols) throw InvalidSpecError("matvec: dimension mismatch");
  y.resize(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i) {
    const T* a = A.row(i);
    T acc{};
    for (std::size_t j = 0; j < A.cols; ++j) acc += a[j] * x[j];
    y[i] = acc;
  }
}

// y = A x; one thread per block of output rows, same per-row summation order
// as the serial kernel.
template <class T>
void matvec_omp(const Matrix<T>& A, const std::vector<T>& x, std::vector<T>& y) {
  if (x.size() != A.cols) throw InvalidSpecError("matvec: dimension mismatch");
  y.resize(A.rows);
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(A.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    const T* a = A.row(static_cast<std::size_t>(i));
    T acc{};
    for (std::size_t j = 0; j < A.cols; ++j) acc += a[j] * x[j];
    y[static_cast<std::size_t>(i)] = acc;
  }
}

template <class T>
void matvec(const Matrix<T>& A, const std::vector<T>& x, std::vector<T>& y, bool parallel) {
  if (parallel)
    matvec_omp(A, x, y);
  else
    matvec_serial(A, x, y);
}

// Squared Euclidean norm (complex: sum of |v_i|^2).
inline double norm2sq(const std::vector<double>& v) {
  double acc = 0.0;
  for (double e : v) acc += e * e;
  return acc;
}
inline double norm2sq(const std::vector<std::complex<double>>& v) {
  double acc = 0.0;
  for (const auto& e : v) acc += std::norm(e);
  return acc;
}

}  // namespace qsnr::linalg
