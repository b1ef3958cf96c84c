// Throughput comparison of the serial reference kernels against the
// OpenMP-parallel ones. The parallel path computes each output element with
// the same serial dot product, so results must match bit for bit; this
// harness checks that while timing both.
//
// Usage: qsnr_bench [reps]   (default 5; median time is reported)

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "qsnr/linalg.hpp"
#include "qsnr/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class T>
void fill_normal(std::vector<T>& v, std::uint64_t seed);

template <>
void fill_normal(std::vector<double>& v, std::uint64_t seed) {
  const qsnr::rng::Stream s(seed);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.normal_pair(i).first;
}

template <>
void fill_normal(std::vector<std::complex<double>>& v, std::uint64_t seed) {
  const qsnr::rng::Stream s(seed);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto [re, im] = s.normal_pair(i);
    v[i] = {re, im};
  }
}

// Returns the median wall time of `reps` applications of y = A x.
template <class T>
double time_matvec(const qsnr::linalg::Matrix<T>& A, const std::vector<T>& x,
                   std::vector<T>& y, bool parallel, int reps) {
  std::vector<double> times;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    qsnr::linalg::matvec(A, x, y, parallel);
    times.push_back(seconds_since(t0));
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

template <class T>
void run_case(const char* label, int m, int n, int reps, double flops_per_madd) {
  qsnr::linalg::Matrix<T> A(m, n);
  fill_normal(A.data, 7u);
  std::vector<T> x(n), y_serial(m), y_parallel(m);
  fill_normal(x, 11u);

  // One warm-up apply per path keeps first-touch costs out of the timings.
  qsnr::linalg::matvec(A, x, y_serial, false);
  qsnr::linalg::matvec(A, x, y_parallel, true);

  const double ts = time_matvec(A, x, y_serial, false, reps);
  const double tp = time_matvec(A, x, y_parallel, true, reps);
  const bool identical = y_serial == y_parallel;

  const double gflops = flops_per_madd * double(m) * double(n) * 1e-9;
  std::printf("%-14s %5dx%-5d  serial %8.3f ms (%6.2f GF/s)  omp %8.3f ms (%6.2f GF/s)  speedup %5.2fx  %s\n",
              label, m, n, 1e3 * ts, gflops / ts, 1e3 * tp, gflops / tp, ts / tp,
              identical ? "bitwise-identical" : "MISMATCH");
  if (!identical) std::exit(1);
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
  const int threads = qsnr::linalg::apply_thread_env();
  std::printf("worker threads: %d (QSNR_THREADS overrides)\n", threads);

  for (int n : {512, 1024, 2048}) {
    const int m = n / 2;
    run_case<double>("real matvec", m, n, reps, 2.0);
    run_case<std::complex<double>>("complex matvec", m, n, reps, 8.0);
  }
  std::puts("all parallel results matched the serial reference");
  return 0;
}
