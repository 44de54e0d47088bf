// Serial reference kernels against their parallel versions.

#include <benchmark/benchmark.h>

#include <random>

#include "selchab/curve.hpp"
#include "selchab/disk_scan.hpp"
#include "selchab/kernels.hpp"

namespace {

std::vector<mpz_class> random_coeffs(std::size_t n, unsigned bits, unsigned seed) {
  gmp_randclass r(gmp_randinit_default);
  r.seed(seed);
  std::vector<mpz_class> v(n);
  for (auto& x : v) x = r.get_z_bits(bits);
  return v;
}

void BM_convolve_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_coeffs(n, 256, 1), b = random_coeffs(n, 256, 2);
  for (auto _ : st) benchmark::DoNotOptimize(selchab::kernels::convolve_serial(a, b, n));
}

void BM_convolve_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_coeffs(n, 256, 1), b = random_coeffs(n, 256, 2);
  for (auto _ : st) benchmark::DoNotOptimize(selchab::kernels::convolve_parallel(a, b, n));
}

std::vector<std::int64_t> random_ints(std::size_t n, unsigned seed) {
  std::mt19937 r(seed);
  std::vector<std::int64_t> v(n);
  for (auto& x : v) x = static_cast<std::int64_t>(r() % 64);
  return v;
}

void BM_precision_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto va = random_ints(n, 1), aa = random_ints(n, 2), vb = random_ints(n, 3), ab = random_ints(n, 4);
  for (auto _ : st) benchmark::DoNotOptimize(selchab::kernels::product_precision_serial(va, aa, vb, ab, n));
}

void BM_precision_parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto va = random_ints(n, 1), aa = random_ints(n, 2), vb = random_ints(n, 3), ab = random_ints(n, 4);
  for (auto _ : st) benchmark::DoNotOptimize(selchab::kernels::product_precision_parallel(va, aa, vb, ab, n));
}

const std::vector<selchab::PadicSeries>& c2_series() {
  static const auto F = [] {
    const auto lat = selchab::log_lattice(selchab::new_curve(2, selchab::IntPoly{1, 1}));
    return selchab::disk_log_series(lat, selchab::DiskCenter::P0);
  }();
  return F;
}

void BM_brute_serial(benchmark::State& st) {
  const auto& F = c2_series();
  for (auto _ : st) benchmark::DoNotOptimize(selchab::brute_force_classes_serial(F, 8));
}

void BM_brute_parallel(benchmark::State& st) {
  const auto& F = c2_series();
  for (auto _ : st) benchmark::DoNotOptimize(selchab::brute_force_classes_parallel(F, 8));
}

}  // namespace

BENCHMARK(BM_convolve_serial)->Arg(64)->Arg(512);
BENCHMARK(BM_convolve_parallel)->Arg(64)->Arg(512);
BENCHMARK(BM_precision_serial)->Arg(256)->Arg(2048);
BENCHMARK(BM_precision_parallel)->Arg(256)->Arg(2048);
BENCHMARK(BM_brute_serial);
BENCHMARK(BM_brute_parallel);

BENCHMARK_MAIN();
