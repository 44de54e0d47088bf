#include <algorithm>
#include <atomic>
#include <cstdint>

#include "selchab/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace selchab {

namespace {
std::atomic<ExecPolicy> g_policy{ExecPolicy::Parallel};
}

ExecPolicy default_policy() { return g_policy.load(); }
void set_default_policy(ExecPolicy policy) { g_policy.store(policy); }

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

namespace kernels {

namespace {

std::vector<mpz_class> convolve_naive_parallel(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                               std::size_t n_out) {
  std::vector<mpz_class> out(n_out);
  const auto n = static_cast<std::int64_t>(n_out);
  // Output coefficients are independent; the triangular workload needs a
  // dynamic schedule.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const std::size_t i_lo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t i_hi = std::min(k + 1, a.size());
    mpz_class acc;
    for (std::size_t i = i_lo; i < i_hi; ++i) {
      if (sgn(a[i]) == 0 || sgn(b[k - i]) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
    }
    out[k] = std::move(acc);
  }
  return out;
}

std::size_t max_bits(std::span<const mpz_class> v) {
  std::size_t m = 0;
  for (const auto& x : v)
    if (sgn(x) != 0) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
  return m;
}

// Packs v[i] into limb slots of `slot` words each.
mpz_class pack(std::span<const mpz_class> v, std::size_t slot) {
  std::vector<std::uint64_t> buf(v.size() * slot, 0);
  const auto n = static_cast<std::int64_t>(v.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    if (sgn(v[i]) == 0) continue;
    std::size_t count = 0;
    mpz_export(&buf[i * slot], &count, -1, sizeof(std::uint64_t), 0, 0, v[i].get_mpz_t());
  }
  mpz_class r;
  if (!buf.empty()) mpz_import(r.get_mpz_t(), buf.size(), -1, sizeof(std::uint64_t), 0, 0, buf.data());
  return r;
}

}  // namespace

std::vector<mpz_class> convolve_parallel(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                         std::size_t n_out) {
  a = a.first(std::min(a.size(), n_out));
  b = b.first(std::min(b.size(), n_out));
  const bool nonneg = std::all_of(a.begin(), a.end(), [](const mpz_class& x) { return sgn(x) >= 0; }) &&
                      std::all_of(b.begin(), b.end(), [](const mpz_class& x) { return sgn(x) >= 0; });
  if (!nonneg || n_out < 32 || a.empty() || b.empty()) return convolve_naive_parallel(a, b, n_out);
  // Kronecker substitution: one large product evaluated at 2^(64 slot).
  std::size_t terms = std::min(a.size(), b.size());
  std::size_t log_terms = 1;
  while ((std::size_t{1} << log_terms) < terms) ++log_terms;
  const std::size_t bits = max_bits(a) + max_bits(b) + log_terms + 1;
  const std::size_t slot = (bits + 63) / 64;
  const mpz_class prod = pack(a, slot) * pack(b, slot);
  std::vector<std::uint64_t> buf((a.size() + b.size()) * slot + 1, 0);
  std::size_t count = 0;
  if (sgn(prod) != 0) mpz_export(buf.data(), &count, -1, sizeof(std::uint64_t), 0, 0, prod.get_mpz_t());
  std::vector<mpz_class> out(n_out);
  const auto n = static_cast<std::int64_t>(std::min(n_out, a.size() + b.size() - 1));
#pragma omp parallel for schedule(static)
  for (std::int64_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    mpz_import(out[k].get_mpz_t(), slot, -1, sizeof(std::uint64_t), 0, 0, &buf[k * slot]);
  }
  return out;
}

std::vector<std::int64_t> product_precision_parallel(std::span<const std::int64_t> val_a,
                                                     std::span<const std::int64_t> abs_a,
                                                     std::span<const std::int64_t> val_b,
                                                     std::span<const std::int64_t> abs_b,
                                                     std::size_t n_out) {
  std::vector<std::int64_t> out(n_out, kInf);
  const auto n = static_cast<std::int64_t>(n_out);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    const std::size_t i_lo = k >= val_b.size() ? k - val_b.size() + 1 : 0;
    const std::size_t i_hi = std::min(k + 1, val_a.size());
    std::int64_t best = kInf;
    for (std::size_t i = i_lo; i < i_hi; ++i) {
      const std::size_t j = k - i;
      if (val_a[i] >= kInf || val_b[j] >= kInf) continue;
      best = std::min({best, val_a[i] + abs_b[j], abs_a[i] + val_b[j]});
    }
    out[k] = best;
  }
  return out;
}

std::vector<mpz_class> convolve(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                std::size_t n_out, ExecPolicy policy) {
  return policy == ExecPolicy::Parallel ? convolve_parallel(a, b, n_out)
                                        : convolve_serial(a, b, n_out);
}

std::vector<std::int64_t> product_precision(std::span<const std::int64_t> val_a,
                                            std::span<const std::int64_t> abs_a,
                                            std::span<const std::int64_t> val_b,
                                            std::span<const std::int64_t> abs_b, std::size_t n_out,
                                            ExecPolicy policy) {
  return policy == ExecPolicy::Parallel
             ? product_precision_parallel(val_a, abs_a, val_b, abs_b, n_out)
             : product_precision_serial(val_a, abs_a, val_b, abs_b, n_out);
}

}  // namespace kernels
}  // namespace selchab
