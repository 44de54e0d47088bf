#pragma once

// Data-parallel inner loops. Each kernel has a serial reference version that
// the tests compare against and an OpenMP version used by default.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace selchab {

enum class ExecPolicy { Serial, Parallel };

/// Policy used when callers do not pass one explicitly.
ExecPolicy default_policy();
void set_default_policy(ExecPolicy policy);
void set_thread_count(int threads);

namespace kernels {

/// Marks an exact zero in the precision kernels.
inline constexpr std::int64_t kInf = INT64_MAX / 4;

/// c[k] = sum_{i+j=k} a[i] b[j] for k < n_out.
std::vector<mpz_class> convolve_serial(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                       std::size_t n_out);
/// Same result. Nonnegative inputs of length >= 32 go through a single packed
/// big-integer product (Kronecker substitution) with threaded packing.
std::vector<mpz_class> convolve_parallel(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                         std::size_t n_out);
std::vector<mpz_class> convolve(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                std::size_t n_out, ExecPolicy policy);

/// Absolute precision of each coefficient of a product of two truncated
/// 2-adic series: out[k] = min_{i+j=k} min(val_a[i] + abs_b[j], abs_a[i] + val_b[j]).
/// Entries equal to kInf denote exact zeros and contribute nothing.
std::vector<std::int64_t> product_precision_serial(std::span<const std::int64_t> val_a,
                                                   std::span<const std::int64_t> abs_a,
                                                   std::span<const std::int64_t> val_b,
                                                   std::span<const std::int64_t> abs_b,
                                                   std::size_t n_out);
std::vector<std::int64_t> product_precision_parallel(std::span<const std::int64_t> val_a,
                                                     std::span<const std::int64_t> abs_a,
                                                     std::span<const std::int64_t> val_b,
                                                     std::span<const std::int64_t> abs_b,
                                                     std::size_t n_out);
std::vector<std::int64_t> product_precision(std::span<const std::int64_t> val_a,
                                            std::span<const std::int64_t> abs_a,
                                            std::span<const std::int64_t> val_b,
                                            std::span<const std::int64_t> abs_b, std::size_t n_out,
                                            ExecPolicy policy);

}  // namespace kernels
}  // namespace selchab
