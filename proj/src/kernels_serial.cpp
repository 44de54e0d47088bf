#include "selchab/kernels.hpp"

#include <algorithm>

namespace selchab::kernels {

std::vector<mpz_class> convolve_serial(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                       std::size_t n_out) {
  std::vector<mpz_class> out(n_out);
  for (std::size_t k = 0; k < n_out; ++k) {
    const std::size_t i_lo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t i_hi = std::min(k + 1, a.size());
    for (std::size_t i = i_lo; i < i_hi; ++i) {
      if (sgn(a[i]) == 0 || sgn(b[k - i]) == 0) continue;
      mpz_addmul(out[k].get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
    }
  }
  return out;
}

std::vector<std::int64_t> product_precision_serial(std::span<const std::int64_t> val_a,
                                                   std::span<const std::int64_t> abs_a,
                                                   std::span<const std::int64_t> val_b,
                                                   std::span<const std::int64_t> abs_b,
                                                   std::size_t n_out) {
  std::vector<std::int64_t> out(n_out, kInf);
  for (std::size_t k = 0; k < n_out; ++k) {
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

}  // namespace selchab::kernels
