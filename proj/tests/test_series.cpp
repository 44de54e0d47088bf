#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "selchab/series.hpp"

using namespace selchab;

namespace {

PadicSeries from_q(const oracle::Q& q, std::int64_t relprec) {
  std::vector<PadicNumber> c;
  for (const auto& x : q) c.push_back(x == 0 ? PadicNumber::exact_zero()
                                             : PadicNumber::from_rational(x.get_num(), x.get_den(), relprec));
  return PadicSeries(c);
}

bool series_agrees(const PadicSeries& s, const oracle::Q& q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (!oracle::agrees(s[i], q[i])) return false;
  return true;
}

oracle::Q random_q(std::mt19937_64& rng, std::size_t n, long c0) {
  oracle::Q q(n);
  q[0] = c0;
  for (std::size_t i = 1; i < n; ++i) q[i] = mpq_class(static_cast<long>(rng() % 41) - 20, 1 + 2 * (rng() % 4));
  for (auto& x : q) x.canonicalize();
  return q;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("product, reciprocal and square roots against exact rationals") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 20; ++it) {
      const std::size_t n = 30;
      auto a = random_q(rng, n, 1 + 8 * static_cast<long>(rng() % 5));
      auto b = random_q(rng, n, 3);
      auto pa = from_q(a, 60), pb = from_q(b, 60);
      CHECK(series_agrees(multiply(pa, pb, n), oracle::mul(a, b, n), n));
      CHECK(series_agrees(reciprocal(pb), oracle::inv(b, n), n));
      // a(0) = 1 mod 8 is a square; take the root that is 1 mod 4
      auto r0 = padic_sqrt(pa[0]);
      if (r0.residue(2) != 1) r0 = -r0;
      auto s = sqrt_unit(pa);
      auto prod = multiply(s, s, n);
      for (std::size_t i = 0; i < n; ++i) CHECK(prod[i].agrees_with(pa[i]));
      auto is = inv_sqrt_unit(pa);
      auto one = multiply(multiply(is, is, n), pa, n);
      CHECK(one[0].agrees_with(PadicNumber::from_integer(1)));
      for (std::size_t i = 1; i < n; ++i) CHECK(one[i].is_zero());
    }
  }

  TEST_CASE("square root of 1 + 8t") {
    const std::size_t n = 12;
    oracle::Q a(n, 0);
    a[0] = 1;
    a[1] = 8;
    auto s = sqrt_unit(from_q(a, 40));
    CHECK(series_agrees(s, oracle::sqrt(a, 1, n), n));
  }

  TEST_CASE("integration and differentiation") {
    std::mt19937_64 rng(2);
    auto a = random_q(rng, 20, 5);
    auto pa = from_q(a, 50);
    auto I = formal_integrate(pa);
    CHECK(series_agrees(I, oracle::integrate(a), 21));
    CHECK(series_agrees(differentiate(pa), oracle::derivative(a), 19));
  }

  TEST_CASE("composition and fixed point inversion") {
    // s + s^2 = T  <=>  s = T - T^2 + 2T^3 - 5T^4 + ...
    const std::size_t n = 16;
    std::vector<PadicNumber> T(n);
    T[1] = PadicNumber::from_integer(1, 60);
    auto s = fixed_point_invert(PadicSeries(T), IntPoly{0, 0, 1}, 60);
    const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int k = 1; k <= 9; ++k) {
      const long sign = (k % 2) ? 1 : -1;
      CHECK(s[k].agrees_with(PadicNumber::from_integer(sign * catalan[k - 1], 60)));
    }
    auto back = eval_poly(IntPoly{0, 1, 1}, s, 60);
    CHECK(back[1].agrees_with(PadicNumber::from_integer(1, 60)));
    for (std::size_t k = 2; k < n; ++k) CHECK(back[k].is_zero());
  }

  TEST_CASE("evaluation matches partial sums") {
    // sum 2^n t^n / n at t = 2 is log-like; compare against exact partial sums
    const std::size_t n = 80;
    std::vector<PadicNumber> c(n);
    oracle::Q q(n, 0);
    for (std::size_t k = 1; k < n; ++k) {
      q[k] = mpq_class(1, static_cast<long>(k));
      c[k] = PadicNumber::from_rational(1, static_cast<long>(k), 64);
    }
    PadicSeries s(c, ValuationLaw{0, 0, 1, false, true, 0});
    const auto v = evaluate(s, PadicNumber::from_integer(4, 64));
    mpq_class exact = 0, p = 1;
    for (std::size_t k = 1; k < 200; ++k) {
      p *= 4;
      exact += p / static_cast<long>(k);
    }
    CHECK(oracle::agrees(v, exact));
    CHECK(v.absprec() >= 20);
  }

  TEST_CASE("valuation laws") {
    ValuationLaw law{0, -2, 5, true, false, 0};  // ceil(-2n/5)
    CHECK(law.integer_bound(0) == 0);
    CHECK(law.integer_bound(3) == -1);
    CHECK(law.integer_bound(5) == -2);
    ValuationLaw lg{2, -2, 5, true, true, 0};  // ceil((2-2n)/5) - log2 n
    CHECK(lg.bound(4) == doctest::Approx(-1.0 - 2.0));
  }
}
