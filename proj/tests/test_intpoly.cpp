#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "selchab/error.hpp"
#include "selchab/intpoly.hpp"

using namespace selchab;

namespace {

IntPoly random_poly(std::mt19937_64& rng, int deg, long bound, bool monic) {
  std::vector<mpz_class> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  if (monic || c.back() == 0) c.back() = 1;
  return IntPoly(c);
}

}  // namespace

TEST_SUITE("intpoly") {
  TEST_CASE("parsing") {
    CHECK(parse_poly("x^2 + 2*x + 3") == IntPoly{3, 2, 1});
    CHECK(parse_poly("(x+1)^2 - x") == IntPoly{1, 1, 1});
    CHECK(parse_poly("-x^3") == IntPoly({0, 0, 0, -1}));
    CHECK(parse_poly("theta^2 - 1", {"theta"}) == IntPoly{-1, 0, 1});
    CHECK_THROWS_AS(parse_poly("2x"), Error);
    CHECK_THROWS_AS(parse_poly("x^"), Error);
    CHECK_THROWS_AS(parse_poly("y + 1"), Error);
  }

  TEST_CASE("printing round trip") {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 50; ++it) {
      auto p = random_poly(rng, static_cast<int>(rng() % 8), 30, false);
      CHECK(parse_poly(p.to_string()) == p);
    }
  }

  TEST_CASE("division by monic polynomials") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 50; ++it) {
      auto a = random_poly(rng, 9, 50, false);
      auto b = random_poly(rng, 4, 50, true);
      auto qr = divide_by_monic(a, b);
      CHECK(qr.remainder.degree() < 4);
      CHECK(qr.quotient * b + qr.remainder == a);
    }
  }

  TEST_CASE("resultant agrees with the Sylvester determinant") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 60; ++it) {
      auto a = random_poly(rng, 1 + static_cast<int>(rng() % 7), 20, false);
      auto b = random_poly(rng, 1 + static_cast<int>(rng() % 7), 20, rng() % 2);
      CHECK(resultant(a, b) == oracle::sylvester_resultant(a, b));
    }
  }

  TEST_CASE("discriminants") {
    CHECK(discriminant(IntPoly{1, 0, 1}) == -4);
    CHECK(discriminant(IntPoly{-2, 0, 0, 1}) == -108);
    // x^7 + (x+1)^2
    CHECK(discriminant(parse_poly("x^3 + x^2 + 2*x + 1")) == -23);
  }

  TEST_CASE("dyadic parsing") {
    CHECK(Dyadic::parse("-1/4") == Dyadic(-1, -2));
    CHECK(Dyadic::parse("3/2^5") == Dyadic(3, -5));
    CHECK(Dyadic::parse("12") == Dyadic(3, 2));
    CHECK_THROWS_AS(Dyadic::parse("1/3"), Error);
  }
}
