#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "selchab/curve.hpp"
#include "selchab/etale.hpp"

using namespace selchab;

namespace {

AlgebraElement element(const std::vector<int>& c) {
  AlgebraElement a;
  for (int x : c) a.c.push_back(static_cast<std::uint64_t>(x));
  return a;
}

std::vector<int> unpack(std::uint64_t idx, std::size_t n) {
  std::vector<int> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = static_cast<int>(idx % 8);
    idx /= 8;
  }
  return a;
}

IntPoly a5_h() { return parse_poly("x^7 + x^6 + 2*x^5 + 5*x^4 + 6*x^3 + 6*x^2 + 4*x + 1"); }

}  // namespace

TEST_SUITE("etale") {
  TEST_CASE("square test matches enumeration of squares mod 8") {
    for (auto [g, h] : std::vector<std::pair<int, IntPoly>>{{1, IntPoly{1, 1}}, {1, IntPoly{3, 1}}, {2, IntPoly{1, 1}},
                                                            {2, IntPoly{3, 0, 2}}, {2, IntPoly{1, 1, 1}}}) {
      const auto c = new_curve(g, h);
      const auto e = build_etale(c.f);
      const auto squares = oracle::unit_squares_mod8(c.f);
      const std::size_t n = static_cast<std::size_t>(c.f.degree());
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < n; ++i) total *= 8;
      std::set<SquareClass> classes;
      std::size_t units = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        const auto v = unpack(idx, n);
        if (!oracle::is_unit_mod2(v, c.f)) continue;
        ++units;
        const auto u = element(v);
        const bool sq = squares.count(v) == 1;
        CHECK(is_square_unit(e, u) == sq);
        const auto cls = square_class_coords(e, u);
        CHECK(gf2_is_zero(cls) == sq);
        classes.insert(cls);
      }
      // every class of H_2 is hit, and each by units / #squares elements
      CHECK(classes.size() == (std::size_t{1} << e.dim_h2()));
      CHECK(units == squares.size() * classes.size());
    }
  }

  TEST_CASE("square classes are multiplicative") {
    std::mt19937_64 rng(31);
    const auto c = new_curve(3, IntPoly{1, 1, 0, 2});
    const auto e = build_etale(c.f);
    const auto A = e.algebra(3);
    const std::size_t n = static_cast<std::size_t>(c.f.degree());
    int tested = 0;
    while (tested < 200) {
      auto a = unpack(rng(), n), b = unpack(rng(), n);
      if (!oracle::is_unit_mod2(a, c.f) || !oracle::is_unit_mod2(b, c.f)) continue;
      const auto ua = element(a), ub = element(b);
      CHECK(square_class_coords(e, A.mul(ua, ub)) == gf2_add(square_class_coords(e, ua), square_class_coords(e, ub)));
      ++tested;
    }
  }

  TEST_CASE("a5 factorization and dimensions") {
    const auto c = new_curve(7, a5_h());
    const auto e = build_etale(c.f);
    CHECK(e.factor_degrees() == std::vector<int>{5, 5, 5});
    CHECK(e.I_set == std::vector<int>{3, 5});
    CHECK(e.dim_h2() == 18);
    CHECK(e.delta2_basis.size() == 9);
  }

  TEST_CASE("local image has dimension g + m - 1 and contains x - theta for 2-adic points") {
    for (int g = 1; g <= 6; ++g) {
      const auto c = new_curve(g, IntPoly{1, 1});
      const auto e = build_etale(c.f);
      CHECK(e.delta2_basis.size() == static_cast<std::size_t>(g) + e.m() - 1);
      int points = 0;
      for (long x = -400; x <= 400; x += 2) {
        mpz_class fx = c.f.eval(x) % 8;
        if (fx < 0) fx += 8;
        if (fx != 1) continue;  // odd and 1 mod 8: a 2-adic square
        ++points;
        const auto cls = square_class_coords(e, IntPoly{x, -1});
        CHECK(delta2_coordinates(e, cls).has_value());
      }
      CHECK(points > 0);
    }
  }

  TEST_CASE("delta2 generators carry the class of their representative") {
    const auto c = new_curve(7, a5_h());
    const auto e = build_etale(c.f);
    Gf2Basis span(e.dim_h2());
    for (const auto& gen : e.delta2_basis) {
      CHECK(square_class_coords(e, gen.representative) == gen.coords);
      CHECK(span.insert(gen.coords));
    }
  }
}
