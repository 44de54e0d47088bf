#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "selchab/curve.hpp"
#include "selchab/error.hpp"

using namespace selchab;

namespace {

IntPoly a5_h() { return parse_poly("x^7 + x^6 + 2*x^5 + 5*x^4 + 6*x^3 + 6*x^2 + 4*x + 1"); }

DyadicMatrix published_u() {
  DyadicMatrix P = DyadicMatrix::identity(7);
  for (int i = 0; i < 5; ++i) P.at(i, i) = Dyadic(1, -1);
  P.at(5, 5) = Dyadic(1, -2);
  P.at(6, 6) = Dyadic(1, -2);
  P.at(2, 5) = Dyadic(-1, -2);
  P.at(4, 6) = Dyadic(-1, -2);
  return P;
}

// 1/y at P0 with y(0) = h(0): t^j / y are the differentials in t = x.
oracle::Q inv_y_at_p0(const CurveSpec& c, std::size_t n) {
  const auto f = oracle::from_poly(c.f, n);
  return oracle::inv(oracle::sqrt(f, mpq_class(c.h.coeff(0)), n), n);
}

// s = 1/x as a series in T = t^2, from T = s + H(s)^2 by plain iteration.
oracle::Q s_of_T(const CurveSpec& c, std::size_t n) {
  oracle::Q H(c.g + 2, 0);
  for (int i = 0; i <= c.h.degree(); ++i) H[c.g + 1 - i] = mpq_class(c.h.coeff(i));
  oracle::Q s(n, 0);
  for (std::size_t it = 0; it < n + 1; ++it) {
    oracle::Q Hs(n, 0), p(n, 0);
    p[0] = 1;
    for (std::size_t k = 0; k < H.size(); ++k) {
      if (H[k] != 0)
        for (std::size_t i = 0; i < n; ++i) Hs[i] += H[k] * p[i];
      p = oracle::mul(p, s, n);
    }
    auto H2 = oracle::mul(Hs, Hs, n);
    oracle::Q next(n, 0);
    if (n > 1) next[1] = 1;
    for (std::size_t i = 0; i < n; ++i) next[i] -= H2[i];
    s = next;
  }
  return s;
}

}  // namespace

TEST_SUITE("curve") {
  TEST_CASE("curve construction errors") {
    CHECK_THROWS_AS(new_curve(1, IntPoly{1, 0, 1}), Error);  // deg h > g
    CHECK_THROWS_AS(new_curve(2, IntPoly{2, 1}), Error);     // h(0) even
    CHECK_THROWS_AS(new_curve(0, IntPoly{1}), Error);
    const auto c = new_curve(2, IntPoly{1, 1});
    CHECK(c.f == parse_poly("x^5 + x^2 + 2*x + 1"));
    CHECK(c.unit_disk_supported);
  }

  TEST_CASE("structural checks") {
    const auto r = structural_checks(new_curve(7, a5_h()));
    CHECK(r.ok);
    CHECK(r.f_minus_h2_is_monomial);
    CHECK(r.odd_points.size() == 3);
    CHECK(r.reduced_point_count >= 3);
  }

  TEST_CASE("expansion at P0 against exact rationals") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 8; ++it) {
      const int g = 1 + static_cast<int>(rng() % 3);
      const auto c = new_curve(g, oracle::random_h(rng, g, 6));
      const std::size_t n = 24;
      const auto ex = expand_at_p0(c, n, 80);
      const auto iy = inv_y_at_p0(c, n);
      for (int j = 0; j < g; ++j) {
        const auto wj = oracle::mul(oracle::power(oracle::Q{0, 1}, static_cast<unsigned>(j), n), iy, n);
        const auto lj = oracle::integrate(wj);
        const std::size_t m = std::min<std::size_t>(n, ex.w[j].order_bound());
        for (std::size_t k = 0; k < m; ++k) CHECK(oracle::agrees(ex.w[j][k], wj[k]));
        for (std::size_t k = 0; k < std::min<std::size_t>(m, ex.ell[j].order_bound()); ++k)
          CHECK(oracle::agrees(ex.ell[j][k], lj[k]));
        CHECK(ex.w[j][j].is_nonzero());
      }
    }
  }

  TEST_CASE("expansion at infinity against exact rationals") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 6; ++it) {
      const int g = 1 + static_cast<int>(rng() % 3);
      const auto c = new_curve(g, oracle::random_h(rng, g, 6));
      const std::size_t nT = 14;
      const auto s = s_of_T(c, nT);
      const auto ds = oracle::derivative(s);
      const auto ex = expand_at_infinity(c, 2 * nT, 80);
      for (int j = 0; j < g; ++j) {
        auto wT = oracle::mul(oracle::power(s, static_cast<unsigned>(g - 1 - j), nT), ds, nT - 1);
        for (std::size_t k = 0; k + 1 < nT && 2 * k < ex.w[j].order_bound(); ++k) {
          CHECK(oracle::agrees(ex.w[j][2 * k], -2 * wT[k]));
          if (2 * k + 1 < ex.w[j].order_bound()) CHECK(ex.w[j][2 * k + 1].is_zero());
        }
      }
    }
  }

  TEST_CASE("valuation laws hold on random curves") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 10; ++it) {
      const int g = 1 + static_cast<int>(rng() % 4);
      const auto c = new_curve(g, oracle::random_h(rng, g, 9));
      for (const auto& l : check_valuation_laws(c, default_nterms(g, 24), 56)) {
        INFO(c.describe() << " " << l.name);
        CHECK(l.holds());
        CHECK(l.coefficients_checked > 0);
      }
    }
  }

  TEST_CASE("a5 lattice is the span given by the published U") {
    const auto c = new_curve(7, a5_h());
    const auto lat = log_lattice(c);
    CHECK(lat.certificate.ok);
    CHECK(same_lattice(lat.U, published_u()));
    LatticeOptions o;
    o.u_override = published_u();
    const auto lat2 = log_lattice(c, o);
    CHECK(lat2.certificate.ok);
    CHECK(lat2.u_overridden);
  }

  TEST_CASE("a wrong U override is rejected") {
    const auto c = new_curve(7, a5_h());
    LatticeOptions o;
    auto bad = published_u();
    bad.at(0, 0) = Dyadic(1, -2);
    o.u_override = bad;
    CHECK_THROWS_AS(log_lattice(c, o), Error);
  }

  TEST_CASE("lattice is independent of the working precision") {
    for (auto [g, h] : std::vector<std::pair<int, IntPoly>>{{1, IntPoly{1}}, {2, IntPoly{1, 1}}, {3, IntPoly{1, 1}}}) {
      LatticeOptions lo8, lo24;
      lo8.precision = 8;
      lo24.precision = 24;
      const auto c = new_curve(g, h);
      const auto a = log_lattice(c, lo8), b = log_lattice(c, lo24);
      CHECK(a.certificate.ok);
      CHECK(b.certificate.ok);
      CHECK(same_lattice(a.U, b.U));
      for (std::size_t r = 0; r < a.row_d.size(); ++r) CHECK(lattice_row_mod2(a, r) == lattice_row_mod2(b, r));
    }
  }

  TEST_CASE("g = 1, h = 1 gives a 2 x 1 matrix") {
    const auto lat = log_lattice(new_curve(1, IntPoly{1}));
    CHECK(lat.L.rows() == 2);
    CHECK(lat.L.cols() == 1);
    CHECK(lat.U.rows() == 1);
  }
}
