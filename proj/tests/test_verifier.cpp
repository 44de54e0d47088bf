#include "doctest.h"
#include "oracles.hpp"
#include "selchab/error.hpp"
#include "selchab/verifier.hpp"

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

}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("a5 with the published Selmer vectors succeeds") {
    SelmerInput s;
    s.mode = SelmerMode::F2gVectorsOverride;
    s.vectors = {{0, 1, 0, 0, 0, 1, 0}, {0, 0, 1, 1, 1, 1, 0}};
    s.u_override = published_u();
    s.provenance = "published";
    const auto r = verify_curve(new_curve(7, a5_h()), s);
    CHECK(r.verdict == Verdict::Success);
    REQUIRE(r.z_p0);
    REQUIRE(r.z_inf);
    CHECK(r.z_p0->classes == std::vector<Gf2Vec>{{1, 0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0, 0}});
    CHECK(r.z_inf->classes == std::vector<Gf2Vec>{{0, 0, 0, 0, 0, 0, 1}});
    CHECK(r.unit_disk.x0_mod8 == -3);
    CHECK(r.unit_disk.passes);
    CHECK(exit_code(r.verdict) == 0);
  }

  TEST_CASE("unit disk of a5") {
    const auto c = new_curve(7, a5_h());
    CHECK(unit_disk_x0(c) == -3);
    const auto e = build_etale(c.f);
    CHECK_FALSE(is_square_unit(e, e.algebra(3).from_poly(IntPoly{-3, -1})));
    const auto r = unit_disk_check(c, e, {});
    CHECK(r.status == UnitDiskStatus::Checked);
    CHECK(r.passes);
  }

  TEST_CASE("C2 with the derived witness fails") {
    // rho(log'(12)) in echelon coordinates, from the point (12, 499)
    const auto c = new_curve(2, IntPoly{1, 1});
    const auto lat = log_lattice(c);
    const auto F = disk_log_series(lat, DiskCenter::P0);
    const Gf2Vec w = rho(evaluate_log(F, PadicNumber::from_integer(12, 256)));
    CHECK(mpz_class(12) * 12 * 12 * 12 * 12 + 13 * 13 == 499 * 499);
    SelmerInput s;
    s.mode = SelmerMode::F2gVectorsOverride;
    s.vectors = {w};
    s.provenance = "derived";
    const auto r = verify_curve(c, s);
    CHECK(r.verdict == Verdict::Failure);
    CHECK(r.witnesses == std::vector<Gf2Vec>{w});
    REQUIRE(r.z_p0);
    CHECK(std::find(r.z_p0->classes.begin(), r.z_p0->classes.end(), w) != r.z_p0->classes.end());
    CHECK(exit_code(r.verdict) == 1);
  }

  TEST_CASE("x - theta of a 2-divisible point cannot stand in for a Selmer generator") {
    SelmerInput s;
    s.mode = SelmerMode::UnitRepresentatives;
    s.unit_reps = {IntPoly{12, -1}};
    const auto r = verify_curve(new_curve(2, IntPoly{1, 1}), s);
    CHECK(r.verdict == Verdict::Inconclusive);
    CHECK(r.reason.find("RankDrop") != std::string::npos);
  }

  TEST_CASE("trivial Selmer input succeeds with notes") {
    SelmerInput s;
    s.provenance = "assumes GRH";
    const auto r = verify_curve(new_curve(3, IntPoly{1, 1}), s);
    CHECK(r.verdict == Verdict::Success);
    CHECK(std::find(r.notes.begin(), r.notes.end(), "conditional on GRH") != r.notes.end());
  }

  TEST_CASE("delta2 coordinates and unit representatives give the same classes") {
    const auto c = new_curve(3, IntPoly{1, 1});
    const auto e = build_etale(c.f);
    SelmerInput a, b;
    a.mode = SelmerMode::Delta2Coordinates;
    a.vectors = {Gf2Vec(e.delta2_basis.size(), 0)};
    a.vectors[0][0] = 1;
    const auto ha = selmer_to_H2(e, a);
    CHECK(ha.size() == 1);
    CHECK(ha[0] == e.delta2_basis[0].coords);
    // x = 2 is the x-coordinate of a 2-adic point: f(2) = 137 = 1 mod 8
    b.mode = SelmerMode::UnitRepresentatives;
    b.unit_reps = {IntPoly{2, -1}};
    const auto hb = selmer_to_H2(e, b);
    REQUIRE(hb.size() == 1);
    CHECK(hb[0] == square_class_coords(e, IntPoly{2, -1}));
    b.unit_reps = {IntPoly{2}};
    CHECK_THROWS_AS(selmer_to_H2(e, b), Error);
  }

  TEST_CASE("in_span") {
    CHECK(in_span({{1, 0, 1}, {0, 1, 1}}, {1, 1, 0}));
    CHECK_FALSE(in_span({{1, 0, 1}}, {0, 1, 1}));
    CHECK(in_span({}, {0, 0}));
  }

  TEST_CASE("verdict strings and exit codes") {
    for (auto v : {Verdict::Success, Verdict::Failure, Verdict::Inconclusive}) CHECK(parse_verdict(to_string(v)) == v);
    CHECK(exit_code(Verdict::Inconclusive) == 2);
  }
}
