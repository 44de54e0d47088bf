#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "selchab/disk_scan.hpp"
#include "selchab/error.hpp"

using namespace selchab;

namespace {

std::vector<Gf2Vec> sorted(std::vector<Gf2Vec> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

TEST_SUITE("disk_scan") {
  TEST_CASE("rho") {
    std::vector<PadicNumber> v{PadicNumber::from_integer(4, 20), PadicNumber::from_integer(6, 20),
                               PadicNumber::from_integer(1, 20)};
    CHECK(rho(v) == Gf2Vec{0, 0, 1});
    v[2] = PadicNumber::from_integer(8, 20);
    CHECK(rho(v) == Gf2Vec{0, 1, 0});
    std::vector<PadicNumber> z{PadicNumber::zero(10), PadicNumber::exact_zero()};
    CHECK_FALSE(try_rho(z).has_value());
    CHECK_THROWS_AS(rho(z), Error);
  }

  TEST_CASE("serial and parallel brute force agree") {
    const auto lat = log_lattice(new_curve(2, IntPoly{1, 1}));
    for (auto center : {DiskCenter::P0, DiskCenter::Infinity}) {
      const auto F = disk_log_series(lat, center);
      CHECK(brute_force_classes_serial(F, 8) == brute_force_classes_parallel(F, 8));
    }
  }

  TEST_CASE("scan agrees with brute force and covers the disk") {
    const std::vector<std::pair<int, IntPoly>> curves{{1, IntPoly{1, 1}}, {1, IntPoly{3, 1}}, {2, IntPoly{1, 1}},
                                                      {2, IntPoly{3, 0, 2}}, {3, IntPoly{1, 1}}};
    for (const auto& [g, h] : curves) {
      const auto lat = log_lattice(new_curve(g, h));
      for (auto center : {DiskCenter::P0, DiskCenter::Infinity}) {
        const auto res = disk_scan(lat, center);
        CHECK(res.covers_disk);
        CHECK(certificate_covers_disk(res.certificate));
        const auto F = disk_log_series(lat, center);
        CHECK(sorted(brute_force_classes(F, 10)) == res.classes);
      }
    }
  }

  TEST_CASE("a damaged certificate no longer covers the disk") {
    const auto lat = log_lattice(new_curve(2, IntPoly{1, 1}));
    auto res = disk_scan(lat, DiskCenter::P0);
    REQUIRE(res.certificate.size() >= 2);
    auto cells = res.certificate;
    cells.erase(cells.begin());
    CHECK_FALSE(certificate_covers_disk(cells));
    cells = res.certificate;
    cells.push_back(cells.front());
    CHECK_FALSE(certificate_covers_disk(cells));
  }

  TEST_CASE("a zero of the logarithm inside the disk exhausts the budget") {
    // (2, 3) on y^2 = x^3 + 1 is torsion, so the log vanishes at t = 2
    const auto lat = log_lattice(new_curve(1, IntPoly{1}));
    ScanOptions o;
    o.budget = 64;
    CHECK_THROWS_AS(disk_scan(lat, DiskCenter::P0, o), Error);
  }

  TEST_CASE("budget of zero") {
    const auto lat = log_lattice(new_curve(2, IntPoly{1, 1}));
    ScanOptions o;
    o.budget = 0;
    bool threw = false;
    try {
      disk_scan(lat, DiskCenter::P0, o);
    } catch (const Error& e) {
      threw = e.code() == ErrorCode::ScanBudgetExceeded;
    }
    CHECK(threw);
  }
}
