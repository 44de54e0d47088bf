#include <json.hpp>

#include "doctest.h"
#include "selchab/error.hpp"
#include "selchab/report_io.hpp"

using namespace selchab;

TEST_SUITE("report_io") {
  TEST_CASE("Selmer files") {
    const auto s = selmer_from_json(R"({"mode": "f2g_override", "generators": [[1, 1]], "provenance": "x"})");
    CHECK(s.mode == SelmerMode::F2gVectorsOverride);
    CHECK(s.vectors == std::vector<Gf2Vec>{{1, 1}});
    CHECK(selmer_from_json(selmer_to_json(s)).vectors == s.vectors);
    const auto u = selmer_from_json(R"({"mode": "unit_reps", "generators": ["theta^2 + 1", "x - 3"]})");
    CHECK(u.unit_reps.size() == 2);
    CHECK(u.unit_reps[1] == IntPoly{-3, 1});
    CHECK(selmer_from_json(R"({"mode": "trivial"})").mode == SelmerMode::Trivial);
  }

  TEST_CASE("malformed Selmer files are input errors") {
    for (const char* bad : {"{", R"({"mode": "nope"})", R"({"mode": "delta2_coords", "generators": [[2]]})",
                            R"({"mode": "trivial", "generators": [[1]]})", R"({"generators": []})"}) {
      bool input_error = false;
      try {
        selmer_from_json(bad);
      } catch (const Error& e) {
        input_error = e.code() == ErrorCode::InvalidInput;
      }
      CHECK(input_error);
    }
    CHECK_THROWS_AS(load_selmer_file("/nonexistent/selmer.json"), Error);
  }

  TEST_CASE("U files") {
    const auto U = u_matrix_from_json(R"({"u": [["1/2", "0"], ["-1/4", 3]]})");
    CHECK(U.at(1, 0) == Dyadic(-1, -2));
    CHECK(U.at(1, 1) == Dyadic(3));
    CHECK(u_matrix_from_json(R"([["1"]])").rows() == 1);
  }

  TEST_CASE("reports survive a JSON round trip exactly") {
    SelmerInput s;
    s.mode = SelmerMode::F2gVectorsOverride;
    s.vectors = {{1, 1}};
    s.provenance = "derived";
    const auto rep = verify_curve(new_curve(2, IntPoly{1, 1}), s);
    const auto js = report_to_json(rep);
    const auto back = report_from_json(js);
    CHECK(report_to_json(back) == js);
    CHECK(report_to_text(back) == report_to_text(rep));
    // key order is fixed
    std::vector<std::string> keys;
    const auto parsed = nlohmann::ordered_json::parse(js);
    for (const auto& [k, v] : parsed.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"curve", "structure", "selmer", "lattice", "unit_disk", "Z_P0", "Z_inf",
                                           "regimes", "verdict", "reason", "witnesses", "notes"});
  }
}
