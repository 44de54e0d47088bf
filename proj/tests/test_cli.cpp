#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "selchab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = selchab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string data = SELCHAB_TEST_DATA_DIR;

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("verify-curve on a5 with the published data") {
    auto r = run({"verify-curve", "--preset", "a5", "--selmer", data + "/selmer/a5_published.json", "--u-override",
                  data + "/selmer/a5_published_U.json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z(P0)      {(1,0,0,0,0,0,0), (1,1,0,0,0,0,0)}") != std::string::npos);
  }

  TEST_CASE("verify-curve on C2 prints the witness") {
    auto r = run({"verify-curve", "-g", "2", "--h", "x+1", "--selmer", data + "/selmer/c2_derived.json"});
    CHECK(r.code == 1);
    CHECK(r.out.find("witness") != std::string::npos);
  }

  TEST_CASE("input errors exit with 3") {
    CHECK(run({"verify-curve", "--preset", "a5", "--selmer", "missing.json"}).code == 3);
    CHECK(run({"verify-curve", "-g", "1", "--h", "x^2+1", "--selmer", data + "/selmer/cg_trivial.json"}).code == 3);
    CHECK(run({"verify-curve", "--preset", "nope"}).code == 3);
    CHECK(run({"verify-curve", "--preset", "a5", "--precision", "4"}).code == 3);
    CHECK(run({"bogus"}).code == 3);
  }

  TEST_CASE("JSON output is stable") {
    auto a = run({"verify-curve", "--preset", "C3", "--format", "json"});
    auto b = run({"verify-curve", "--preset", "C3", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }

  TEST_CASE("log-image") {
    auto r = run({"log-image", "-g", "1", "--h", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("U (echelonizing)") != std::string::npos);
    auto p8 = run({"log-image", "-g", "2", "--h", "x+1", "--precision", "8"});
    auto p24 = run({"log-image", "-g", "2", "--h", "x+1", "--precision", "24"});
    auto rows = [](const std::string& s) { return s.substr(s.find("rows of L U mod 2")); };
    CHECK(rows(p8.out) == rows(p24.out));
  }

  TEST_CASE("disk-scan") {
    auto r = run({"disk-scan", "--preset", "a5", "--center", "inf"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Z(infinity) = {(0,0,0,0,0,0,1)}") != std::string::npos);
    CHECK(run({"disk-scan", "--preset", "a5", "--center", "p0", "--budget", "0"}).code == 2);
  }

  TEST_CASE("dynamics") {
    auto r = run({"dynamics", "--chain", "6"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Unconditional") != std::string::npos);
    r = run({"dynamics", "--reduce", "10"});
    CHECK(r.out.find("+-A_5 A_2") != std::string::npos);
    r = run({"dynamics", "--poly", "B", "6", "--eval", "-2"});
    CHECK(r.out == "B_6(-2) = -1\n");
    CHECK(run({"dynamics", "--poly", "B", "13"}).code == 3);
  }

  TEST_CASE("survey of the C family") {
    auto r = run({"survey", "--family", "C", "--gmin", "1", "--gmax", "4"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 5);
    CHECK(r.out.find("C2\t2\tx + 1") != std::string::npos);
    CHECK(r.out.find("requires external data") != std::string::npos);
  }

  TEST_CASE("survey keeps failed rows") {
    const std::string path = "survey_list_test.txt";
    {
      std::ofstream f(path);
      f << "# g; h\n1; x^2 + 1\n2; x + 1\n3; x + 1; " << data << "/selmer/cg_trivial.json\n";
    }
    auto r = run({"survey", "--list", path});
    CHECK(r.code == 2);
    std::istringstream in(r.out);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].find("error") != std::string::npos);
    CHECK(lines[1].find("DegreeTooLarge") != std::string::npos);
    CHECK(lines[3].find("\t+\t") != std::string::npos);
    std::remove(path.c_str());
  }

  TEST_CASE("survey box enumeration") {
    auto r = run({"survey", "--box", "1", "2", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"h\": \"x + 1\"") != std::string::npos);
    CHECK(r.out.find("\"h\": \"x - 1\"") != std::string::npos);
  }
}
