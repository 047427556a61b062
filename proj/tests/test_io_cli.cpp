#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "ellat/io.hpp"

using namespace ellat;

namespace {

CouplingParams sample_point() {
  CouplingParams prm;
  prm.n = 2;
  prm.m = 2;
  prm.g = 0.5;
  prm.g1 = 0.6;
  prm.g2 = 0.7;
  prm.g3 = 0.1;
  prm.g4 = 0.1;
  prm.gp1 = prm.gp2 = prm.gp3 = prm.gp4 = 0.05;
  prm.p = 0.3;
  return prm;
}

}  // namespace

TEST_CASE("parameter serialization round-trip", "[io]") {
  CouplingParams prm = sample_point();
  auto j = params_to_json(prm);
  CouplingParams back = params_from_json(j);
  CHECK(back.n == prm.n);
  CHECK(back.m == prm.m);
  CHECK(back.g == prm.g);
  CHECK(back.g1 == prm.g1);
  CHECK(back.g4 == prm.g4);
  CHECK(back.gp3 == prm.gp3);
  CHECK(back.p == prm.p);
  CHECK(back.tol == prm.tol);

  SECTION("omitted optional fields default to zero") {
    nlohmann::json minimal{{"n", 2}, {"m", 1}, {"g", 0.4},
                           {"g1", 0.6}, {"g2", 0.7}};
    CouplingParams sparse = params_from_json(minimal);
    CHECK(sparse.g3 == 0.0);
    CHECK(sparse.gp4 == 0.0);
    CHECK(sparse.p == 0.0);
  }
  SECTION("missing required fields throw") {
    nlohmann::json broken{{"n", 2}};
    CHECK_THROWS(params_from_json(broken));
  }
}

TEST_CASE("spectrum serialization", "[io]") {
  CouplingParams prm = sample_point();
  SpectralResult res = solve_spectrum(prm, Branch::generic);
  auto j = spectrum_to_json(res);

  SECTION("schema carries every block") {
    REQUIRE(j.contains("params"));
    REQUIRE(j.contains("lattice"));
    REQUIRE(j.contains("eigenvalues"));
    REQUIRE(j.contains("eigenfunctions"));
    REQUIRE(j.contains("weights"));
    REQUIRE(j.contains("diagnostics"));
    CHECK(j["lattice"].size() == 6);
    CHECK(j["eigenvalues"].size() == 6);
    CHECK(j["eigenvalues"][0].contains("label"));
    CHECK(j["eigenvalues"][0].contains("value"));
    CHECK(j["eigenfunctions"][0]["values"].size() == 6);
    CHECK(j["diagnostics"].contains("min_gap"));
    CHECK(j["branch"] == "generic");
  }

  SECTION("repeated runs serialize to identical bytes") {
    SpectralResult again = solve_spectrum(prm, Branch::generic);
    CHECK(dump_json(spectrum_to_json(res)) == dump_json(spectrum_to_json(again)));
  }

  SECTION("csv has metadata lines and one row per state") {
    std::string csv = spectrum_to_csv(res);
    CHECK(csv.rfind("# n=2\n", 0) == 0);
    CHECK(csv.find("# p=0.3\n") != std::string::npos);
    CHECK(csv.find("rank,label,energy,norm\n") != std::string::npos);
    int rows = 0;
    for (char c : csv)
      if (c == '\n') ++rows;
    // 13 metadata lines, 1 header, 6 states
    CHECK(rows == 20);
    CHECK(csv.find("\"(1,0)\"") != std::string::npos);
  }
}

TEST_CASE("check report serialization", "[io]") {
  std::vector<CheckResult> checks{
      {"alpha", true, 1e-13, 1e-12, ""},
      {"beta", false, 2e-3, 1e-9, "worst at z=0.25"},
  };
  CouplingParams prm = sample_point();
  auto j = checks_to_json(prm, Branch::generic, checks);
  CHECK(j["pass"] == false);
  REQUIRE(j["checks"].size() == 2);
  CHECK(j["checks"][0]["name"] == "alpha");
  CHECK(j["checks"][0]["pass"] == true);
  CHECK(j["checks"][1]["note"] == "worst at z=0.25");

  std::string csv = checks_to_csv(checks);
  CHECK(csv.rfind("name,pass,residual,tol\n", 0) == 0);
  CHECK(csv.find("alpha,1,") != std::string::npos);
  CHECK(csv.find("beta,0,") != std::string::npos);
}
