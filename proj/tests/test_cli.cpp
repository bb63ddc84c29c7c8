#include "eiscoh/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace eiscoh;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("weyl subcommand lists coset representatives", "[cli]") {
  auto r = run_cli({"weyl", "--n", "3", "--list-coset-reps"});
  REQUIRE(r.code == 0);
  Json body = Json::parse(r.out);
  REQUIRE(body["coset_reps"].size() == 3);
  CHECK(body["coset_reps"][0]["one_line"] == Json::array({2, 3, 1}));
  CHECK(body["coset_reps"][1]["one_line"] == Json::array({1, 3, 2}));
  CHECK(body["coset_reps"][2]["one_line"] == Json::array({1, 2, 3}));
  CHECK(body["coset_reps"][0]["length"] == 2);
  CHECK(body["coset_reps"][1]["length"] == 1);
  CHECK(body["coset_reps"][2]["length"] == 0);
}

TEST_CASE("intertwine subcommand compares oracle and closed form", "[cli]") {
  auto r = run_cli({"intertwine", "--n", "2", "--k", "1", "--eta-hi", "2", "--method",
                    "tensor-grid", "--tol", "1e-6"});
  REQUIRE(r.code == 0);
  Json body = Json::parse(r.out);
  CHECK(body["pass"].get<bool>());
  CHECK(body["closed_form"] == "1*(2pi)^1");
  double numeric = std::stod(body["numeric"].get<std::string>());
  CHECK(numeric == Catch::Approx(6.2832).margin(1e-3));
  CHECK(body["normalized_value"] == "1");

  // Impossible tolerance turns into a verification failure (exit 1).
  auto fail = run_cli({"intertwine", "--n", "2", "--k", "1", "--eta-hi", "2", "--tol", "0"});
  CHECK(fail.code == 1);
}

TEST_CASE("diagram subcommand produces a PASS report with the ledger", "[cli]") {
  auto r = run_cli({"diagram", "--field", "gauss", "--n", "2", "--eta", "0,2", "--sigma", "conj"});
  REQUIRE(r.code == 0);
  Json body = Json::parse(r.out);
  CHECK(body["pass"].get<bool>());
  REQUIRE(body["reports"].size() == 2);
  CHECK(body["reports"][0]["axioms"]["waldspurger"] == 1);
  CHECK(body["reports"][1]["axioms"]["harder"] == 1);
  CHECK(body["reports"][1]["axioms"]["waldspurger"] == 1);
}

TEST_CASE("field subcommand reports tower constants", "[cli]") {
  auto r = run_cli({"field", "--field", "gauss-root-1pi", "--sigma", "s3"});
  REQUIRE(r.code == 0);
  Json body = Json::parse(r.out);
  CHECK(body["Nabla"] == "4*sqrt(2)");
  CHECK(body["Delta"] == "-4");
  CHECK(body["abs_disc"] == "512");
  CHECK(body["sigmas"][0]["epsilon"] == -1);
  CHECK(body["sigmas"][0]["chi"] == -1);
  CHECK(body["sigmas"][0]["sign_identity"].get<bool>());
}

TEST_CASE("kostant subcommand with exhaustive verification", "[cli]") {
  auto r = run_cli({"kostant", "--field", "gauss", "--n", "2", "--eta", "0,2",
                    "--verify-unique"});
  REQUIRE(r.code == 0);
  Json body = Json::parse(r.out);
  CHECK(body["pass"].get<bool>());
  CHECK(body["bottom_degree"] == 1);
  for (const auto& rec : body["representatives"]) {
    CHECK(rec["unique_match"].get<bool>());
    CHECK(rec["length"] == 1);
  }
}

TEST_CASE("constant-term subcommand", "[cli]") {
  auto r = run_cli({"constant-term", "--field", "gauss", "--n", "2", "--eta", "0,2"});
  REQUIRE(r.code == 0);
  Json body = Json::parse(r.out);
  CHECK(body["coefficients"][0]["coefficient"] ==
        "1*|delta|^(-1/2)*L(-1,eta)/L(0,eta)");
  CHECK(body["coefficients"][1]["coefficient"] == "1");
  CHECK(body["entry_n_is_identity"].get<bool>());
}

TEST_CASE("usage and config errors exit with 2", "[cli]") {
  CHECK(run_cli({"no-such-subcommand"}).code == 2);
  CHECK(run_cli({"kostant", "--field", "gauss", "--n", "2", "--eta", "0,1"}).code == 2);
  CHECK(run_cli({"intertwine", "--n", "2", "--k", "5", "--eta-hi", "2"}).code == 2);
  CHECK(run_cli({"diagram", "--field", "gauss", "--n", "2"}).code == 2);
}

TEST_CASE("self-test flag runs the module suites", "[cli]") {
  auto r = run_cli({"weyl", "--self-test"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run_cli({"intertwine", "--self-test"}).code == 0);
}

TEST_CASE("byte-identical output for identical configs", "[cli]") {
  std::vector<std::string> args{"intertwine", "--n", "4", "--k", "1", "--eta-hi", "4",
                                "--method", "monte-carlo", "--samples", "100000",
                                "--seed", "7", "--tol", "0.05"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  auto c = run_cli({"diagram", "--curated"});
  auto d = run_cli({"diagram", "--curated"});
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("text format renders a flat summary", "[cli]") {
  auto r = run_cli({"weyl", "--n", "2", "--format", "text"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("command: weyl") != std::string::npos);
}

TEST_CASE("config file provides defaults", "[cli]") {
  std::string path = "eiscoh_test_config.ini";
  {
    std::ofstream f(path);
    f << "[intertwine]\n";
    f << "n=2\n";
    f << "k=1\n";
    f << "eta-hi=2\n";
    f << "tol=1e-6\n";
  }
  auto r = run_cli({"--config", path, "intertwine"});
  std::remove(path.c_str());
  REQUIRE(r.code == 0);
  Json body = Json::parse(r.out);
  CHECK(body["k"] == 1);
  CHECK(body["pass"].get<bool>());
}
