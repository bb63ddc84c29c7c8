#include "eiscoh/rationality.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace eiscoh;

namespace {

ScenarioConfig scenario(const std::string& tower, int n, std::vector<long long> eta,
                        std::vector<std::string> sigmas = {}) {
  ScenarioConfig cfg;
  cfg.tower = make_tower(tower);
  cfg.n = n;
  cfg.eta = std::move(eta);
  cfg.name = tower + "-n" + std::to_string(n);
  if (sigmas.empty()) {
    cfg.sigmas = generator_sigmas(*cfg.tower);
  } else {
    for (const auto& s : sigmas) cfg.sigmas.push_back(named_sigma(*cfg.tower, s));
  }
  return cfg;
}

}  // namespace

TEST_CASE("identity sigma passes trivially", "[rationality]") {
  auto cfg = scenario("gauss", 2, {0, 2}, {"id"});
  CHECK(check_intertwine_equivariance(cfg).pass);
  CHECK(check_constant_term_diagram(cfg).pass);
}

TEST_CASE("smallest balanced case over the gauss tower", "[rationality]") {
  auto cfg = scenario("gauss", 2, {0, 2}, {"conj"});
  auto a = check_intertwine_equivariance(cfg);
  CHECK(a.pass);
  auto b = check_constant_term_diagram(cfg);
  CHECK(b.pass);
  CHECK(b.body["discriminant_c"] == "-1");
}

TEST_CASE("per-k sign factors on the d=2 tower", "[rationality]") {
  auto cfg = scenario("gauss-root-1pi", 3, {-1, 3, -1, 3}, {"s3"});
  auto rep = check_intertwine_equivariance(cfg);
  CHECK(rep.pass);
  // chi_8(3) = -1, so the k-th record carries (-1)^{n-k} on both sides.
  for (const auto& rec : rep.body["records"]) {
    int k = rec["k"].get<int>();
    int expect = ((3 - k) % 2 == 0) ? 1 : -1;
    CHECK(rec["epsilon_pow"].get<int>() == expect);
    CHECK(rec["nabla_ratio_pow"].get<int>() == expect);
  }
  CHECK(check_constant_term_diagram(cfg).pass);
}

TEST_CASE("curated scenarios pass with the exact axiom ledger", "[rationality]") {
  for (const auto& cfg : curated_scenarios()) {
    auto a = check_intertwine_equivariance(cfg);
    CHECK(a.pass);
    REQUIRE(a.axioms.size() == 1);
    CHECK(a.axioms.at("waldspurger") == 1);

    auto b = check_constant_term_diagram(cfg);
    CHECK(b.pass);
    REQUIRE(b.axioms.size() == 2);
    CHECK(b.axioms.at("harder") == cfg.n - 1);
    CHECK(b.axioms.at("waldspurger") == 1);
  }
}

TEST_CASE("reports are byte-identical across runs", "[rationality]") {
  auto cfgs = curated_scenarios();
  for (size_t i = 0; i < 2; ++i) {
    const auto& cfg = cfgs[i];
    CHECK(check_intertwine_equivariance(cfg).to_json_string() ==
          check_intertwine_equivariance(cfg).to_json_string());
    CHECK(check_constant_term_diagram(cfg).to_json_string() ==
          check_constant_term_diagram(cfg).to_json_string());
  }
}

TEST_CASE("k = n entry is the sigma-fixed identity", "[rationality]") {
  auto cfg = scenario("zeta5", 3, {0, 3, -2, 4});
  auto rep = check_constant_term_diagram(cfg);
  CHECK(rep.pass);
  bool saw = false;
  for (const auto& rec : rep.body["records"]) {
    if (rec["k"].get<int>() == 3) {
      saw = true;
      CHECK(rec["is_identity"].get<bool>());
      CHECK(rec["paths_agree"].get<bool>());
    }
  }
  CHECK(saw);
}

TEST_CASE("scenario validation", "[rationality]") {
  ScenarioConfig bad;
  bad.tower = make_tower("gauss");
  bad.n = 2;
  bad.eta = {0, 1};  // not balanced
  bad.name = "bad";
  CHECK_THROWS_AS(check_constant_term_diagram(bad), Error);
  bad.eta = {0};  // wrong arity
  CHECK_THROWS_AS(check_intertwine_equivariance(bad), Error);
  bad.eta = {0, 2};
  bad.n = 1;
  CHECK_THROWS_AS(check_intertwine_equivariance(bad), Error);
}

TEST_CASE("diagram check detects a broken sign convention", "[rationality]") {
  // With the sign lemma factor deliberately misapplied the paths must
  // disagree on the d=2 tower; this guards the checker itself against
  // vacuous passes.
  auto cfg = scenario("gauss-root-1pi", 2, {0, 2, 0, 2}, {"s3"});
  auto ctx = cfg.tower->period_context();
  CharId chi = CharId::untwisted("eta", cfg.eta);
  auto sigma = cfg.sigmas[0];
  auto coeffs = constant_term_coefficients(cfg.n, chi, true, ctx);
  auto a = coeffs[0];
  a.rewrite_discriminant();
  auto sa = sigma_on_ratio(a, sigma.formal());
  // Omit the epsilon factor on purpose: paths must differ.
  CharId schi = apply_sigma(chi, sigma.formal());
  auto b = constant_term_coefficients(cfg.n, schi, true, ctx)[0];
  b.rewrite_discriminant();
  CHECK_FALSE(sa == b);
  // And the honest checker passes.
  CHECK(check_constant_term_diagram(cfg).pass);
}
