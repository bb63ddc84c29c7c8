#include "eiscoh/cmfield.hpp"
#include "eiscoh/quadrature.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace eiscoh;

namespace {

ConjPairing pairing_of(size_t labels) {
  ConjPairing p;
  p.bar.resize(labels);
  for (size_t i = 0; i < labels; i += 2) {
    p.bar[i] = i + 1;
    p.bar[i + 1] = i;
  }
  return p;
}

// Independent oracle: the doubled dot action w(2mu+2rho) - 2rho computed
// from scratch, with (w.x)_i = x_{w(i)}.
std::vector<long long> dot_oracle(const Permutation& w, const std::vector<long long>& mu) {
  const int n = w.size();
  std::vector<long long> x(static_cast<size_t>(n)), out(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i)
    x[static_cast<size_t>(i - 1)] = 2 * mu[static_cast<size_t>(i - 1)] + (n + 1 - 2 * i);
  for (int i = 1; i <= n; ++i)
    out[static_cast<size_t>(i - 1)] = x[static_cast<size_t>(w(i) - 1)] - (n + 1 - 2 * i);
  return out;
}

}  // namespace

TEST_CASE("highest weight from eta", "[kostant]") {
  InfinityType eta;
  eta.eta = {-2};
  CHECK(highest_weight_from_eta(eta, 3).comp[0] == std::vector<long long>{0, 0, -2});
  eta.eta = {3};
  CHECK(highest_weight_from_eta(eta, 3).comp[0] == std::vector<long long>{1, 1, 1});
  eta.eta = {5};
  CHECK(highest_weight_from_eta(eta, 2).comp[0] == std::vector<long long>{4, 1});
  eta.eta = {2};
  CHECK_THROWS_AS(highest_weight_from_eta(eta, 3), Error);
  // Dominance for a spread of admissible values.
  for (long long e : {-7LL, -1LL, 0LL, 4LL, 9LL}) {
    eta.eta = {e};
    auto mu = highest_weight_from_eta(eta, 4).comp[0];
    for (size_t i = 0; i + 1 < mu.size(); ++i) REQUIRE(mu[i] >= mu[i + 1]);
  }
}

TEST_CASE("kostant weight basics", "[kostant]") {
  // Identity leaves mu unchanged.
  Weight mu;
  mu.comp = {{3, 1, 0, -2}};
  WeylElement id = WeylElement::identity(4, 1);
  CHECK(kostant_weight(id, mu) == mu);

  // Hand-computed example: n=2, mu=(1,1), w=[2,1] -> (1,1) - (1,-1) = (0,2).
  Weight mu2;
  mu2.comp = {{1, 1}};
  WeylElement w(std::vector<Permutation>{Permutation({2, 1})});
  CHECK(kostant_weight(w, mu2).comp[0] == std::vector<long long>{0, 2});

  Weight bad;
  bad.comp = {{1, 1, 1}};
  CHECK_THROWS_AS(kostant_weight(w, bad), Error);
}

TEST_CASE("doubled dot-action identity, exhaustive", "[kostant]") {
  // S_4 with the spec's mu, against the independent oracle.
  Weight mu;
  mu.comp = {{3, 1, 0, -2}};
  for_each_permutation(4, [&](const Permutation& p) {
    WeylElement w(std::vector<Permutation>{p});
    auto kw = kostant_weight(w, mu).comp[0];
    auto oracle = dot_oracle(p, mu.comp[0]);
    for (size_t i = 0; i < kw.size(); ++i) REQUIRE(2 * kw[i] == oracle[i]);
  });

  // n <= 5 with random dominant mu.
  DetRng rng(23);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<long long> mu1(static_cast<size_t>(n));
      long long top = 5;
      for (auto& m : mu1) m = (top -= static_cast<long long>(rng.uniform() * 3));
      Weight muw;
      muw.comp = {mu1};
      for_each_permutation(n, [&](const Permutation& p) {
        WeylElement w(std::vector<Permutation>{p});
        auto kw = kostant_weight(w, muw).comp[0];
        auto oracle = dot_oracle(p, mu1);
        for (size_t i = 0; i < kw.size(); ++i) REQUIRE(2 * kw[i] == oracle[i]);
      });
    }
  }

  // Spot-check for products of two embeddings, n <= 4.
  for (int n = 2; n <= 4; ++n) {
    Weight muw;
    muw.comp = {{4, 1, 0, -1}, {2, 2, 1, -3}};
    for (auto& c : muw.comp) c.resize(static_cast<size_t>(n));
    for_each_weyl_element(n, 2, [&](const WeylElement& w) {
      auto kw = kostant_weight(w, muw);
      auto dd = dot_action_doubled(w, muw);
      for (size_t l = 0; l < 2; ++l)
        for (size_t i = 0; i < kw.comp[l].size(); ++i)
          REQUIRE(2 * kw.comp[l][i] == dd.comp[l][i]);
    });
  }
}

TEST_CASE("find_wk matches the case-by-case cycles", "[kostant]") {
  // n=2, k=2, pair (0,2): identity at the eta<=0 label, transposition at the
  // eta>=n label; length 1 = c_2.
  InfinityType eta;
  eta.eta = {0, 2};
  auto conj = pairing_of(2);
  auto w = find_wk(eta, conj, 2, 2);
  CHECK(w.at(0) == Permutation::identity(2));
  CHECK(w.at(1) == Permutation({2, 1}));
  CHECK(w.length() == 1);
  CHECK(bottom_degree(2, 2) == 1);

  // n=3, k=2, eta_iota = -1 component is (2 3)^{-1} = [1,3,2].
  InfinityType eta3;
  eta3.eta = {-1, 4};
  auto w3 = find_wk(eta3, pairing_of(2), 2, 3);
  CHECK(w3.at(0) == Permutation({1, 3, 2}));

  // Per-place length (n-k) + (k-1) = n-1, all k.
  for (int n = 2; n <= 5; ++n) {
    InfinityType e;
    e.eta = {0, static_cast<long long>(n + 1)};
    for (int k = 1; k <= n; ++k) {
      auto wk = find_wk(e, pairing_of(2), k, n);
      CHECK(wk.at(0).length() == n - k);
      CHECK(wk.at(1).length() == k - 1);
      CHECK(wk.length() == n - 1);
    }
  }

  CHECK_THROWS_AS(find_wk(eta, conj, 3, 2), Error);
  InfinityType unbalanced;
  unbalanced.eta = {0, 1};
  CHECK_THROWS_AS(find_wk(unbalanced, conj, 1, 2), Error);
}

TEST_CASE("find_wk sigma-equivariance over tower generating sets", "[kostant]") {
  for (const char* name : {"gauss", "zeta5", "zeta12", "gauss-root-1pi"}) {
    auto t = make_tower(name);
    auto conj = t->conj_pairing();
    InfinityType eta;
    eta.eta.assign(t->emb.count(), 0);
    // Fiber-constant balanced type so every twist stays balanced.
    for (size_t l = 0; l < t->emb.count(); ++l) eta.eta[l] = t->emb.is_barred(l) ? 5 : -1;
    for (int n = 2; n <= 4; ++n)
      for (int k = 1; k <= n; ++k)
        for (const auto& sigma : generator_sigmas(*t)) {
          auto lhs = find_wk(eta, conj, k, n).sigma_action(sigma.perm);
          auto rhs = find_wk(eta.sigma_action(sigma.perm), conj, k, n);
          REQUIRE(lhs == rhs);
        }
  }
}

TEST_CASE("unique Kostant match by exhaustive enumeration", "[kostant]") {
  InfinityType eta;
  eta.eta = {0, 2};
  auto conj = pairing_of(2);
  auto rep2 = verify_unique_match(eta, conj, 2, 2);
  CHECK(rep2.pass);
  CHECK(rep2.enumerated == 4);
  CHECK(rep2.matches == 1);
  CHECK(rep2.min_match_length == 1);
  REQUIRE(rep2.match.has_value());
  CHECK(rep2.match->at(0) == Permutation::identity(2));
  CHECK(rep2.match->at(1) == Permutation({2, 1}));

  auto rep1 = verify_unique_match(eta, conj, 1, 2);
  CHECK(rep1.pass);
  CHECK(rep1.min_match_length == 1);

  // Random balanced types, both label orders, every k.
  DetRng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng.uniform() * 3);
    InfinityType e;
    e.eta.resize(2);
    long long lo = -static_cast<long long>(rng.uniform() * 4);
    long long hi = n + static_cast<long long>(rng.uniform() * 4);
    bool flip = rng.uniform() < 0.5;
    e.eta[0] = flip ? hi : lo;
    e.eta[1] = flip ? lo : hi;
    for (int k = 1; k <= n; ++k) REQUIRE(verify_unique_match(e, conj, k, n).pass);
  }

  CHECK_THROWS_AS(verify_unique_match(eta, conj, 1, 2, /*cap=*/2), Error);
}

TEST_CASE("kostant degree census", "[kostant]") {
  for (int n = 2; n <= 5; ++n)
    for (size_t labels : {size_t(2), size_t(4)}) {
      auto census = length_census(n, labels);
      // Product formula, convolved independently here.
      auto single = poincare_polynomial(n);
      std::vector<std::uint64_t> expect{1};
      for (size_t l = 0; l < labels; ++l) {
        std::vector<std::uint64_t> next(expect.size() + single.size() - 1, 0);
        for (size_t a = 0; a < expect.size(); ++a)
          for (size_t b = 0; b < single.size(); ++b) next[a + b] += expect[a] * single[b];
        expect = std::move(next);
      }
      CHECK(census == expect);
      std::uint64_t total = 0;
      for (auto c : census) total += c;
      std::uint64_t fact = 1;
      for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
      std::uint64_t power = 1;
      for (size_t l = 0; l < labels; ++l) power *= fact;
      CHECK(total == power);
    }
  // Direct enumeration cross-check at small sizes.
  CHECK(length_census(3, 2) == length_census_direct(3, 2));
  CHECK(length_census(4, 2) == length_census_direct(4, 2));
}

TEST_CASE("balanced and regular predicates", "[kostant]") {
  auto conj = pairing_of(2);
  InfinityType good;
  good.eta = {0, 3};
  CHECK(good.is_balanced(conj, 3));
  CHECK(good.is_regular(3));
  InfinityType both_low;
  both_low.eta = {-1, -2};
  CHECK_FALSE(both_low.is_balanced(conj, 3));
  InfinityType middle;
  middle.eta = {1, 4};
  CHECK_FALSE(middle.is_regular(3));
  CHECK_FALSE(middle.is_balanced(conj, 3));
}
