#include "eiscoh/intertwine.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace eiscoh;

namespace {
constexpr double kTwoPi = 6.283185307179586476925287;
}

TEST_CASE("phi evaluation", "[intertwine]") {
  LocalCharData d{0, 2, 2};
  // Lowest-weight section at the last-coordinate row is 1.
  CHECK(phi_eval(d, Composition::lowest(d), {{0, 0}, {1, 0}}) == std::complex<double>(1, 0));

  // n=2, g=2, beta=(2,0), row=(i,1): i^2/(1+1)^2 = -1/4.
  Composition b;
  b.beta = {2, 0};
  auto v = phi_eval(d, b, {{0, 1}, {1, 0}});
  CHECK(v.real() == Catch::Approx(-0.25).margin(1e-15));
  CHECK(v.imag() == Catch::Approx(0.0).margin(1e-15));

  // A zero entry under a positive exponent kills the value.
  Composition b10;
  b10.beta = {1, 1};
  CHECK(phi_eval(d, b10, {{0, 0}, {1, 0}}) == std::complex<double>(0, 0));

  CHECK_THROWS_AS(phi_eval(d, b, {{0, 0}, {0, 0}}), Error);

  // Homogeneity: phi(lambda row) = lambda^{sum beta} / |lambda|^{2 eta} phi(row).
  std::vector<std::complex<double>> row{{0.3, -0.7}, {1.1, 0.2}};
  std::complex<double> lam(0.8, 0.5);
  std::vector<std::complex<double>> scaled{lam * row[0], lam * row[1]};
  auto lhs = phi_eval(d, b, scaled);
  auto rhs = phi_eval(d, b, row) * lam * lam / std::pow(std::norm(lam), 2.0);
  CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("composition validation", "[intertwine]") {
  LocalCharData d{-1, 3, 2};
  Composition good;
  good.beta = {1, 3};
  CHECK_NOTHROW(good.validate(d));
  Composition bad_sum;
  bad_sum.beta = {1, 1};
  CHECK_THROWS_AS(bad_sum.validate(d), Error);
  Composition neg;
  neg.beta = {-1, 5};
  CHECK_THROWS_AS(neg.validate(d), Error);
  LocalCharData unbalanced{1, 3, 2};
  CHECK_THROWS_AS(unbalanced.validate(), Error);
}

TEST_CASE("closed-form intertwining values", "[intertwine]") {
  // n=2, k=1, eta_hi=2: 2pi / 1.
  LocalCharData d2{0, 2, 2};
  CHECK(intertwine_closed_form(1, 2, d2, Composition::lowest(d2)) == TwoPiValue{1, 1});

  // n=3, k=1, eta_hi=3: (2pi)^2 / (2*1).
  LocalCharData d3{0, 3, 3};
  CHECK(intertwine_closed_form(1, 3, d3, Composition::lowest(d3)) ==
        TwoPiValue{Rational(1, 2), 2});

  // beta != beta_0 vanishes.
  Composition off;
  off.beta = {1, 0, 2};
  CHECK(intertwine_closed_form(1, 3, d3, off) == TwoPiValue{0, 0});

  // k = n evaluates at the identity.
  CHECK(intertwine_closed_form(3, 3, d3, Composition::lowest(d3)) == TwoPiValue{1, 0});
  CHECK(intertwine_closed_form(2, 2, d2, Composition::lowest(d2)) == TwoPiValue{1, 0});
}

TEST_CASE("normalized value is exactly one, symbolically", "[intertwine]") {
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k <= n; ++k)
      for (long long hi = n; hi <= n + 3; ++hi) {
        LocalCharData d{-(hi % 2), hi, n};
        REQUIRE(normalized_value(k, n, d) == TwoPiValue{1, 0});
      }
}

TEST_CASE("telescoping of the closed form", "[intertwine]") {
  for (int n = 2; n <= 6; ++n)
    for (long long hi = n; hi <= n + 3; ++hi) {
      LocalCharData d{0, hi, n};
      for (int k = 1; k < n; ++k) {
        auto a = intertwine_closed_form(k, n, d, Composition::lowest(d));
        auto b = intertwine_closed_form(k + 1, n, d, Composition::lowest(d));
        // closed(k)/closed(k+1) = 2pi / (eta_hi - (n-k)), exactly.
        REQUIRE(a.pi_pow == b.pi_pow + 1);
        REQUIRE(a.coef * Rational(hi - (n - k)) == b.coef);
      }
    }
}

TEST_CASE("radial-iterated oracle, n-k = 1", "[intertwine]") {
  QuadratureConfig cfg;
  for (int n = 2; n <= 4; ++n)
    for (long long hi = n; hi <= n + 3; ++hi) {
      LocalCharData d{0, hi, n};
      auto cf = intertwine_closed_form(n - 1, n, d, Composition::lowest(d));
      auto nm = intertwine_numeric(n - 1, n, d, Composition::lowest(d), cfg);
      REQUIRE(std::abs(nm.estimate.real() - cf.numeric()) <= 1e-8 * std::abs(cf.numeric()));
      REQUIRE(std::abs(nm.estimate.imag()) <= 1e-10 * std::abs(cf.numeric()));
    }
}

TEST_CASE("tensor-grid oracle, n-k in {1,2}", "[intertwine]") {
  QuadratureConfig cfg;
  cfg.method = QuadMethod::TensorGrid;
  LocalCharData d{0, 2, 2};
  auto cf = intertwine_closed_form(1, 2, d, Composition::lowest(d));
  auto nm = intertwine_numeric(1, 2, d, Composition::lowest(d), cfg);
  CHECK(std::abs(nm.estimate.real() - cf.numeric()) <= 1e-6 * cf.numeric());

  LocalCharData d3{0, 4, 3};
  auto cf3 = intertwine_closed_form(1, 3, d3, Composition::lowest(d3));
  auto nm3 = intertwine_numeric(1, 3, d3, Composition::lowest(d3), cfg);
  CHECK(std::abs(nm3.estimate.real() - cf3.numeric()) <= 1e-6 * cf3.numeric());
}

TEST_CASE("vanishing cases are numerically tiny", "[intertwine]") {
  QuadratureConfig cfg;
  LocalCharData d{0, 2, 2};
  Composition b;
  b.beta = {1, 1};
  // radial-iterated: the ring rule annihilates the phase exactly.
  auto r = intertwine_numeric(1, 2, d, b, cfg);
  CHECK(std::abs(r.estimate) <= 1e-6 * kTwoPi);
  cfg.method = QuadMethod::TensorGrid;
  auto t = intertwine_numeric(1, 2, d, b, cfg);
  CHECK(std::abs(t.estimate) <= 1e-6 * kTwoPi);
}

TEST_CASE("monte-carlo oracle with fixed seed", "[intertwine]") {
  LocalCharData d{0, 4, 4};
  QuadratureConfig cfg;
  cfg.method = QuadMethod::MonteCarlo;
  cfg.mc_samples = 200000;
  auto cf = intertwine_closed_form(1, 4, d, Composition::lowest(d));
  auto nm = intertwine_numeric(1, 4, d, Composition::lowest(d), cfg);
  CHECK(std::abs(nm.estimate.real() - cf.numeric()) <= 2e-2 * cf.numeric());

  // Bit-identical across thread counts and across runs.
  auto again = intertwine_numeric(1, 4, d, Composition::lowest(d), cfg);
  CHECK(nm.estimate == again.estimate);
  cfg.threads = 4;
  auto threaded = intertwine_numeric(1, 4, d, Composition::lowest(d), cfg);
  CHECK(nm.estimate == threaded.estimate);

  // A different seed moves the estimate but stays within the bound.
  cfg.threads = 1;
  cfg.seed = 99;
  auto other = intertwine_numeric(1, 4, d, Composition::lowest(d), cfg);
  CHECK(other.estimate != nm.estimate);
  CHECK(std::abs(other.estimate.real() - cf.numeric()) <= 2e-2 * cf.numeric());
}

TEST_CASE("monotone convergence under node doubling", "[intertwine]") {
  LocalCharData d{0, 3, 3};
  auto cf = intertwine_closed_form(1, 3, d, Composition::lowest(d));
  QuadratureConfig a, b;
  a.method = b.method = QuadMethod::TensorGrid;
  a.tensor_nodes = 32;
  b.tensor_nodes = 64;
  double ea = std::abs(intertwine_numeric(1, 3, d, Composition::lowest(d), a).estimate.real() -
                       cf.numeric());
  double eb = std::abs(intertwine_numeric(1, 3, d, Composition::lowest(d), b).estimate.real() -
                       cf.numeric());
  CHECK(eb <= ea + 1e-12);
}

TEST_CASE("quadrature guards", "[intertwine]") {
  // Absolute-convergence guard for the raw-integrand methods: n=2, k=1,
  // eta_hi=2 with beta=(2,0) is only conditionally convergent.
  LocalCharData d{-2, 2, 2};
  Composition b;
  b.beta = {4, 0};
  QuadratureConfig cfg;
  cfg.method = QuadMethod::TensorGrid;
  CHECK_THROWS_AS(intertwine_numeric(1, 2, d, b, cfg), Error);
  cfg.method = QuadMethod::MonteCarlo;
  CHECK_THROWS_AS(intertwine_numeric(1, 2, d, b, cfg), Error);

  // Budget cap.
  QuadratureConfig tiny;
  tiny.eval_budget = 10;
  LocalCharData d3{0, 3, 3};
  CHECK_THROWS_AS(intertwine_numeric(1, 3, d3, Composition::lowest(d3), tiny), Error);

  // Frozen leading entries force an exact zero without integration.
  Composition frozen;
  frozen.beta = {2, 0, 1};
  LocalCharData dd{0, 3, 3};
  auto r = intertwine_numeric(2, 3, dd, frozen, QuadratureConfig{});
  CHECK(r.estimate == std::complex<double>(0, 0));
}
