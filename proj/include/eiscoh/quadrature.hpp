#pragma once

// Deterministic quadrature utilities: tanh-sinh node families for the
// compactified half-line and whole-line integrals, and a chunked
// Monte-Carlo engine whose results are independent of the thread count.

#include "eiscoh/rational.hpp"

#include <cmath>
#include <cstdint>
#include <mutex>
#include <thread>
#include <vector>

namespace eiscoh {

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail_ts {

// tanh-sinh abscissae on (-1,1), returned as (signed complement, weight):
// t = sign * (1 - comp) with comp = 1 - |t| computed without cancellation.
struct TsNode {
  double comp;
  int sign;
  double weight;
};

inline std::vector<TsNode> tanh_sinh_core(int n, double hscale = 3.0) {
  if (n < 8) throw Error("tanh_sinh_core: too few nodes");
  std::vector<TsNode> out;
  const int half = n / 2;
  const double h = hscale / half;
  const double pio2 = 1.5707963267948966;
  for (int k = -half; k <= half; ++k) {
    double y = pio2 * std::sinh(k * h);
    double comp = 2.0 / (std::exp(2 * std::abs(y)) + 1.0);  // 1 - |tanh(y)|
    if (comp < 1e-60) continue;
    double w = h * pio2 * std::cosh(k * h) / std::pow(std::cosh(y), 2);
    out.push_back(TsNode{comp, k < 0 ? -1 : 1, w});
  }
  return out;
}

}  // namespace detail_ts

// Nodes/weights for integrals over (0, inf): tanh-sinh on (0,1) composed
// with r = u/(1-u).
inline QuadRule half_line_rule(int n) {
  QuadRule rule;
  for (const auto& nd : detail_ts::tanh_sinh_core(n)) {
    // u in (0,1): u = (t+1)/2, complement 1-u = comp/2 for t > 0.
    double one_minus_u = nd.sign > 0 ? nd.comp / 2 : 1.0 - nd.comp / 2;
    double u = 1.0 - one_minus_u;
    double r = u / one_minus_u;
    double jac = 0.5 / (one_minus_u * one_minus_u);
    rule.nodes.push_back(r);
    rule.weights.push_back(nd.weight * jac);
  }
  return rule;
}

// Nodes/weights for integrals over (-inf, inf): tanh-sinh composed with
// x = t/(1-t^2).
inline QuadRule full_line_rule(int n) {
  QuadRule rule;
  for (const auto& nd : detail_ts::tanh_sinh_core(n)) {
    double t = nd.sign * (1.0 - nd.comp);
    double one_minus_t2 = nd.comp * (2.0 - nd.comp);
    rule.nodes.push_back(t / one_minus_t2);
    rule.weights.push_back(nd.weight * (1.0 + t * t) / (one_minus_t2 * one_minus_t2));
  }
  return rule;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Uniform double in [0,1) from the top 53 bits of a 64-bit LCG+mix stream;
// avoids distribution implementation differences across platforms.
class DetRng {
public:
  explicit DetRng(std::uint64_t seed) : state_(splitmix64(seed)) {}
  double uniform() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    std::uint64_t z = splitmix64(state_);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

// Runs `chunks` independent jobs (each seeded deterministically from the
// base seed) across up to `threads` workers and combines the per-chunk
// results by indexed pairwise summation, so the total is bit-identical for
// any thread count.
template <typename ChunkFn>
std::pair<double, double> run_chunked(std::uint64_t chunks, int threads, ChunkFn&& fn) {
  std::vector<std::pair<double, double>> partial(chunks);
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) partial[c] = fn(c);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t next = 0;
    std::mutex mtx;
    auto worker = [&]() {
      while (true) {
        std::uint64_t c;
        {
          std::lock_guard<std::mutex> lock(mtx);
          if (next >= chunks) return;
          c = next++;
        }
        partial[c] = fn(c);
      }
    };
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  while (partial.size() > 1) {
    std::vector<std::pair<double, double>> up;
    up.reserve((partial.size() + 1) / 2);
    for (size_t i = 0; i + 1 < partial.size(); i += 2)
      up.emplace_back(partial[i].first + partial[i + 1].first,
                      partial[i].second + partial[i + 1].second);
    if (partial.size() % 2) up.push_back(partial.back());
    partial = std::move(up);
  }
  return partial.empty() ? std::pair<double, double>{0, 0} : partial[0];
}

}  // namespace eiscoh
