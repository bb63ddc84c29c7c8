#pragma once

// Highest-weight and Kostant-representative bookkeeping: mu from eta, the
// weights of the summands of H^p(n, F^dual), the distinguished elements
// w^(k), the bottom degree, and exhaustive uniqueness checks.

#include "eiscoh/weyl.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace eiscoh {

// Fixed-point-free involution pairing each embedding label with its complex
// conjugate.
struct ConjPairing {
  std::vector<size_t> bar;

  size_t count() const { return bar.size(); }

  // Two labels per archimedean place.
  size_t places() const { return bar.size() / 2; }

  void validate() const {
    for (size_t i = 0; i < bar.size(); ++i) {
      if (bar[i] >= bar.size() || bar[i] == i || bar[bar[i]] != i)
        throw Error("ConjPairing: not a fixed-point-free involution");
    }
  }

  // One representative label per conjugate pair, in label order.
  std::vector<std::pair<size_t, size_t>> pairs() const {
    std::vector<std::pair<size_t, size_t>> out;
    for (size_t i = 0; i < bar.size(); ++i)
      if (i < bar[i]) out.emplace_back(i, bar[i]);
    return out;
  }
};

// Infinity type d(eta): one integer exponent per embedding label.
struct InfinityType {
  std::vector<long long> eta;

  size_t labels() const { return eta.size(); }

  bool is_regular(int n) const {
    for (long long e : eta)
      if (e * (e - n) < 0) return false;
    return true;
  }

  // min <= 0 and max >= n in every conjugate pair; forces regularity.
  bool is_balanced(const ConjPairing& conj, int n) const {
    if (conj.count() != eta.size()) return false;
    for (auto [a, b] : conj.pairs()) {
      long long lo = std::min(eta[a], eta[b]);
      long long hi = std::max(eta[a], eta[b]);
      if (!(lo <= 0 && hi >= n)) return false;
    }
    return true;
  }

  // ^sigma eta, with (^sigma eta)_iota = eta_{sigma^{-1} iota}.
  InfinityType sigma_action(const LabelPerm& sigma) const {
    if (sigma.fwd.size() != eta.size()) throw Error("InfinityType: embedding-set mismatch");
    InfinityType out;
    out.eta.resize(eta.size());
    for (size_t i = 0; i < eta.size(); ++i) out.eta[i] = eta[sigma.inv[i]];
    return out;
  }

  bool operator==(const InfinityType& o) const { return eta == o.eta; }
};

// Integer weight vectors indexed by embedding label.
struct Weight {
  std::vector<std::vector<long long>> comp;

  size_t labels() const { return comp.size(); }
  int rank() const { return comp.empty() ? 0 : static_cast<int>(comp.front().size()); }

  bool operator==(const Weight& o) const { return comp == o.comp; }
  bool operator!=(const Weight& o) const { return comp != o.comp; }
};

// mu^iota = (0,...,0,eta_iota) for eta_iota <= 0 and (eta_iota-n+1,1,...,1)
// for eta_iota >= n; values strictly between 0 and n are rejected.
inline Weight highest_weight_from_eta(const InfinityType& eta, int n) {
  Weight mu;
  mu.comp.reserve(eta.labels());
  for (long long e : eta.eta) {
    std::vector<long long> v(static_cast<size_t>(n));
    if (e <= 0) {
      v.assign(static_cast<size_t>(n), 0);
      v.back() = e;
    } else if (e >= n) {
      v.assign(static_cast<size_t>(n), 1);
      v.front() = e - n + 1;
    } else {
      throw Error("highest_weight_from_eta: eta_iota strictly between 0 and n");
    }
    mu.comp.push_back(std::move(v));
  }
  return mu;
}

// The action of w on torus weights used throughout: (w.x)_i = x_{w(i)}.
// This pullback convention is the one under which the weight of the Kostant
// summand wedge(n_w)^* (x) w.v_mu, with n_w spanned by the inversion pairs
// of w itself, satisfies the dot-action identity; see kostant_weight.
inline std::vector<long long> weight_action(const Permutation& w, const std::vector<long long>& x) {
  std::vector<long long> out(x.size());
  for (int i = 1; i <= w.size(); ++i) out[static_cast<size_t>(i - 1)] = x[static_cast<size_t>(w(i) - 1)];
  return out;
}

inline std::vector<long long> rho_doubled(int n) {
  std::vector<long long> r(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) r[static_cast<size_t>(i - 1)] = n + 1 - 2 * i;
  return r;
}

// Torus weight of wedge^{l(w)} n_w^* (x) C w.v_mu, per embedding:
// w.mu - sum_{(i,j) in Inv(w)} (e_i - e_j).
inline Weight kostant_weight(const WeylElement& w, const Weight& mu) {
  if (w.labels() != mu.labels() || (w.labels() && w.rank() != mu.rank()))
    throw Error("kostant_weight: shape mismatch");
  Weight out;
  out.comp.reserve(mu.labels());
  for (size_t l = 0; l < mu.labels(); ++l) {
    std::vector<long long> v = weight_action(w.at(l), mu.comp[l]);
    for (auto [i, j] : w.at(l).inversion_set()) {
      v[static_cast<size_t>(i - 1)] -= 1;
      v[static_cast<size_t>(j - 1)] += 1;
    }
    out.comp.push_back(std::move(v));
  }
  return out;
}

// w(2mu+2rho) - 2rho, in doubled coordinates, with the same action.
// Equals 2 * kostant_weight(w, mu); the tests enforce this identity.
inline Weight dot_action_doubled(const WeylElement& w, const Weight& mu) {
  Weight out;
  const auto r2 = rho_doubled(mu.rank());
  out.comp.reserve(mu.labels());
  for (size_t l = 0; l < mu.labels(); ++l) {
    std::vector<long long> x(mu.comp[l].size());
    for (size_t i = 0; i < x.size(); ++i) x[i] = 2 * mu.comp[l][i] + r2[i];
    x = weight_action(w.at(l), x);
    for (size_t i = 0; i < x.size(); ++i) x[i] -= r2[i];
    out.comp.push_back(std::move(x));
  }
  return out;
}

// Bottom degree c_n = ([k:Q]/2)(n-1), with [k:Q] = number of embeddings.
inline int bottom_degree(size_t labels, int n) {
  return static_cast<int>(labels / 2) * (n - 1);
}

// The distinguished Kostant representative w^(k): per embedding, the inverse
// cycle (k ... n)^{-1} when eta_iota <= 0 and the cycle (1 ... k) when
// eta_iota >= n.
inline WeylElement find_wk(const InfinityType& eta, const ConjPairing& conj, int k, int n) {
  if (k < 1 || k > n) throw Error("find_wk: k out of range");
  if (!eta.is_balanced(conj, n)) throw Error("find_wk: eta is not balanced");
  std::vector<Permutation> comps;
  comps.reserve(eta.labels());
  for (long long e : eta.eta) {
    if (e <= 0) {
      comps.push_back(coset_cycle(n, k).inverse());
    } else {
      // (1 2 ... k): 1->2,...,k-1->k, k->1.
      std::vector<int> v(static_cast<size_t>(n));
      for (int j = 1; j <= n; ++j) {
        if (j < k) v[static_cast<size_t>(j - 1)] = j + 1;
        else if (j == k) v[static_cast<size_t>(j - 1)] = 1;
        else v[static_cast<size_t>(j - 1)] = j;
      }
      comps.push_back(Permutation(std::move(v)));
    }
  }
  WeylElement w(std::move(comps));
  if (w.length() != bottom_degree(eta.labels(), n))
    throw Error("find_wk: length(w^(k)) != c_n");
  return w;
}

// Algebraic weight of (Lambda^(k)_{eta,inf})^{-1} at each embedding iota:
// entry k is eta_iota - (n-k), entries j > k are 1, entries j < k are 0.
// (Expansion of |.|_v into iota/bar-iota exponents with |z|_v = z zbar.)
inline Weight lambda_k_inverse_weight(const InfinityType& eta, int k, int n) {
  if (k < 1 || k > n) throw Error("lambda_k_inverse_weight: k out of range");
  Weight out;
  out.comp.reserve(eta.labels());
  for (long long e : eta.eta) {
    std::vector<long long> v(static_cast<size_t>(n), 0);
    v[static_cast<size_t>(k - 1)] = e - (n - k);
    for (int j = k + 1; j <= n; ++j) v[static_cast<size_t>(j - 1)] = 1;
    out.comp.push_back(std::move(v));
  }
  return out;
}

struct UniqueMatchReport {
  std::uint64_t enumerated = 0;
  std::uint64_t matches = 0;
  std::optional<WeylElement> match;
  int min_match_length = -1;
  std::uint64_t multiplicity_at_cn = 0;
  bool equals_find_wk = false;
  int expected_bottom_degree = 0;
  bool pass = false;
};

// Exhaustive enumeration of W_{n,inf} comparing kostant_weight against the
// weights of (Lambda^(k))^{-1} for every k at once. The per-S_n data
// (images and inversion sums) is precomputed so the sweep stays cheap for
// the 24^4-sized product groups the acceptance suite exercises.
inline std::vector<UniqueMatchReport> verify_unique_match_all(const InfinityType& eta,
                                                              const ConjPairing& conj, int n,
                                                              std::uint64_t cap = 10000000ull) {
  const size_t labels = eta.labels();
  const Weight mu = highest_weight_from_eta(eta, n);
  std::vector<Permutation> sn;
  for_each_permutation(n, [&](const Permutation& w) { sn.push_back(w); });
  std::uint64_t total = 1;
  for (size_t l = 0; l < labels; ++l) {
    if (total > cap / sn.size() + 1) throw Error("verify_unique_match: enumeration size cap exceeded");
    total *= sn.size();
  }
  if (total > cap) throw Error("verify_unique_match: enumeration size cap exceeded");

  // Per S_n element: one-line images, length, and the inversion-sum delta.
  const size_t sz = sn.size();
  std::vector<int> lengths(sz);
  std::vector<std::vector<long long>> invsum(sz, std::vector<long long>(static_cast<size_t>(n), 0));
  for (size_t s = 0; s < sz; ++s) {
    lengths[s] = sn[s].length();
    for (auto [i, j] : sn[s].inversion_set()) {
      invsum[s][static_cast<size_t>(i - 1)] += 1;
      invsum[s][static_cast<size_t>(j - 1)] -= 1;
    }
  }
  // Per (label, S_n element): the kostant weight component.
  std::vector<std::vector<std::vector<long long>>> comp(
      labels, std::vector<std::vector<long long>>(sz, std::vector<long long>(static_cast<size_t>(n))));
  for (size_t l = 0; l < labels; ++l)
    for (size_t s = 0; s < sz; ++s)
      for (int i = 1; i <= n; ++i)
        comp[l][s][static_cast<size_t>(i - 1)] =
            mu.comp[l][static_cast<size_t>(sn[s](i) - 1)] - invsum[s][static_cast<size_t>(i - 1)];

  std::vector<UniqueMatchReport> reports(static_cast<size_t>(n));
  std::vector<Weight> targets(static_cast<size_t>(n));
  std::vector<WeylElement> predicted(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    targets[static_cast<size_t>(k - 1)] = lambda_k_inverse_weight(eta, k, n);
    predicted[static_cast<size_t>(k - 1)] = find_wk(eta, conj, k, n);
    reports[static_cast<size_t>(k - 1)].expected_bottom_degree = bottom_degree(labels, n);
  }

  std::vector<size_t> idx(labels, 0);
  while (true) {
    for (int k = 1; k <= n; ++k) {
      auto& rep = reports[static_cast<size_t>(k - 1)];
      ++rep.enumerated;
      const auto& target = targets[static_cast<size_t>(k - 1)];
      bool match = true;
      for (size_t l = 0; l < labels && match; ++l)
        if (comp[l][idx[l]] != target.comp[l]) match = false;
      if (match) {
        ++rep.matches;
        int len = 0;
        for (size_t l = 0; l < labels; ++l) len += lengths[idx[l]];
        if (rep.min_match_length < 0 || len < rep.min_match_length) rep.min_match_length = len;
        if (len == rep.expected_bottom_degree) ++rep.multiplicity_at_cn;
        if (!rep.match) {
          std::vector<Permutation> comps;
          for (size_t l = 0; l < labels; ++l) comps.push_back(sn[idx[l]]);
          rep.match = WeylElement(std::move(comps));
        }
      }
    }
    size_t pos = 0;
    while (pos < labels && ++idx[pos] == sz) idx[pos++] = 0;
    if (pos == labels) break;
  }

  for (int k = 1; k <= n; ++k) {
    auto& rep = reports[static_cast<size_t>(k - 1)];
    rep.equals_find_wk = rep.match && *rep.match == predicted[static_cast<size_t>(k - 1)];
    rep.pass = rep.matches == 1 && rep.equals_find_wk &&
               rep.min_match_length == rep.expected_bottom_degree && rep.multiplicity_at_cn == 1;
  }
  return reports;
}

inline UniqueMatchReport verify_unique_match(const InfinityType& eta, const ConjPairing& conj,
                                             int k, int n, std::uint64_t cap = 10000000ull) {
  if (k < 1 || k > n) throw Error("verify_unique_match: k out of range");
  return verify_unique_match_all(eta, conj, n, cap)[static_cast<size_t>(k - 1)];
}

// Length census over W_{n,inf}: counts by degree, computed by convolving the
// per-embedding census (lengths add over components).
inline std::vector<std::uint64_t> length_census(int n, size_t labels) {
  std::vector<std::uint64_t> single(static_cast<size_t>(n * (n - 1) / 2 + 1), 0);
  for_each_permutation(n, [&](const Permutation& w) { ++single[static_cast<size_t>(w.length())]; });
  std::vector<std::uint64_t> census{1};
  for (size_t l = 0; l < labels; ++l) {
    std::vector<std::uint64_t> next(census.size() + single.size() - 1, 0);
    for (size_t a = 0; a < census.size(); ++a)
      for (size_t b = 0; b < single.size(); ++b) next[a + b] += census[a] * single[b];
    census = std::move(next);
  }
  return census;
}

// Same census by direct product enumeration; only for small sizes.
inline std::vector<std::uint64_t> length_census_direct(int n, size_t labels,
                                                       std::uint64_t cap = 10000000ull) {
  std::vector<std::uint64_t> census(static_cast<size_t>(n * (n - 1) / 2) * labels + 1, 0);
  for_each_weyl_element(
      n, labels, [&](const WeylElement& w) { ++census[static_cast<size_t>(w.length())]; }, cap);
  return census;
}

}  // namespace eiscoh
