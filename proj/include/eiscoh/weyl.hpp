#pragma once

// Weyl group machinery for GL_n and for products over a set of field
// embeddings: W_n = S_n and W_{n,inf} = prod_{iota} W_n^{iota}.

#include "eiscoh/permutation.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace eiscoh {

// Root e_i - e_j of GL_n; positive iff i < j.
struct Root {
  int i = 0;
  int j = 0;
  bool positive() const { return i < j; }
};

// The cycle w_k = (k k+1 ... n): w_k(j) = j+1 for k <= j <= n-1, w_k(n) = k,
// identity elsewhere.
inline Permutation coset_cycle(int n, int k) {
  if (n < 2 || k < 1 || k > n) throw Error("coset_cycle: bad (n,k)");
  std::vector<int> v(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    if (j < k) v[static_cast<size_t>(j - 1)] = j;
    else if (j < n) v[static_cast<size_t>(j - 1)] = j + 1;
    else v[static_cast<size_t>(j - 1)] = k;
  }
  return Permutation(std::move(v));
}

// Representatives w with w(Delta_n \ {alpha_{n-1}}) inside the positive
// roots, ordered k = 1..n. Enumerates S_n and cross-asserts the closed-form
// cycles so both derivations guard each other.
inline std::vector<Permutation> coset_reps_p(int n) {
  if (n < 2) throw Error("coset_reps_p: requires n >= 2");
  std::vector<Permutation> reps;
  for_each_permutation(n, [&](const Permutation& w) {
    // w(e_i - e_{i+1}) positive for i = 1..n-2 means w increasing there.
    for (int i = 1; i <= n - 2; ++i)
      if (w(i) > w(i + 1)) return;
    reps.push_back(w);
  });
  // Order by k = w(n).
  std::sort(reps.begin(), reps.end(),
            [n](const Permutation& a, const Permutation& b) { return a(n) < b(n); });
  if (static_cast<int>(reps.size()) != n) throw Error("coset_reps_p: enumeration count != n");
  for (int k = 1; k <= n; ++k) {
    const Permutation& w = reps[static_cast<size_t>(k - 1)];
    if (w != coset_cycle(n, k)) throw Error("coset_reps_p: enumeration disagrees with cycle form");
    if (w.length() != n - k) throw Error("coset_reps_p: length(w_k) != n-k");
  }
  return reps;
}

// Coefficients of prod_{i=1}^{n} (1 + q + ... + q^{i-1}), the length
// generating function of S_n.
inline std::vector<std::uint64_t> poincare_polynomial(int n) {
  std::vector<std::uint64_t> p{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<std::uint64_t> next(p.size() + static_cast<size_t>(i - 1), 0);
    for (size_t a = 0; a < p.size(); ++a)
      for (int b = 0; b < i; ++b) next[a + static_cast<size_t>(b)] += p[a];
    p = std::move(next);
  }
  return p;
}

// A permutation of embedding labels together with its inverse; the minimal
// interface weyl needs from a Galois element.
struct LabelPerm {
  std::vector<size_t> fwd;  // label -> sigma(label)
  std::vector<size_t> inv;

  static LabelPerm identity(size_t count) {
    LabelPerm p;
    p.fwd.resize(count);
    p.inv.resize(count);
    for (size_t i = 0; i < count; ++i) p.fwd[i] = p.inv[i] = i;
    return p;
  }

  static LabelPerm from_forward(std::vector<size_t> fwd) {
    LabelPerm p;
    p.inv.assign(fwd.size(), 0);
    std::vector<char> seen(fwd.size(), 0);
    for (size_t i = 0; i < fwd.size(); ++i) {
      if (fwd[i] >= fwd.size() || seen[fwd[i]]) throw Error("LabelPerm: not a bijection");
      seen[fwd[i]] = 1;
      p.inv[fwd[i]] = i;
    }
    p.fwd = std::move(fwd);
    return p;
  }

  LabelPerm then(const LabelPerm& outer) const {
    // (outer o this)
    if (fwd.size() != outer.fwd.size()) throw Error("LabelPerm: size mismatch");
    std::vector<size_t> f(fwd.size());
    for (size_t i = 0; i < fwd.size(); ++i) f[i] = outer.fwd[fwd[i]];
    return from_forward(std::move(f));
  }

  int signature() const {
    // Count inversions of fwd.
    int s = 1;
    for (size_t i = 0; i < fwd.size(); ++i)
      for (size_t j = i + 1; j < fwd.size(); ++j)
        if (fwd[i] > fwd[j]) s = -s;
    return s;
  }
};

// Element of W_{n,inf}: one permutation per embedding label.
class WeylElement {
public:
  WeylElement() = default;
  WeylElement(std::vector<Permutation> components) : comp_(std::move(components)) {
    for (const auto& w : comp_)
      if (w.size() != comp_.front().size()) throw Error("WeylElement: mixed sizes");
  }

  static WeylElement identity(int n, size_t labels) {
    return WeylElement(std::vector<Permutation>(labels, Permutation::identity(n)));
  }

  size_t labels() const { return comp_.size(); }
  int rank() const { return comp_.empty() ? 0 : comp_.front().size(); }

  const Permutation& at(size_t label) const { return comp_.at(label); }
  Permutation& at(size_t label) { return comp_.at(label); }

  int length() const {
    int l = 0;
    for (const auto& w : comp_) l += w.length();
    return l;
  }

  // (^sigma w)^iota = w^{sigma^{-1} o iota}
  WeylElement sigma_action(const LabelPerm& sigma) const {
    if (sigma.fwd.size() != comp_.size()) throw Error("WeylElement: embedding-set mismatch");
    std::vector<Permutation> out(comp_.size());
    for (size_t i = 0; i < comp_.size(); ++i) out[i] = comp_[sigma.inv[i]];
    return WeylElement(std::move(out));
  }

  bool operator==(const WeylElement& o) const { return comp_ == o.comp_; }
  bool operator!=(const WeylElement& o) const { return comp_ != o.comp_; }
  bool operator<(const WeylElement& o) const { return comp_ < o.comp_; }

  std::string to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < comp_.size(); ++i) {
      if (i) s += ", ";
      s += comp_[i].to_string();
    }
    return s + ")";
  }

private:
  std::vector<Permutation> comp_;
};

// Enumerates W_{n,inf} = S_n^labels via an odometer over a fixed list of S_n
// elements; deterministic order. Throws if the total size exceeds cap.
template <typename Fn>
void for_each_weyl_element(int n, size_t labels, Fn&& fn, std::uint64_t cap = 10000000ull) {
  std::vector<Permutation> sn;
  for_each_permutation(n, [&](const Permutation& w) { sn.push_back(w); });
  std::uint64_t total = 1;
  for (size_t i = 0; i < labels; ++i) {
    if (total > cap / sn.size() + 1) throw Error("for_each_weyl_element: enumeration size cap exceeded");
    total *= sn.size();
  }
  if (total > cap) throw Error("for_each_weyl_element: enumeration size cap exceeded");
  std::vector<size_t> idx(labels, 0);
  std::vector<Permutation> cur(labels, sn[0]);
  while (true) {
    fn(WeylElement(cur));
    size_t pos = 0;
    while (pos < labels) {
      if (++idx[pos] < sn.size()) {
        cur[pos] = sn[idx[pos]];
        break;
      }
      idx[pos] = 0;
      cur[pos] = sn[0];
      ++pos;
    }
    if (pos == labels) break;
  }
}

}  // namespace eiscoh
