#pragma once

// Numerical embeddings of a layered field into C at 50-digit working
// precision: simultaneous root refinement per layer, certified isolation,
// conjugation pairing, restriction to E_{k1}, and the fixed total order
// tau_{1,1}, bar-tau_{1,1}, ..., tau_{r1,r2}, bar-tau_{r1,r2}.

#include "eiscoh/numberfield.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace eiscoh {

// All complex roots of a monic polynomial (ascending complex coefficients)
// by Durand-Kerner iteration, refined until the update is below 1e-45 and
// certified pairwise-isolated.
inline std::vector<Complex50> poly_roots(const std::vector<Complex50>& coeffs) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) return {};
  if (d == 1) return {-coeffs[0]};
  Real50 radius = 1;
  for (int i = 0; i < d; ++i) radius = std::max(radius, Real50(1) + abs(coeffs[static_cast<size_t>(i)]));
  std::vector<Complex50> z(static_cast<size_t>(d));
  Complex50 seed(Real50("0.4"), Real50("0.9"));
  Complex50 cur(1, 0);
  for (int i = 0; i < d; ++i) {
    cur *= seed;
    z[static_cast<size_t>(i)] = radius * cur;
  }
  auto eval = [&](const Complex50& x) {
    Complex50 v = coeffs[static_cast<size_t>(d)];
    for (int i = d - 1; i >= 0; --i) v = v * x + coeffs[static_cast<size_t>(i)];
    return v;
  };
  Real50 last_update = 1;
  for (int iter = 0; iter < 500; ++iter) {
    last_update = 0;
    for (int i = 0; i < d; ++i) {
      Complex50 denom = 1;
      for (int j = 0; j < d; ++j)
        if (j != i) denom *= (z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
      Complex50 step = eval(z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= step;
      last_update = std::max(last_update, abs(step));
    }
    if (last_update < Real50("1e-45")) break;
  }
  if (last_update > Real50("1e-40")) throw Error("poly_roots: refinement did not converge");
  Real50 sep = -1;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Real50 dist = abs(z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)]);
      if (sep < 0 || dist < sep) sep = dist;
    }
  if (d > 1 && sep < Real50("1e-30"))
    throw Error("poly_roots: roots not certifiably isolated (repeated factor?)");
  return z;
}

// One embedding of the tower: images of the three layer generators.
struct EmbeddingValues {
  Complex50 x, y, z;
};

class EmbeddingSet {
public:
  size_t r1 = 0, r2 = 0;
  std::vector<EmbeddingValues> values;  // indexed by label in the fixed order

  // label = 2*(i*r2 + j) + bar
  size_t count() const { return 2 * r1 * r2; }
  size_t label(size_t i, size_t j, int bar) const { return 2 * (i * r2 + j) + static_cast<size_t>(bar); }
  size_t bar(size_t l) const { return l ^ 1u; }
  bool is_barred(size_t l) const { return (l & 1u) != 0; }
  size_t fiber_i(size_t l) const { return (l >> 1) / r2; }
  size_t fiber_j(size_t l) const { return (l >> 1) % r2; }

  // Restriction to E_{k1}; base labels ordered tau_1, bar-tau_1, ...
  size_t base_count() const { return 2 * r1; }
  size_t base_of(size_t l) const { return 2 * fiber_i(l) + (is_barred(l) ? 1 : 0); }

  std::vector<size_t> conj_pairing() const {
    std::vector<size_t> p(count());
    for (size_t l = 0; l < count(); ++l) p[l] = bar(l);
    return p;
  }

  // Value of a flat element under the embedding with the given label.
  Complex50 value(const LayeredAlgebra& alg, const FlatElem& e, size_t l) const {
    const auto& v = values[l];
    Complex50 out = 0;
    for (int m = 0; m < alg.dim; ++m) {
      if (e[static_cast<size_t>(m)] == 0) continue;
      const int a = m % alg.d0, b = (m / alg.d0) % alg.d1, c = m / (alg.d0 * alg.d1);
      Complex50 term(to_real(e[static_cast<size_t>(m)]), Real50(0));
      for (int t = 0; t < a; ++t) term *= v.x;
      for (int t = 0; t < b; ++t) term *= v.y;
      for (int t = 0; t < c; ++t) term *= v.z;
      out += term;
    }
    return out;
  }

  // Value of a k1-element under a base label (2*i + bar).
  Complex50 base_value(const LayeredAlgebra& alg, const FlatElem& e, size_t base) const {
    size_t l = label(base / 2, 0, static_cast<int>(base % 2));
    if (!alg.in_sublevel(e, 1)) throw Error("base_value: element not in k1");
    return value(alg, e, l);
  }
};

inline EmbeddingSet build_embeddings(const LayeredAlgebra& alg) {
  EmbeddingSet out;
  out.r1 = static_cast<size_t>(alg.d0);
  out.r2 = static_cast<size_t>(alg.d2);
  const Real50 tol("1e-38");

  auto to_c = [](const Rational& q) { return Complex50(to_real(q), Real50(0)); };

  // Roots of f0: all real for a valid tower.
  std::vector<Complex50> f0c;
  for (const auto& c : alg.spec.f0) f0c.push_back(to_c(c));
  std::vector<Complex50> xroots = poly_roots(f0c);
  for (const auto& x : xroots)
    if (abs(x.imag()) > tol) throw Error("build_embeddings: k0 is not totally real");
  std::sort(xroots.begin(), xroots.end(),
            [](const Complex50& a, const Complex50& b) { return a.real() < b.real(); });

  out.values.assign(out.count(), EmbeddingValues{});
  for (size_t i = 0; i < out.r1; ++i) {
    const Complex50 x(xroots[i].real(), Real50(0));
    // f1 over this embedding of k0.
    auto eval_k0 = [&](const std::vector<Rational>& c) {
      Complex50 v = 0, p = 1;
      for (const auto& r : c) {
        v += to_c(r) * p;
        p *= x;
      }
      return v;
    };
    std::vector<Complex50> f1c;
    for (const auto& c : alg.spec.f1) f1c.push_back(eval_k0(c));
    auto yroots = poly_roots(f1c);
    if (yroots.size() != 2 || abs(yroots[0].imag()) < tol || abs(yroots[1].imag()) < tol)
      throw Error("build_embeddings: k1 is not CM over this place");
    if (abs(yroots[0] - conj(yroots[1])) > Real50("1e-30"))
      throw Error("build_embeddings: k1 roots are not a conjugate pair");
    const Complex50 y = yroots[0].imag() > 0 ? yroots[0] : yroots[1];

    auto eval_k1 = [&](const std::vector<std::vector<Rational>>& c) {
      Complex50 v = 0, p = 1;
      for (const auto& sub : c) {
        v += eval_k0(sub) * p;
        p *= y;
      }
      return v;
    };
    std::vector<Complex50> zroots;
    if (alg.d2 == 1) {
      zroots.push_back(-eval_k1(alg.spec.f2[0]));
    } else {
      std::vector<Complex50> f2c;
      for (const auto& c : alg.spec.f2) f2c.push_back(eval_k1(c));
      zroots = poly_roots(f2c);
    }
    std::sort(zroots.begin(), zroots.end(), [](const Complex50& a, const Complex50& b) {
      if (a.real() != b.real()) return a.real() < b.real();
      return a.imag() < b.imag();
    });
    for (size_t j = 0; j < out.r2; ++j) {
      out.values[out.label(i, j, 0)] = EmbeddingValues{x, y, zroots[j]};
      out.values[out.label(i, j, 1)] = EmbeddingValues{x, conj(y), conj(zroots[j])};
    }
  }

  // Totally imaginary check: every embedding of k must be non-real. The y
  // component is always non-real here, which forces it; assert distinctness
  // of the embedding tuples as an isolation guarantee.
  for (size_t a = 0; a < out.count(); ++a)
    for (size_t b = a + 1; b < out.count(); ++b) {
      Real50 d = abs(out.values[a].x - out.values[b].x) + abs(out.values[a].y - out.values[b].y) +
                 abs(out.values[a].z - out.values[b].z);
      if (d < Real50("1e-30")) throw Error("build_embeddings: embeddings not distinct");
    }
  return out;
}

}  // namespace eiscoh
