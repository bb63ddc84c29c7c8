#pragma once

// Exact arithmetic in a tower Q = L_{-1} < k0 < k1 < k presented by monic
// polynomials, one per layer. Elements live in the absolute Q-algebra of
// dimension [k:Q] with a precomputed multiplication table; the three
// sub-levels occupy prefix index ranges, which keeps relative traces and
// determinants over intermediate fields straightforward.

#include "eiscoh/rational.hpp"

#include <vector>

namespace eiscoh {

// Tower presentation. Coefficients are listed ascending; each polynomial is
// monic. f0 has rational coefficients; f1 coefficients are elements of k0
// (rational vectors of length deg f0); f2 coefficients are elements of k1
// (vectors of length deg f1 of k0-elements).
struct TowerSpec {
  std::vector<Rational> f0;
  std::vector<std::vector<Rational>> f1;
  std::vector<std::vector<std::vector<Rational>>> f2;
};

using FlatElem = std::vector<Rational>;

namespace detail {

// Nested polynomial elements used only while building the multiplication
// table. level 0 entries are rationals; higher levels are coefficient
// vectors over the level below.
struct Nested {
  int level = 0;
  Rational r;
  std::vector<Nested> v;

  static Nested scalar(int level, const Rational& x) {
    Nested n;
    n.level = level;
    if (level == 0) { n.r = x; return n; }
    n.v.assign(1, scalar(level - 1, x));
    return n;
  }
};

inline Nested nested_add(const Nested& a, const Nested& b) {
  if (a.level != b.level) throw Error("nested_add: level mismatch");
  Nested out;
  out.level = a.level;
  if (a.level == 0) { out.r = a.r + b.r; return out; }
  size_t n = std::max(a.v.size(), b.v.size());
  out.v.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i < a.v.size() && i < b.v.size()) out.v.push_back(nested_add(a.v[i], b.v[i]));
    else if (i < a.v.size()) out.v.push_back(a.v[i]);
    else out.v.push_back(b.v[i]);
  }
  return out;
}

inline Nested nested_neg(const Nested& a) {
  Nested out = a;
  if (a.level == 0) { out.r = -a.r; return out; }
  for (auto& c : out.v) c = nested_neg(c);
  return out;
}

inline bool nested_is_zero(const Nested& a) {
  if (a.level == 0) return a.r == 0;
  for (const auto& c : a.v)
    if (!nested_is_zero(c)) return false;
  return true;
}

class NestedRing {
public:
  // minpoly[l] = coefficients (ascending, monic) of the layer-l polynomial,
  // as Nested elements of level l-1 (level -1 treated as rational).
  std::vector<std::vector<Nested>> minpoly;

  int degree(int level) const { return static_cast<int>(minpoly[static_cast<size_t>(level)].size()) - 1; }

  Nested mul(const Nested& a, const Nested& b) const {
    if (a.level != b.level) throw Error("nested mul: level mismatch");
    if (a.level == 0) {
      Nested out;
      out.level = 0;
      out.r = a.r * b.r;
      return out;
    }
    std::vector<Nested> prod(a.v.size() + b.v.size() - 1,
                             Nested::scalar(a.level - 1, Rational(0)));
    for (size_t i = 0; i < a.v.size(); ++i)
      for (size_t j = 0; j < b.v.size(); ++j)
        prod[i + j] = nested_add(prod[i + j], mul(a.v[i], b.v[j]));
    reduce(prod, a.level);
    Nested out;
    out.level = a.level;
    out.v = std::move(prod);
    return out;
  }

  // Reduces a coefficient vector modulo the monic layer polynomial.
  void reduce(std::vector<Nested>& coeffs, int level) const {
    const auto& f = minpoly[static_cast<size_t>(level - 1)];
    const int d = static_cast<int>(f.size()) - 1;
    while (static_cast<int>(coeffs.size()) > d) {
      Nested top = coeffs.back();
      coeffs.pop_back();
      if (nested_is_zero(top)) continue;
      size_t base = coeffs.size() - static_cast<size_t>(d);
      for (int i = 0; i < d; ++i)
        coeffs[base + static_cast<size_t>(i)] =
            nested_add(coeffs[base + static_cast<size_t>(i)], nested_neg(mul(top, f[static_cast<size_t>(i)])));
    }
    while (static_cast<int>(coeffs.size()) < d)
      coeffs.push_back(Nested::scalar(level - 1, Rational(0)));
  }
};

}  // namespace detail

class LayeredAlgebra {
public:
  int d0 = 0, d1 = 0, d2 = 0, dim = 0;
  TowerSpec spec;

  explicit LayeredAlgebra(TowerSpec s) : spec(std::move(s)) {
    d0 = static_cast<int>(spec.f0.size()) - 1;
    d1 = static_cast<int>(spec.f1.size()) - 1;
    d2 = static_cast<int>(spec.f2.size()) - 1;
    if (d0 < 1 || d1 != 2 || d2 < 1)
      throw Error("LayeredAlgebra: degrees must be (>=1, 2, >=1)");
    if (spec.f0.back() != 1) throw Error("LayeredAlgebra: f0 not monic");
    auto is_one_vec = [](const std::vector<Rational>& v) {
      if (v.empty() || v[0] != 1) return false;
      for (size_t i = 1; i < v.size(); ++i)
        if (v[i] != 0) return false;
      return true;
    };
    if (!is_one_vec(spec.f1.back())) throw Error("LayeredAlgebra: f1 not monic");
    bool f2_monic = !spec.f2.back().empty() && is_one_vec(spec.f2.back()[0]);
    for (size_t i = 1; f2_monic && i < spec.f2.back().size(); ++i)
      for (const auto& r : spec.f2.back()[i])
        if (r != 0) f2_monic = false;
    if (!f2_monic) throw Error("LayeredAlgebra: f2 not monic");
    dim = d0 * d1 * d2;
    build_table();
  }

  // Flat basis index of the monomial x^a y^b z^c.
  int index(int a, int b, int c) const { return a + d0 * (b + d1 * c); }

  int subdim(int level) const {
    if (level == 0) return d0;
    if (level == 1) return d0 * d1;
    return dim;
  }

  FlatElem zero() const { return FlatElem(static_cast<size_t>(dim), Rational(0)); }

  FlatElem from_rational(const Rational& q) const {
    FlatElem e = zero();
    e[0] = q;
    return e;
  }

  FlatElem one() const { return from_rational(1); }

  // Generators of the three layers as elements of the absolute algebra.
  FlatElem gen(int level) const {
    FlatElem e = zero();
    if (level == 0) {
      if (d0 > 1) e[1] = 1;
      else e[0] = -spec.f0[0];  // degree-1 layer: root of x + c0
      return e;
    }
    if (level == 1) {
      e[static_cast<size_t>(index(0, 1, 0))] = 1;
      return e;
    }
    if (d2 > 1) {
      e[static_cast<size_t>(index(0, 0, 1))] = 1;
      return e;
    }
    // Trivial top layer z - c: the generator equals c in k1.
    const auto& c0 = spec.f2[0];
    for (int b = 0; b < d1; ++b)
      for (int a = 0; a < d0 && a < static_cast<int>(c0[static_cast<size_t>(b)].size()); ++a)
        e[static_cast<size_t>(index(a, b, 0))] = -c0[static_cast<size_t>(b)][static_cast<size_t>(a)];
    return e;
  }

  bool is_zero(const FlatElem& a) const {
    for (const auto& c : a)
      if (c != 0) return false;
    return true;
  }

  FlatElem add(const FlatElem& a, const FlatElem& b) const {
    FlatElem out = a;
    for (int i = 0; i < dim; ++i) out[static_cast<size_t>(i)] += b[static_cast<size_t>(i)];
    return out;
  }

  FlatElem sub(const FlatElem& a, const FlatElem& b) const {
    FlatElem out = a;
    for (int i = 0; i < dim; ++i) out[static_cast<size_t>(i)] -= b[static_cast<size_t>(i)];
    return out;
  }

  FlatElem scale(const Rational& q, const FlatElem& a) const {
    FlatElem out = a;
    for (auto& c : out) c *= q;
    return out;
  }

  FlatElem mul(const FlatElem& a, const FlatElem& b) const {
    FlatElem out = zero();
    for (int i = 0; i < dim; ++i) {
      if (a[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; j < dim; ++j) {
        if (b[static_cast<size_t>(j)] == 0) continue;
        const Rational c = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
        const FlatElem& t = table_[static_cast<size_t>(i)][static_cast<size_t>(j)];
        for (int m = 0; m < dim; ++m) out[static_cast<size_t>(m)] += c * t[static_cast<size_t>(m)];
      }
    }
    return out;
  }

  FlatElem pow(FlatElem a, long long e) const {
    FlatElem out = one();
    while (e > 0) {
      if (e & 1) out = mul(out, a);
      a = mul(a, a);
      e >>= 1;
    }
    return out;
  }

  bool in_sublevel(const FlatElem& a, int level) const {
    for (int i = subdim(level); i < dim; ++i)
      if (a[static_cast<size_t>(i)] != 0) return false;
    return true;
  }

  // Multiplication matrix of a on the sub-level algebra, over Q.
  std::vector<std::vector<Rational>> mul_matrix(const FlatElem& a, int level) const {
    const int s = subdim(level);
    if (!in_sublevel(a, level)) throw Error("mul_matrix: element not in sub-level");
    std::vector<std::vector<Rational>> m(static_cast<size_t>(s), std::vector<Rational>(static_cast<size_t>(s)));
    for (int j = 0; j < s; ++j) {
      FlatElem ej = zero();
      ej[static_cast<size_t>(j)] = 1;
      FlatElem col = mul(a, ej);
      if (!in_sublevel(col, level)) throw Error("mul_matrix: sub-level not closed");
      for (int i = 0; i < s; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = col[static_cast<size_t>(i)];
    }
    return m;
  }

  // Trace and norm of a down to Q, viewing a inside the given sub-level.
  Rational trace_to_q(const FlatElem& a, int level) const {
    auto m = mul_matrix(a, level);
    Rational t = 0;
    for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return t;
  }

  Rational norm_to_q(const FlatElem& a, int level) const { return det_q(mul_matrix(a, level)); }

  // Relative trace one layer down: level 2 -> 1 or 1 -> 0.
  FlatElem relative_trace(const FlatElem& a, int from_level) const {
    if (from_level != 2 && from_level != 1) throw Error("relative_trace: bad level");
    const int block = subdim(from_level - 1);
    const int count = (from_level == 2) ? d2 : d1;
    if (!in_sublevel(a, from_level)) throw Error("relative_trace: element not in level");
    FlatElem out = zero();
    for (int g = 0; g < count; ++g) {
      FlatElem eg = zero();
      eg[static_cast<size_t>(block * g)] = 1;  // basis monomial of the top variable
      FlatElem prod = mul(a, eg);
      for (int i = 0; i < block; ++i)
        out[static_cast<size_t>(i)] += prod[static_cast<size_t>(block * g + i)];
    }
    return out;
  }

  FlatElem inverse(const FlatElem& a, int level) const {
    const int s = subdim(level);
    auto m = mul_matrix(a, level);
    // Solve m * x = e_0.
    std::vector<Rational> rhs(static_cast<size_t>(s), Rational(0));
    rhs[0] = 1;
    auto x = solve_q(m, rhs);
    FlatElem out = zero();
    for (int i = 0; i < s; ++i) out[static_cast<size_t>(i)] = x[static_cast<size_t>(i)];
    return out;
  }

  // Determinant of a matrix with entries in the sub-level field.
  FlatElem det_subfield(std::vector<std::vector<FlatElem>> m, int level) const {
    const size_t n = m.size();
    FlatElem det = one();
    int sign = 1;
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      while (piv < n && is_zero(m[piv][col])) ++piv;
      if (piv == n) return zero();
      if (piv != col) {
        std::swap(m[piv], m[col]);
        sign = -sign;
      }
      det = mul(det, m[col][col]);
      FlatElem inv = inverse(m[col][col], level);
      for (size_t row = col + 1; row < n; ++row) {
        if (is_zero(m[row][col])) continue;
        FlatElem factor = mul(m[row][col], inv);
        for (size_t j = col; j < n; ++j)
          m[row][j] = sub(m[row][j], mul(factor, m[col][j]));
      }
    }
    return sign > 0 ? det : scale(Rational(-1), det);
  }

  static Rational det_q(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    Rational det = 1;
    int sign = 1;
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) return Rational(0);
      if (piv != col) {
        std::swap(m[piv], m[col]);
        sign = -sign;
      }
      det *= m[col][col];
      for (size_t row = col + 1; row < n; ++row) {
        if (m[row][col] == 0) continue;
        Rational f = m[row][col] / m[col][col];
        for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
      }
    }
    return sign > 0 ? det : -det;
  }

  static std::vector<Rational> solve_q(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
    const size_t n = m.size();
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      while (piv < n && m[piv][col] == 0) ++piv;
      if (piv == n) throw Error("solve_q: singular system (not a field element?)");
      std::swap(m[piv], m[col]);
      std::swap(rhs[piv], rhs[col]);
      Rational inv = Rational(1) / m[col][col];
      for (size_t j = col; j < n; ++j) m[col][j] *= inv;
      rhs[col] *= inv;
      for (size_t row = 0; row < n; ++row) {
        if (row == col || m[row][col] == 0) continue;
        Rational f = m[row][col];
        for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        rhs[row] -= f * rhs[col];
      }
    }
    return rhs;
  }

private:
  std::vector<std::vector<FlatElem>> table_;

  void build_table() {
    using detail::Nested;
    detail::NestedRing ring;
    // Layer polynomials as Nested coefficient vectors.
    std::vector<Nested> f0c, f1c, f2c;
    for (const auto& c : spec.f0) f0c.push_back(Nested::scalar(0, c));
    for (const auto& c : spec.f1) {
      Nested n;
      n.level = 1;
      for (const auto& r : c) n.v.push_back(Nested::scalar(0, r));
      while (static_cast<int>(n.v.size()) < d0) n.v.push_back(Nested::scalar(0, Rational(0)));
      f1c.push_back(n);
    }
    for (const auto& c : spec.f2) {
      Nested n;
      n.level = 2;
      for (const auto& sub : c) {
        Nested m;
        m.level = 1;
        for (const auto& r : sub) m.v.push_back(Nested::scalar(0, r));
        while (static_cast<int>(m.v.size()) < d0) m.v.push_back(Nested::scalar(0, Rational(0)));
        n.v.push_back(m);
      }
      while (static_cast<int>(n.v.size()) < d1) {
        Nested m;
        m.level = 1;
        m.v.assign(static_cast<size_t>(d0), Nested::scalar(0, Rational(0)));
        n.v.push_back(m);
      }
      f2c.push_back(n);
    }
    // Coefficient levels expected by NestedRing::reduce: minpoly of layer l
    // is a vector of level-(l-1) Nested... but f0 coefficients are plain
    // rationals, kept as level-0 scalars of the trivial kind.
    ring.minpoly.push_back(f0c);
    ring.minpoly.push_back(f1c);
    ring.minpoly.push_back(f2c);

    auto monomial = [&](int a, int b, int c) {
      Nested x;
      x.level = 3;
      x.v.assign(static_cast<size_t>(c) + 1, Nested());
      for (int g = 0; g <= c; ++g) {
        Nested& zc = x.v[static_cast<size_t>(g)];
        zc.level = 2;
        zc.v.assign(static_cast<size_t>(d1), Nested());
        for (int h = 0; h < d1; ++h) {
          Nested& yc = zc.v[static_cast<size_t>(h)];
          yc.level = 1;
          yc.v.assign(static_cast<size_t>(d0), Nested::scalar(0, Rational(0)));
          if (g == c && h == b) yc.v[static_cast<size_t>(a)] = Nested::scalar(0, Rational(1));
        }
      }
      return x;
    };

    table_.assign(static_cast<size_t>(dim),
                  std::vector<FlatElem>(static_cast<size_t>(dim), zero()));
    for (int m1 = 0; m1 < dim; ++m1) {
      const int a1 = m1 % d0, b1 = (m1 / d0) % d1, c1 = m1 / (d0 * d1);
      for (int m2 = 0; m2 < dim; ++m2) {
        const int a2 = m2 % d0, b2 = (m2 / d0) % d1, c2 = m2 / (d0 * d1);
        Nested prod = ring.mul(monomial(a1, b1, c1), monomial(a2, b2, c2));
        FlatElem flat = zero();
        for (int g = 0; g < static_cast<int>(prod.v.size()) && g < d2; ++g)
          for (int h = 0; h < static_cast<int>(prod.v[static_cast<size_t>(g)].v.size()) && h < d1; ++h)
            for (int a = 0; a < static_cast<int>(prod.v[static_cast<size_t>(g)].v[static_cast<size_t>(h)].v.size()) && a < d0; ++a)
              flat[static_cast<size_t>(index(a, h, g))] =
                  prod.v[static_cast<size_t>(g)].v[static_cast<size_t>(h)].v[static_cast<size_t>(a)].r;
        table_[static_cast<size_t>(m1)][static_cast<size_t>(m2)] = std::move(flat);
      }
    }
  }
};

}  // namespace eiscoh
