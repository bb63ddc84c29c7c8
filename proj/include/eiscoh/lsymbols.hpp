#pragma once

// Torus characters Lambda^(k)_{eta,s}, co-root pairings, and a purely
// symbolic algebra of Hecke L-ratios with period atoms. No L-value is ever
// evaluated numerically; the critical-value behavior under Aut(C) enters as
// a formal rewrite rule with an explicit precondition.

#include "eiscoh/kostant.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

namespace eiscoh {

// a + b*s with s the formal complex parameter.
struct AffineExp {
  long long a = 0;
  long long b = 0;
  bool operator==(const AffineExp& o) const { return a == o.a && b == o.b; }
  bool operator<(const AffineExp& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
  std::string to_string() const {
    std::ostringstream os;
    if (b == 0) os << a;
    else {
      if (b == 1) os << "s";
      else if (b == -1) os << "-s";
      else os << b << "s";
      if (a > 0) os << "+" << a;
      else if (a < 0) os << a;
    }
    return os.str();
  }
};

// Identity of a Hecke character symbol: an opaque finite-part label, the
// infinity type, and the accumulated Aut(C) twist applied so far. Two
// symbols are equal exactly when all of these agree; that is the granularity
// at which the toolkit can distinguish characters.
struct CharId {
  std::string base = "eta";
  std::vector<long long> eta;       // current infinity type, in label order
  std::vector<size_t> twist;        // accumulated label permutation (forward)
  long long twist_a = 1;            // accumulated cyclotomic parameter
  long long modulus = 0;            // 0 = untwisted/unknown

  static CharId untwisted(std::string name, std::vector<long long> eta_values) {
    CharId c;
    c.base = std::move(name);
    c.eta = std::move(eta_values);
    c.twist.resize(c.eta.size());
    for (size_t i = 0; i < c.twist.size(); ++i) c.twist[i] = i;
    return c;
  }

  bool operator==(const CharId& o) const {
    return base == o.base && eta == o.eta && twist == o.twist && twist_a == o.twist_a;
  }
  bool operator<(const CharId& o) const {
    return std::tie(base, eta, twist, twist_a) < std::tie(o.base, o.eta, o.twist, o.twist_a);
  }

  std::string to_string() const {
    if (twist_a == 1) {
      bool ident = true;
      for (size_t i = 0; i < twist.size(); ++i) ident &= (twist[i] == i);
      if (ident) return base;
    }
    std::ostringstream os;
    os << "sigma[" << twist_a << "]." << base;
    return os.str();
  }
};

// The data of an Aut(C) element visible to the formal algebra: its label
// permutation on the embedding set and its cyclotomic parameter a mod M.
struct FormalSigma {
  std::string name = "id";
  LabelPerm perm;
  long long a = 1;
  long long modulus = 4;

  bool is_identity() const {
    long long am = a % modulus;
    if (am < 0) am += modulus;
    if (am != 1 % modulus) return false;
    for (size_t i = 0; i < perm.fwd.size(); ++i)
      if (perm.fwd[i] != i) return false;
    return true;
  }
};

inline CharId apply_sigma(const CharId& chi, const FormalSigma& sigma) {
  CharId out = chi;
  if (sigma.perm.fwd.size() != chi.eta.size()) throw Error("apply_sigma: embedding-set mismatch");
  for (size_t i = 0; i < chi.eta.size(); ++i) out.eta[i] = chi.eta[sigma.perm.inv[i]];
  // Compose the twist: new = sigma o old.
  for (size_t i = 0; i < chi.twist.size(); ++i) out.twist[i] = sigma.perm.fwd[chi.twist[i]];
  if (out.modulus == 0) out.modulus = sigma.modulus;
  else if (out.modulus != sigma.modulus) throw Error("apply_sigma: mixed cyclotomic moduli");
  out.twist_a = (chi.twist_a * sigma.a) % out.modulus;
  if (out.twist_a < 0) out.twist_a += out.modulus;
  return out;
}

// Character of the diagonal torus: per coordinate an eta-power and an
// |.|-exponent a + b*s.
struct TorusCharacter {
  int n = 0;
  std::vector<long long> hecke_pow;
  std::vector<AffineExp> abs_pow;
};

// Lambda^(k)_{eta,s}: eta^{-1}(t_k) |t_k|^{-s-k+n} |t_{k+1}|^{-1}...|t_n|^{-1}.
inline TorusCharacter lambda_k(int k, int n) {
  if (k < 1 || k > n) throw Error("lambda_k: k out of range");
  TorusCharacter t;
  t.n = n;
  t.hecke_pow.assign(static_cast<size_t>(n), 0);
  t.abs_pow.assign(static_cast<size_t>(n), AffineExp{0, 0});
  t.hecke_pow[static_cast<size_t>(k - 1)] = -1;
  t.abs_pow[static_cast<size_t>(k - 1)] = AffineExp{static_cast<long long>(n - k), -1};
  for (int j = k + 1; j <= n; ++j) t.abs_pow[static_cast<size_t>(j - 1)] = AffineExp{-1, 0};
  return t;
}

struct GL1Symbol {
  long long hecke_pow = 0;
  AffineExp abs;
};

// Pairing of a torus character with the co-root of e_i - e_j, in the
// normalized coordinates the Langlands formula presumes; the rho-shift
// contributes the integer i - j to the |.|-exponent. For Lambda_{eta,s} and
// alpha = e_i - e_n this yields eta |.|^{s-n+i}.
inline GL1Symbol coroot_pairing(const TorusCharacter& lam, const Root& alpha) {
  if (alpha.i == alpha.j || alpha.i < 1 || alpha.j < 1 || alpha.i > lam.n || alpha.j > lam.n)
    throw Error("coroot_pairing: bad root");
  const size_t i = static_cast<size_t>(alpha.i - 1), j = static_cast<size_t>(alpha.j - 1);
  GL1Symbol s;
  s.hecke_pow = lam.hecke_pow[i] - lam.hecke_pow[j];
  s.abs.a = lam.abs_pow[i].a - lam.abs_pow[j].a + (alpha.i - alpha.j);
  s.abs.b = lam.abs_pow[i].b - lam.abs_pow[j].b;
  return s;
}

struct LSymbol {
  AffineExp arg;
  CharId chi;
  bool operator==(const LSymbol& o) const { return arg == o.arg && chi == o.chi; }
  bool operator<(const LSymbol& o) const { return std::tie(arg, chi) < std::tie(o.arg, o.chi); }
  std::string to_string() const { return "L(" + arg.to_string() + "," + chi.to_string() + ")"; }
};

// Exact relations of the period atoms of one field tower, produced by
// cmfield. P denotes i^{[k:Q]/2} * Delta_k; HalfP its formal square root.
struct PeriodContext {
  int field_degree = 0;      // [k:Q]
  Rational nabla_sq = 1;     // Nabla^2, a positive rational
  BigInt nabla_d = 1;        // squarefree part of Nabla^2
  Rational halfp_pow4 = 1;   // HalfP^4 = (-1)^{[k:Q]/2} * Delta^2, rational
  Rational c = 1;            // |delta|^{1/2} = c * i^{[k:Q]/2} * Delta * Nabla
  Rational abs_delta = 1;    // |delta| for the configured basis

  bool operator==(const PeriodContext& o) const {
    return field_degree == o.field_degree && nabla_sq == o.nabla_sq && nabla_d == o.nabla_d &&
           halfp_pow4 == o.halfp_pow4 && c == o.c && abs_delta == o.abs_delta;
  }
};

// Multiplicative symbolic expression: a rational scalar, powers of the
// formal atoms i, HalfP, Nabla, |delta|^{1/2} and 2pi, and two multisets of
// L-symbols. i^2 = -1, Nabla^2 and HalfP^4 fold into the scalar once a
// PeriodContext is attached; |delta|^{1/2} is kept raw until
// rewrite_discriminant is called.
class FormalLRatio {
public:
  Rational q = 1;
  int ipow = 0;              // in {0,1} once normalized
  long long halfp = 0;       // in {0..3} once a context is attached
  long long nabla = 0;       // in {0,1} once a context is attached
  long long absdelta_half = 0;  // raw power of |delta_k|^{1/2}
  long long twopi = 0;
  std::vector<LSymbol> num;
  std::vector<LSymbol> den;
  std::shared_ptr<const PeriodContext> ctx;

  static FormalLRatio one(std::shared_ptr<const PeriodContext> context = nullptr) {
    FormalLRatio r;
    r.ctx = std::move(context);
    return r;
  }

  bool is_one() const {
    return q == 1 && ipow == 0 && halfp == 0 && nabla == 0 && absdelta_half == 0 && twopi == 0 &&
           num.empty() && den.empty();
  }

  void mul_symbol_num(const LSymbol& s) { num.push_back(s); }
  void mul_symbol_den(const LSymbol& s) { den.push_back(s); }

  FormalLRatio& operator*=(const FormalLRatio& o) {
    if (!ctx && o.ctx) ctx = o.ctx;
    q *= o.q;
    ipow += o.ipow;
    halfp += o.halfp;
    nabla += o.nabla;
    absdelta_half += o.absdelta_half;
    twopi += o.twopi;
    num.insert(num.end(), o.num.begin(), o.num.end());
    den.insert(den.end(), o.den.begin(), o.den.end());
    normalize();
    return *this;
  }

  // Cancels identical L-symbols and folds the atom relations.
  void normalize() {
    std::sort(num.begin(), num.end());
    std::sort(den.begin(), den.end());
    std::vector<LSymbol> n2, d2;
    size_t a = 0, b = 0;
    while (a < num.size() && b < den.size()) {
      if (num[a] == den[b]) { ++a; ++b; }
      else if (num[a] < den[b]) n2.push_back(num[a++]);
      else d2.push_back(den[b++]);
    }
    for (; a < num.size(); ++a) n2.push_back(num[a]);
    for (; b < den.size(); ++b) d2.push_back(den[b]);
    num = std::move(n2);
    den = std::move(d2);

    while (ipow >= 2) { ipow -= 2; q = -q; }
    while (ipow < 0) { ipow += 2; q = -q; }
    if (ctx) {
      while (halfp >= 4) { halfp -= 4; q *= ctx->halfp_pow4; }
      while (halfp < 0) { halfp += 4; q /= ctx->halfp_pow4; }
      while (nabla >= 2) { nabla -= 2; q *= ctx->nabla_sq; }
      while (nabla < 0) { nabla += 2; q /= ctx->nabla_sq; }
    }
  }

  // Eliminates the |delta_k|^{1/2} atom through the discriminant relation
  //   |delta_k|^{1/2} = c * i^{[k:Q]/2} * Delta * Nabla = c * HalfP^2 * Nabla,
  // leaving the expression over the basis (i, HalfP, Nabla, 2pi).
  void rewrite_discriminant() {
    if (absdelta_half == 0) return;
    if (!ctx) throw Error("rewrite_discriminant: no period context attached");
    long long p = absdelta_half;
    absdelta_half = 0;
    if (p > 0) for (long long t = 0; t < p; ++t) q *= ctx->c;
    else for (long long t = 0; t < -p; ++t) q /= ctx->c;
    halfp += 2 * p;
    nabla += p;  // folded modulo Nabla^2 by normalize()
    normalize();
  }

  bool operator==(const FormalLRatio& o) const {
    return q == o.q && ipow == o.ipow && halfp == o.halfp && nabla == o.nabla &&
           absdelta_half == o.absdelta_half && twopi == o.twopi && num == o.num && den == o.den;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << q;
    if (ipow) os << "*i";
    if (absdelta_half) os << "*|delta|^(" << absdelta_half << "/2)";
    if (halfp) os << "*(i^(d/2)*Delta)^(" << halfp << "/2)";
    if (nabla) os << "*Nabla^" << nabla;
    if (twopi) os << "*(2pi)^" << twopi;
    for (const auto& s : num) os << "*" << s.to_string();
    for (const auto& s : den) os << "/" << s.to_string();
    return os.str();
  }
};

// prod over the inversion roots of w_k of L(0, Lambda o alpha^vee) /
// L(1, Lambda o alpha^vee); asserts the symbolic telescoping to
// L(s-n+k, eta) / L(s, eta).
inline FormalLRatio gk_product(int k, int n, const CharId& chi,
                               std::shared_ptr<const PeriodContext> ctx = nullptr) {
  if (k < 1 || k > n) throw Error("gk_product: k out of range");
  const TorusCharacter lam = lambda_k(n, n);
  FormalLRatio r = FormalLRatio::one(ctx);
  for (auto [i, j] : coset_cycle(n, k).inversion_set()) {
    GL1Symbol g = coroot_pairing(lam, Root{i, j});
    if (g.hecke_pow != 1) throw Error("gk_product: unexpected Hecke power in co-root pairing");
    r.mul_symbol_num(LSymbol{AffineExp{g.abs.a, g.abs.b}, chi});
    r.mul_symbol_den(LSymbol{AffineExp{g.abs.a + 1, g.abs.b}, chi});
  }
  r.normalize();
  FormalLRatio expect = FormalLRatio::one(ctx);
  if (k < n) {
    expect.mul_symbol_num(LSymbol{AffineExp{static_cast<long long>(k - n), 1}, chi});
    expect.mul_symbol_den(LSymbol{AffineExp{0, 1}, chi});
    expect.normalize();
  }
  if (!(r == expect)) throw Error("gk_product: telescoping identity failed");
  return r;
}

// Constant-term coefficients for k = 1..n:
//   |delta_k|^{(k-n)/2} * L(s-n+k, eta)/L(s, eta),
// with the entry k = n equal to 1. With s_at_zero the offsets specialize to
// L(k-n, eta)/L(0, eta).
inline std::vector<FormalLRatio> constant_term_coefficients(
    int n, const CharId& chi, bool s_at_zero,
    std::shared_ptr<const PeriodContext> ctx = nullptr) {
  if (n < 2) throw Error("constant_term_coefficients: requires n >= 2");
  std::vector<FormalLRatio> out;
  out.reserve(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    FormalLRatio r = gk_product(k, n, chi, ctx);
    if (s_at_zero) {
      for (auto& s : r.num) s.arg.b = 0;
      for (auto& s : r.den) s.arg.b = 0;
      r.normalize();
    }
    r.absdelta_half = k - n;
    out.push_back(std::move(r));
  }
  if (!out.back().is_one()) throw Error("constant_term_coefficients: entry k=n is not 1");
  return out;
}

// The formal critical-value rule: sigma fixes each glued atom
//   (i^{[k:Q]/2} Delta)^{m} * L(-m, chi)/L(0, chi),  m >= 0,
// while replacing chi by ^sigma chi. The expression must decompose into such
// atoms, up to rational fourth powers of the period; anything else is
// refused as a non-critical atom.
inline FormalLRatio sigma_on_ratio(const FormalLRatio& r, const FormalSigma& sigma) {
  if (r.absdelta_half != 0)
    throw Error("sigma_on_ratio: non-critical atom (|delta|^{1/2} not rewritten)");
  if (r.twopi != 0)
    throw Error("sigma_on_ratio: non-critical atom (transcendental 2pi factor)");
  for (const auto& s : r.num)
    if (s.arg.b != 0) throw Error("sigma_on_ratio: non-critical atom (s not specialized)");
  for (const auto& s : r.den)
    if (s.arg.b != 0) throw Error("sigma_on_ratio: non-critical atom (s not specialized)");

  // Pair numerator symbols L(-m, chi), m >= 0, against denominator symbols
  // L(0, chi) of the same character.
  long long total_m = 0;
  std::vector<LSymbol> den_left = r.den;
  for (const auto& s : r.num) {
    if (s.arg.a > 0) throw Error("sigma_on_ratio: non-critical atom (positive offset)");
    total_m += -s.arg.a;
    auto it = std::find(den_left.begin(), den_left.end(), LSymbol{AffineExp{0, 0}, s.chi});
    if (it == den_left.end())
      throw Error("sigma_on_ratio: non-critical atom (unpaired L-symbol)");
    den_left.erase(it);
  }
  if (!den_left.empty())
    throw Error("sigma_on_ratio: non-critical atom (unmatched denominator symbol)");
  long long residue = r.halfp - 2 * total_m;
  if (((residue % 4) + 4) % 4 != 0)
    throw Error("sigma_on_ratio: non-critical atom (period power does not match offsets)");

  FormalLRatio out = r;
  if (out.ipow % 2 != 0) {
    if (sigma.modulus % 4 != 0)
      throw Error("sigma_on_ratio: sigma lacks cyclotomic data modulo 4 for the i atom");
    long long am4 = sigma.a % 4;
    if (am4 < 0) am4 += 4;
    if (am4 == 3) out.q = -out.q;
    else if (am4 != 1) throw Error("sigma_on_ratio: parameter not coprime to 4");
  }
  if (out.nabla % 2 != 0 && out.ctx && out.ctx->nabla_d != 1) {
    BigInt D = (out.ctx->nabla_d % 4 == 1) ? out.ctx->nabla_d : 4 * out.ctx->nabla_d;
    if (BigInt(sigma.modulus) % D != 0)
      throw Error("sigma_on_ratio: sigma lacks cyclotomic data for the Nabla atom");
    out.q *= quadratic_character(out.ctx->nabla_d, sigma.a);
  }
  for (auto& s : out.num) s.chi = apply_sigma(s.chi, sigma);
  for (auto& s : out.den) s.chi = apply_sigma(s.chi, sigma);
  out.normalize();
  return out;
}

}  // namespace eiscoh
