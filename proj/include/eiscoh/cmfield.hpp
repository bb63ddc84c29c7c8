#pragma once

// The tower k > k1 (maximal CM subfield) > k0 (maximal totally real in k1):
// relative trace-form discriminants, the period constants Delta_k and
// Nabla_k, the rational constant of the discriminant relation, Galois
// actions on the embedding set, the sigma = sigma2 o sigma1 decomposition,
// and the sign identity.

#include "eiscoh/embeddings.hpp"
#include "eiscoh/lsymbols.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

namespace eiscoh {

// Exact q * sqrt(d), q rational, d squarefree (possibly negative);
// sqrt(d) := i*sqrt(|d|) for d < 0 (principal branch).
struct QuadSurd {
  Rational q = 1;
  BigInt d = 1;

  static QuadSurd sqrt_of(const Rational& r) {
    if (r == 0) return QuadSurd{0, 1};
    // sqrt(p/q) = sqrt(p*q)/q
    BigInt pq = rat_num(r) * rat_den(r);
    SquareSplit sp = squarefree_split(pq);
    return QuadSurd{Rational(sp.square_root, rat_den(r)), sp.squarefree};
  }

  Rational square() const { return q * q * Rational(d); }

  QuadSurd pow(long long m) const {
    if (m < 0) throw Error("QuadSurd::pow: negative exponent");
    Rational qq = 1;
    for (long long t = 0; t < m; ++t) qq *= q;
    BigInt dd = 1;
    for (long long t = 0; t < m / 2; ++t) dd *= d;
    if (m % 2 == 0) return QuadSurd{qq * Rational(dd), 1};
    return QuadSurd{qq * Rational(dd), d};
  }

  Complex50 numeric() const {
    Real50 root = sqrt(Real50(abs(d)));
    if (d >= 0) return Complex50(to_real(q) * root, Real50(0));
    return Complex50(Real50(0), to_real(q) * root);
  }

  bool operator==(const QuadSurd& o) const { return q == o.q && d == o.d; }

  std::string to_string() const {
    std::ostringstream os;
    os << q;
    if (d != 1) os << "*sqrt(" << d << ")";
    return os.str();
  }
};

struct DiscriminantReport {
  Rational c = 0;               // |delta|^{1/2} = c * i^{[k:Q]/2} * Delta * Nabla
  Rational abs_delta = 0;       // |det[tr(b_i b_j)]| for the recorded basis
  Rational trace_form_det = 0;  // signed determinant
  Rational c_squared = 0;
  bool c_squared_is_square = false;
  Real50 rel_err_embeddings = 0;  // exact vs Vandermonde-squared cross-check
  Real50 rel_err_relation = 0;    // numerical check of the relation itself
  std::string basis_description;
  bool pass = false;
};

class FieldTower;
class GaloisElement;

class FieldTower {
public:
  std::string name;
  LayeredAlgebra alg;
  EmbeddingSet emb;
  size_t r1, r2;

  bool abelian = false;
  long long conductor = 0;   // cyclotomic conductor when abelian
  FlatElem zeta;             // a primitive root of unity generating k (abelian case)
  long long sigma_modulus = 0;  // modulus of cyclotomic parameters accepted

  std::vector<FlatElem> abs_basis;  // Q-basis used for |delta_k|
  std::string abs_basis_description;
  std::vector<FlatElem> top_basis;  // basis of k over k1 (discriminant basis)
  std::vector<FlatElem> mid_basis;  // basis of k1 over k0

  FieldTower(std::string nm, TowerSpec spec) : name(std::move(nm)), alg(std::move(spec)) {
    emb = build_embeddings(alg);
    r1 = emb.r1;
    r2 = emb.r2;
    // Default relative bases: power bases of the layer generators.
    for (int t = 0; t < alg.d2; ++t) top_basis.push_back(alg.pow(alg.gen(2), t));
    for (int t = 0; t < alg.d1; ++t) mid_basis.push_back(alg.pow(alg.gen(1), t));
    // Default absolute basis: powers of the top generator when they span,
    // else the product monomial basis.
    std::vector<FlatElem> powers;
    for (int t = 0; t < alg.dim; ++t) powers.push_back(alg.pow(alg.gen(2), t));
    std::vector<std::vector<Rational>> m(static_cast<size_t>(alg.dim),
                                         std::vector<Rational>(static_cast<size_t>(alg.dim)));
    for (int i = 0; i < alg.dim; ++i)
      for (int j = 0; j < alg.dim; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = powers[static_cast<size_t>(j)][static_cast<size_t>(i)];
    if (LayeredAlgebra::det_q(m) != 0) {
      abs_basis = std::move(powers);
      abs_basis_description = "power basis of the top generator";
    } else {
      for (int t = 0; t < alg.dim; ++t) {
        FlatElem e = alg.zero();
        e[static_cast<size_t>(t)] = 1;
        abs_basis.push_back(std::move(e));
      }
      abs_basis_description = "product monomial basis";
    }
  }

  int degree() const { return alg.dim; }

  ConjPairing conj_pairing() const {
    ConjPairing p;
    p.bar = emb.conj_pairing();
    return p;
  }

  // det[tr_{upper/lower}(b_i b_j)] for a basis of the layer extension;
  // level 2 = k over k1, level 1 = k1 over k0.
  FlatElem relative_discriminant(int level, const std::vector<FlatElem>& basis) const {
    const size_t n = basis.size();
    if (n != static_cast<size_t>(level == 2 ? alg.d2 : alg.d1))
      throw Error("relative_discriminant: basis has wrong cardinality");
    std::vector<std::vector<FlatElem>> gram(n, std::vector<FlatElem>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        gram[i][j] = alg.relative_trace(alg.mul(basis[i], basis[j]), level);
    FlatElem det = alg.det_subfield(gram, level - 1);
    if (alg.is_zero(det)) throw Error("relative_discriminant: singular basis");
    return det;
  }

  // Signed determinant of the absolute trace form for a Q-basis of k.
  Rational trace_form_determinant(const std::vector<FlatElem>& basis) const {
    const size_t n = basis.size();
    if (n != static_cast<size_t>(alg.dim)) throw Error("trace_form_determinant: basis size");
    std::vector<std::vector<Rational>> gram(n, std::vector<Rational>(n));
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        gram[i][j] = alg.trace_to_q(alg.mul(basis[i], basis[j]), 2);
    return LayeredAlgebra::det_q(gram);
  }

  // Delta_k = sqrt(N_{k0/Q}(delta_{k1/k0}))^{[k:k1]},
  // Nabla_k = sqrt(N_{k1/Q}(delta_{k/k1})).
  struct PeriodConstants {
    QuadSurd delta_upper;  // Delta_k
    QuadSurd nabla;        // Nabla_k
    Rational n0;           // N_{k0/Q}(delta_{k1/k0})
    Rational n1;           // N_{k1/Q}(delta_{k/k1})
  };

  PeriodConstants period_constants() const {
    PeriodConstants pc;
    FlatElem d10 = relative_discriminant(1, mid_basis);
    FlatElem d21 = relative_discriminant(2, top_basis);
    pc.n0 = alg.norm_to_q(d10, 0);
    pc.n1 = alg.norm_to_q(d21, 1);
    if (pc.n1 <= 0) throw Error("period_constants: N(delta_{k/k1}) not positive");
    pc.delta_upper = QuadSurd::sqrt_of(pc.n0).pow(static_cast<long long>(r2));
    pc.nabla = QuadSurd::sqrt_of(pc.n1);
    return pc;
  }

  DiscriminantReport verify_discriminant_relation() const {
    DiscriminantReport rep;
    rep.basis_description = abs_basis_description;
    PeriodConstants pc = period_constants();

    rep.trace_form_det = trace_form_determinant(abs_basis);
    rep.abs_delta = rep.trace_form_det < 0 ? -rep.trace_form_det : rep.trace_form_det;
    QuadSurd lhs = QuadSurd::sqrt_of(rep.abs_delta);

    // RHS core i^{[k:Q]/2} * Delta * Nabla in (i-power, positive-surd) form.
    int ipow = (degree() / 2) % 4;
    Rational qq = pc.delta_upper.q * pc.nabla.q;
    BigInt d1 = pc.delta_upper.d, d2 = pc.nabla.d;
    if (d1 < 0) { ipow = (ipow + 1) % 4; d1 = -d1; }
    if (d2 < 0) { ipow = (ipow + 1) % 4; d2 = -d2; }
    SquareSplit sp = squarefree_split(d1 * d2);
    qq *= Rational(sp.square_root);
    BigInt rhs_d = sp.squarefree;

    // c^2 must be the square of a rational.
    if (ipow % 2 == 1) throw Error("verify_discriminant_relation: relation is not real");
    rep.c_squared = rep.abs_delta / (qq * qq * Rational(rhs_d));
    rep.c_squared_is_square = is_rational_square(rep.c_squared);
    if (!rep.c_squared_is_square || lhs.d != rhs_d)
      throw Error("verify_discriminant_relation: not rational square");
    Rational cabs = *exact_rational_sqrt(rep.c_squared);

    // Fix the sign of c numerically and cross-check both sides.
    Complex50 rhs_num = pc.delta_upper.numeric() * pc.nabla.numeric();
    for (int t = 0; t < (degree() / 2) % 4; ++t) rhs_num *= Complex50(0, 1);
    Real50 lhs_num = sqrt(to_real(rep.abs_delta));
    Complex50 plus = Complex50(to_real(cabs), Real50(0)) * rhs_num - Complex50(lhs_num, Real50(0));
    Complex50 minus = Complex50(-to_real(cabs), Real50(0)) * rhs_num - Complex50(lhs_num, Real50(0));
    rep.c = abs(plus) < abs(minus) ? cabs : -cabs;
    rep.rel_err_relation = std::min(abs(plus), abs(minus)) / lhs_num;

    // Independent oracle: the trace-form determinant equals the square of
    // the embedding matrix determinant.
    const size_t n = static_cast<size_t>(alg.dim);
    std::vector<std::vector<Complex50>> vm(n, std::vector<Complex50>(n));
    for (size_t a = 0; a < n; ++a)
      for (size_t j = 0; j < n; ++j) vm[a][j] = emb.value(alg, abs_basis[j], a);
    Complex50 det = det_c(vm);
    Complex50 diff = det * det - Complex50(to_real(rep.trace_form_det), Real50(0));
    rep.rel_err_embeddings = abs(diff) / abs(Complex50(to_real(rep.trace_form_det), Real50(0)));

    rep.pass = rep.c_squared_is_square && rep.rel_err_relation < Real50("1e-20") &&
               rep.rel_err_embeddings < Real50("1e-20");
    if (!rep.pass) throw Error("verify_discriminant_relation: numerical cross-check failed");
    return rep;
  }

  std::shared_ptr<const PeriodContext> period_context() const {
    PeriodConstants pc = period_constants();
    DiscriminantReport rep = verify_discriminant_relation();
    auto ctx = std::make_shared<PeriodContext>();
    ctx->field_degree = degree();
    ctx->nabla_sq = pc.nabla.square();
    ctx->nabla_d = pc.nabla.d;
    Rational dsq = pc.delta_upper.square();
    ctx->halfp_pow4 = ((degree() / 2) % 2 == 0) ? dsq : -dsq;
    ctx->c = rep.c;
    ctx->abs_delta = rep.abs_delta;
    return ctx;
  }

  static Complex50 det_c(std::vector<std::vector<Complex50>> m) {
    const size_t n = m.size();
    Complex50 det = 1;
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      for (size_t r = col + 1; r < n; ++r)
        if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
      if (piv != col) {
        std::swap(m[piv], m[col]);
        det = -det;
      }
      det *= m[col][col];
      if (abs(m[col][col]) == 0) return Complex50(0, 0);
      for (size_t r = col + 1; r < n; ++r) {
        Complex50 f = m[r][col] / m[col][col];
        for (size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
      }
    }
    return det;
  }
};

// The action of an Aut(C) element on the embedding set, together with its
// cyclotomic parameter. Only the data visible to the toolkit is kept; two
// automorphisms inducing the same data are interchangeable here.
class GaloisElement {
public:
  std::string name = "id";
  LabelPerm perm;                 // on E_k
  std::vector<size_t> base_perm;  // on E_{k1}
  long long a = 1;
  long long modulus = 4;

  static GaloisElement identity(const FieldTower& t) {
    GaloisElement g;
    g.perm = LabelPerm::identity(t.emb.count());
    g.base_perm.resize(t.emb.base_count());
    for (size_t i = 0; i < g.base_perm.size(); ++i) g.base_perm[i] = i;
    g.modulus = t.sigma_modulus;
    return g;
  }

  static GaloisElement conjugation(const FieldTower& t) {
    GaloisElement g;
    g.name = "conj";
    std::vector<size_t> fwd(t.emb.count());
    for (size_t l = 0; l < fwd.size(); ++l) fwd[l] = t.emb.bar(l);
    g.perm = LabelPerm::from_forward(std::move(fwd));
    g.base_perm.resize(t.emb.base_count());
    for (size_t b = 0; b < g.base_perm.size(); ++b) g.base_perm[b] = b ^ 1u;
    g.modulus = t.sigma_modulus;
    g.a = g.modulus - 1;
    g.validate(t);
    return g;
  }

  // For an abelian tower with a chosen primitive root of unity generating k:
  // sigma_a sends each embedding iota to the one with iota'(zeta) =
  // iota(zeta)^a.
  static GaloisElement cyclotomic(const FieldTower& t, long long a) {
    if (!t.abelian) throw Error("GaloisElement: tower has no cyclotomic presentation");
    long long m = t.conductor;
    long long am = ((a % m) + m) % m;
    if (std::gcd(am, m) != 1) throw Error("GaloisElement: parameter not coprime to conductor");
    GaloisElement g;
    g.name = "a" + std::to_string(am);
    g.a = am;
    g.modulus = m;
    const size_t n = t.emb.count();
    std::vector<Complex50> zv(n);
    for (size_t l = 0; l < n; ++l) zv[l] = t.emb.value(t.alg, t.zeta, l);
    std::vector<size_t> fwd(n);
    for (size_t l = 0; l < n; ++l) {
      Complex50 target = 1;
      for (long long e = 0; e < am; ++e) target *= zv[l];
      fwd[l] = match_value(zv, target);
    }
    g.perm = LabelPerm::from_forward(std::move(fwd));
    g.derive_base(t);
    g.validate(t);
    return g;
  }

  // Explicit permutation (custom towers): validated against the commuting
  // restriction square but otherwise taken on trust.
  static GaloisElement explicit_perm(const FieldTower& t, std::vector<size_t> fwd, long long a,
                                     long long modulus, std::string name = "explicit") {
    GaloisElement g;
    g.name = std::move(name);
    g.perm = LabelPerm::from_forward(std::move(fwd));
    g.a = a;
    g.modulus = modulus;
    g.derive_base(t);
    g.validate(t);
    return g;
  }

  GaloisElement compose_after(const GaloisElement& inner, const FieldTower& t) const {
    // (this o inner)
    GaloisElement g;
    g.name = name + "." + inner.name;
    g.perm = inner.perm.then(perm);
    if (modulus != inner.modulus) throw Error("GaloisElement: mixed moduli in composition");
    g.modulus = modulus;
    g.a = (a * inner.a) % modulus;
    if (g.a < 0) g.a += modulus;
    g.base_perm.resize(base_perm.size());
    for (size_t b = 0; b < base_perm.size(); ++b) g.base_perm[b] = base_perm[inner.base_perm[b]];
    g.validate(t);
    return g;
  }

  bool is_identity() const {
    for (size_t l = 0; l < perm.fwd.size(); ++l)
      if (perm.fwd[l] != l) return false;
    return true;
  }

  FormalSigma formal() const {
    FormalSigma s;
    s.name = name;
    s.perm = perm;
    s.a = a;
    s.modulus = modulus;
    return s;
  }

  void derive_base(const FieldTower& t) {
    if (perm.fwd.size() != t.emb.count()) throw Error("GaloisElement: embedding-set mismatch");
    base_perm.assign(t.emb.base_count(), SIZE_MAX);
    for (size_t l = 0; l < perm.fwd.size(); ++l) {
      size_t b = t.emb.base_of(l);
      size_t target = t.emb.base_of(perm.fwd[l]);
      if (base_perm[b] == SIZE_MAX) base_perm[b] = target;
      else if (base_perm[b] != target)
        throw Error("GaloisElement: permutation does not commute with restriction");
    }
  }

  void validate(const FieldTower& t) const {
    if (perm.fwd.size() != t.emb.count()) throw Error("GaloisElement: embedding-set mismatch");
    // The square over E_{k1} must commute.
    for (size_t l = 0; l < perm.fwd.size(); ++l)
      if (t.emb.base_of(perm.fwd[l]) != base_perm[t.emb.base_of(l)])
        throw Error("GaloisElement: restriction square does not commute");
    // Conjugation is central on E_{k1} (CM property).
    for (size_t b = 0; b < base_perm.size(); ++b)
      if (base_perm[b ^ 1u] != (base_perm[b] ^ 1u))
        throw Error("GaloisElement: base action does not commute with conjugation");
  }

  static size_t match_value(const std::vector<Complex50>& values, const Complex50& target) {
    size_t best = SIZE_MAX;
    Real50 best_d = 0;
    for (size_t i = 0; i < values.size(); ++i) {
      Real50 d = abs(values[i] - target);
      if (best == SIZE_MAX || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    if (best_d > Real50("1e-25")) throw Error("GaloisElement: no matching embedding value");
    return best;
  }
};

struct SigmaDecomposition {
  LabelPerm sigma1;
  LabelPerm sigma2;
  int epsilon = 1;  // signature of sigma2 on E_k
};

// sigma = sigma2 o sigma1 with sigma1 preserving the fiber index j and
// following sigma's motion on E_{k1}, and sigma2 restricting to the
// identity on E_{k1}.
inline SigmaDecomposition sigma_decompose(const FieldTower& t, const GaloisElement& sigma) {
  const auto& e = t.emb;
  std::vector<size_t> s1(e.count());
  for (size_t l = 0; l < e.count(); ++l) {
    size_t b = e.base_of(l);
    size_t tb = sigma.base_perm[b];
    size_t i2 = tb / 2;
    int bar2 = static_cast<int>(tb % 2);
    s1[l] = e.label(i2, e.fiber_j(l), bar2);
  }
  SigmaDecomposition out;
  out.sigma1 = LabelPerm::from_forward(std::move(s1));
  // sigma2 = sigma o sigma1^{-1}
  std::vector<size_t> s2(e.count());
  for (size_t l = 0; l < e.count(); ++l) s2[out.sigma1.fwd[l]] = sigma.perm.fwd[l];
  out.sigma2 = LabelPerm::from_forward(std::move(s2));
  for (size_t l = 0; l < e.count(); ++l)
    if (e.base_of(out.sigma2.fwd[l]) != e.base_of(l))
      throw Error("sigma_decompose: sigma2 does not fix the base (incompatible sigma)");
  out.epsilon = out.sigma2.signature();
  return out;
}

struct SignIdentityReport {
  int epsilon = 1;
  int chi = 1;
  BigInt d = 1;
  bool pass = false;
};

// epsilon(sigma2) = sigma(Nabla)/Nabla, the right side computed through the
// quadratic character of Q(sqrt(d)) on sigma's cyclotomic parameter.
inline SignIdentityReport verify_sign_identity(const FieldTower& t, const GaloisElement& sigma) {
  SignIdentityReport rep;
  auto pc = t.period_constants();
  rep.d = pc.nabla.d;
  rep.epsilon = sigma_decompose(t, sigma).epsilon;
  if (rep.d == 1) {
    rep.chi = 1;
  } else {
    BigInt D = (rep.d % 4 == 1) ? rep.d : 4 * rep.d;
    if (BigInt(sigma.modulus) % D != 0)
      throw Error("verify_sign_identity: sigma not specified with cyclotomic data and d != 1");
    rep.chi = quadratic_character(rep.d, sigma.a);
  }
  rep.pass = (rep.epsilon == rep.chi);
  return rep;
}

// ---- Tower presets ------------------------------------------------------

inline std::shared_ptr<FieldTower> make_tower_gauss() {
  TowerSpec s;
  s.f0 = {Rational(0), Rational(1)};  // x
  s.f1 = {{Rational(1)}, {Rational(0)}, {Rational(1)}};  // y^2 + 1
  s.f2 = {{{Rational(0)}, {Rational(-1)}}, {{Rational(1)}, {Rational(0)}}};  // z - y
  auto t = std::make_shared<FieldTower>("gauss", std::move(s));
  t->abelian = true;
  t->conductor = 4;
  t->sigma_modulus = 4;
  t->zeta = t->alg.gen(1);
  return t;
}

inline std::shared_ptr<FieldTower> make_tower_cyclotomic_quadratic(const std::string& name,
                                                                   long long m, long long disc0) {
  // k = k1 = Q(zeta_m) of degree 4 with k0 = Q(sqrt(disc0)),
  // zeta + zeta^{-1} = sqrt(disc0) (m = 8, 12).
  TowerSpec s;
  s.f0 = {Rational(-disc0), Rational(0), Rational(1)};
  s.f1 = {{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}, {Rational(1), Rational(0)}};
  s.f2 = {{{Rational(0), Rational(0)}, {Rational(-1), Rational(0)}},
          {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}}};  // z - y
  auto t = std::make_shared<FieldTower>(name, std::move(s));
  t->abelian = true;
  t->conductor = m;
  t->sigma_modulus = m;
  t->zeta = t->alg.gen(1);
  return t;
}

inline std::shared_ptr<FieldTower> make_tower_zeta5() {
  // k0 = Q(sqrt5), zeta5 + zeta5^{-1} = (sqrt5 - 1)/2.
  TowerSpec s;
  s.f0 = {Rational(-5), Rational(0), Rational(1)};
  s.f1 = {{Rational(1), Rational(0)},
          {Rational(1, 2), Rational(-1, 2)},
          {Rational(1), Rational(0)}};
  s.f2 = {{{Rational(0), Rational(0)}, {Rational(-1), Rational(0)}},
          {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}}};  // z - y
  auto t = std::make_shared<FieldTower>("zeta5", std::move(s));
  t->abelian = true;
  t->conductor = 5;
  t->sigma_modulus = 5;
  t->zeta = t->alg.gen(1);
  return t;
}

inline std::shared_ptr<FieldTower> make_tower_gauss_root_1pi() {
  // k = Q(i, sqrt(1+i)), k1 = Q(i), k0 = Q.
  TowerSpec s;
  s.f0 = {Rational(0), Rational(1)};
  s.f1 = {{Rational(1)}, {Rational(0)}, {Rational(1)}};
  s.f2 = {{{Rational(-1)}, {Rational(-1)}},  // -(1+i)
          {{Rational(0)}, {Rational(0)}},
          {{Rational(1)}, {Rational(0)}}};
  auto t = std::make_shared<FieldTower>("gauss-root-1pi", std::move(s));
  t->abelian = false;
  t->conductor = 0;
  t->sigma_modulus = 8;  // automorphisms of the Galois closure Q(zeta8, theta)
  return t;
}

inline std::shared_ptr<FieldTower> make_tower(const std::string& preset) {
  if (preset == "gauss") return make_tower_gauss();
  if (preset == "zeta5") return make_tower_zeta5();
  if (preset == "zeta8") return make_tower_cyclotomic_quadratic("zeta8", 8, 2);
  if (preset == "zeta12") return make_tower_cyclotomic_quadratic("zeta12", 12, 3);
  if (preset == "gauss-root-1pi") return make_tower_gauss_root_1pi();
  throw Error("make_tower: unknown preset '" + preset + "'");
}

// Aut(C) elements for the gauss-root-1pi tower, parametrized by the
// cyclotomic parameter a mod 8 and the chosen image of theta = sqrt(1+i)
// among the four conjugate roots. The images of the remaining roots follow
// from theta * theta-bar = sqrt2 = zeta8 + zeta8^{-1}, so the whole
// permutation is forced by honest cyclotomic arithmetic.
// theta_image: 0 -> theta, 1 -> -theta, 2 -> conj(theta), 3 -> -conj(theta),
// where theta is the root of z^2 = 1+i with positive real and imaginary
// parts.
inline GaloisElement galois_root_1pi(const FieldTower& t, long long a, int theta_image,
                                     const std::string& name) {
  if (t.name != "gauss-root-1pi") throw Error("galois_root_1pi: wrong tower");
  long long am = ((a % 8) + 8) % 8;
  if (am % 2 == 0) throw Error("galois_root_1pi: parameter must be odd");
  const auto& e = t.emb;
  const size_t n = e.count();
  std::vector<Complex50> iv(n), thv(n);
  for (size_t l = 0; l < n; ++l) {
    iv[l] = e.value(t.alg, t.alg.gen(1), l);
    thv[l] = e.value(t.alg, t.alg.gen(2), l);
  }
  // sigma(i) and sigma(sqrt2) from the parameter.
  Complex50 sig_i = (am % 4 == 1) ? Complex50(0, 1) : Complex50(0, -1);
  Real50 pi = 4 * atan(Real50(1));
  Real50 s2a = 2 * cos(Real50(am) * pi / 4);  // zeta8^a + zeta8^{-a}
  // Reference theta: the root with positive real and imaginary parts.
  size_t ref = SIZE_MAX;
  for (size_t l = 0; l < n; ++l)
    if (thv[l].real() > 0 && thv[l].imag() > 0) ref = l;
  if (ref == SIZE_MAX) throw Error("galois_root_1pi: reference root not found");
  const Complex50 theta = thv[ref];
  Complex50 c;
  switch (theta_image) {
    case 0: c = theta; break;
    case 1: c = -theta; break;
    case 2: c = conj(theta); break;
    case 3: c = -conj(theta); break;
    default: throw Error("galois_root_1pi: theta_image out of range");
  }
  if (abs(c * c - (Complex50(1, 0) + sig_i)) > Real50("1e-30"))
    throw Error("galois_root_1pi: theta image inconsistent with parameter");
  auto sigma_of_root = [&](const Complex50& r) {
    if (abs(r - theta) < Real50("1e-30")) return c;
    if (abs(r + theta) < Real50("1e-30")) return -c;
    // r = +- sqrt2 / theta
    Complex50 tp = Complex50(sqrt(Real50(2)), Real50(0)) / theta;
    if (abs(r - tp) < Real50("1e-30")) return Complex50(s2a, Real50(0)) / c;
    return -(Complex50(s2a, Real50(0)) / c);
  };
  std::vector<size_t> fwd(n);
  for (size_t l = 0; l < n; ++l) {
    Complex50 ti = (am % 4 == 1) ? iv[l] : conj(iv[l]);
    Complex50 tz = sigma_of_root(thv[l]);
    size_t found = SIZE_MAX;
    for (size_t m = 0; m < n; ++m)
      if (abs(iv[m] - ti) < Real50("1e-25") && abs(thv[m] - tz) < Real50("1e-25")) found = m;
    if (found == SIZE_MAX) throw Error("galois_root_1pi: image is not an embedding");
    fwd[l] = found;
  }
  return GaloisElement::explicit_perm(t, std::move(fwd), am, 8, name);
}

// Named sigma generators per preset; integer names a<k> are accepted for
// abelian towers.
inline GaloisElement named_sigma(const FieldTower& t, const std::string& spec) {
  if (spec == "id") return GaloisElement::identity(t);
  if (spec == "conj") {
    if (t.name == "gauss-root-1pi") return galois_root_1pi(t, 7, 2, "conj");
    return GaloisElement::conjugation(t);
  }
  if (t.name == "gauss-root-1pi") {
    if (spec == "s3") return galois_root_1pi(t, 3, 2, "s3");
    if (spec == "s5") return galois_root_1pi(t, 5, 1, "s5");
    throw Error("named_sigma: unknown generator '" + spec + "' for gauss-root-1pi");
  }
  if (!spec.empty() && (spec[0] == 'a' || std::isdigit(static_cast<unsigned char>(spec[0])))) {
    long long a = std::stoll(spec[0] == 'a' ? spec.substr(1) : spec);
    return GaloisElement::cyclotomic(t, a);
  }
  throw Error("named_sigma: unknown sigma spec '" + spec + "'");
}

// Curated generating set used by the self-tests and acceptance scenarios.
inline std::vector<GaloisElement> generator_sigmas(const FieldTower& t) {
  if (t.name == "gauss") return {GaloisElement::conjugation(t)};
  if (t.name == "zeta5")
    return {GaloisElement::cyclotomic(t, 2), GaloisElement::conjugation(t)};
  if (t.name == "zeta8")
    return {GaloisElement::cyclotomic(t, 3), GaloisElement::cyclotomic(t, 5),
            GaloisElement::conjugation(t)};
  if (t.name == "zeta12")
    return {GaloisElement::cyclotomic(t, 5), GaloisElement::cyclotomic(t, 7),
            GaloisElement::conjugation(t)};
  if (t.name == "gauss-root-1pi")
    return {named_sigma(t, "conj"), named_sigma(t, "s3"), named_sigma(t, "s5")};
  throw Error("generator_sigmas: no curated set for tower '" + t.name + "'");
}

}  // namespace eiscoh
