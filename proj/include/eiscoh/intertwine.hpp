#pragma once

// The archimedean local intertwining computation: minimal K-type sections
// phi_beta, exact closed-form values of M_v(w_k) phi_beta at w_k,
// normalization to N_v, and independent numerical quadrature oracles.
//
// The measure on C is the self-dual one, 2x Lebesgue ("2r dr dtheta");
// |z|_v = z*conj(z). Exact values are rational multiples of powers of 2pi;
// floating point appears only inside the oracles.

#include "eiscoh/quadrature.hpp"

#include <complex>
#include <numeric>
#include <vector>

namespace eiscoh {

// Local data at one archimedean place, with the pair ordered so that
// eta_hi >= eta_lo; balanced means eta_lo <= 0 and eta_hi >= n.
struct LocalCharData {
  long long eta_lo = 0;
  long long eta_hi = 0;
  int n = 0;

  long long gap() const { return eta_hi - eta_lo; }

  void validate() const {
    if (!(eta_lo <= 0 && eta_hi >= n))
      throw Error("LocalCharData: pair is not balanced (needs eta_lo <= 0 <= n <= eta_hi)");
  }
};

// beta in Upsilon(eta_v): n nonnegative integers summing to eta_hi - eta_lo.
struct Composition {
  std::vector<long long> beta;

  static Composition lowest(const LocalCharData& d) {
    Composition c;
    c.beta.assign(static_cast<size_t>(d.n), 0);
    c.beta.back() = d.gap();
    return c;
  }

  bool is_lowest(const LocalCharData& d) const {
    for (size_t i = 0; i + 1 < beta.size(); ++i)
      if (beta[i] != 0) return false;
    return !beta.empty() && beta.back() == d.gap();
  }

  void validate(const LocalCharData& d) const {
    if (static_cast<int>(beta.size()) != d.n) throw Error("Composition: wrong length");
    long long sum = 0;
    for (long long b : beta) {
      if (b < 0) throw Error("Composition: negative entry");
      sum += b;
    }
    if (sum != d.gap()) throw Error("Composition: entries must sum to eta_hi - eta_lo");
  }
};

// phi_beta evaluated on the last row of g:
//   prod_j u_j^{beta_j} / (sum_j u_j conj(u_j))^{eta_hi}.
inline std::complex<double> phi_eval(const LocalCharData& d, const Composition& beta,
                                     const std::vector<std::complex<double>>& last_row) {
  beta.validate(d);
  if (static_cast<int>(last_row.size()) != d.n) throw Error("phi_eval: row length != n");
  double denom = 0;
  for (const auto& u : last_row) denom += std::norm(u);
  if (denom == 0) throw Error("phi_eval: last row is zero");
  std::complex<double> num(1, 0);
  for (size_t j = 0; j < last_row.size(); ++j)
    for (long long t = 0; t < beta.beta[j]; ++t) num *= last_row[j];
  return num / std::pow(denom, static_cast<double>(d.eta_hi));
}

// Exact value c * (2pi)^p.
struct TwoPiValue {
  Rational coef = 0;
  long long pi_pow = 0;

  bool operator==(const TwoPiValue& o) const {
    if (coef == 0 && o.coef == 0) return true;
    return coef == o.coef && pi_pow == o.pi_pow;
  }

  double numeric() const {
    double v = static_cast<double>(to_real(coef));
    const double twopi = 6.283185307179586476925287;
    for (long long t = 0; t < pi_pow; ++t) v *= twopi;
    for (long long t = 0; t < -pi_pow; ++t) v /= twopi;
    return v;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << coef;
    if (pi_pow != 0) os << "*(2pi)^" << pi_pow;
    return os.str();
  }
};

// (M_v(w_k) phi_beta)(w_k): zero unless beta = beta_0, in which case
// (2pi)^{n-k} / ((eta_hi - 1)...(eta_hi - n + k)); the case k = n is the
// evaluation phi_beta(1_n).
inline TwoPiValue intertwine_closed_form(int k, int n, const LocalCharData& d,
                                         const Composition& beta) {
  if (k < 1 || k > n) throw Error("intertwine_closed_form: k out of range");
  d.validate();
  beta.validate(d);
  if (!beta.is_lowest(d)) return TwoPiValue{0, 0};
  Rational denom = 1;
  for (int j = 1; j <= n - k; ++j) denom *= Rational(d.eta_hi - j);
  return TwoPiValue{Rational(1) / denom, n - k};
}

// The archimedean L-ratio convention (Gamma recursion):
//   L(k-n, eta_v)/L(0, eta_v) := (2pi)^{n-k} / ((eta_hi - 1)...(eta_hi - n + k)).
inline TwoPiValue arch_lratio(int k, int n, const LocalCharData& d) {
  if (k < 1 || k > n) throw Error("arch_lratio: k out of range");
  Rational denom = 1;
  for (int j = 1; j <= n - k; ++j) denom *= Rational(d.eta_hi - j);
  return TwoPiValue{Rational(1) / denom, n - k};
}

// (N_v(w_k) phi_{beta_0})(w_k), an exact symbolic division; equals 1.
inline TwoPiValue normalized_value(int k, int n, const LocalCharData& d) {
  TwoPiValue m = intertwine_closed_form(k, n, d, Composition::lowest(d));
  TwoPiValue l = arch_lratio(k, n, d);
  return TwoPiValue{m.coef / l.coef, m.pi_pow - l.pi_pow};
}

enum class QuadMethod { RadialIterated, TensorGrid, MonteCarlo };

struct QuadratureConfig {
  QuadMethod method = QuadMethod::RadialIterated;
  int radial_nodes = 200;
  int angular_nodes = 64;
  int tensor_nodes = 0;  // 0 = choose from dimension
  long long mc_samples = 1000000;
  std::uint64_t seed = 20240801;
  int threads = 1;
  long long eval_budget = 400000000;  // hard cap on integrand evaluations
};

struct QuadResult {
  std::complex<double> estimate{0, 0};
  double err_bound = 0;
  long long evaluations = 0;
};

namespace detail_quad {

// Integrand data for the integral over u in C^p of
//   prod u_j^{beta_j} / (sum |u_j|^2 + 1)^{eta_hi},  p = n - k,
// against prod_j (2 dA); the non-integrated entries of beta force an exact
// zero (row entry 0) except the last one (row entry 1).
struct Problem {
  int p = 0;
  long long eta = 0;
  std::vector<long long> beta_int;  // exponents on the integrated coordinates
  bool identically_zero = false;    // some beta_j > 0 on a frozen zero entry
  long long beta_sum_int = 0;
};

inline Problem make_problem(int k, int n, const LocalCharData& d, const Composition& beta) {
  Problem pr;
  pr.p = n - k;
  pr.eta = d.eta_hi;
  for (int j = 1; j < k; ++j)
    if (beta.beta[static_cast<size_t>(j - 1)] > 0) pr.identically_zero = true;
  for (int j = k; j <= n - 1; ++j) {
    pr.beta_int.push_back(beta.beta[static_cast<size_t>(j - 1)]);
    pr.beta_sum_int += beta.beta[static_cast<size_t>(j - 1)];
  }
  return pr;
}

inline void check_absolute_convergence(const Problem& pr) {
  if (2 * pr.eta - pr.beta_sum_int <= 2 * pr.p)
    throw Error("intertwine_numeric: non-convergent configuration for this method");
}

}  // namespace detail_quad

// Numerical oracle for (M_v(w_k) phi_beta)(w_k).
//
// radial-iterated reproduces the polar reduction: ring rule in each angle,
// Gauss-Legendre on the compactified radius (valid for iterated
// integration). tensor-grid and monte-carlo integrate the raw
// 2p-real-dimensional integrand with no polar shortcut and require absolute
// convergence.
inline QuadResult intertwine_numeric(int k, int n, const LocalCharData& d,
                                     const Composition& beta, const QuadratureConfig& cfg) {
  if (k < 1 || k > n) throw Error("intertwine_numeric: k out of range");
  d.validate();
  beta.validate(d);
  if (d.eta_hi <= n - k) throw Error("intertwine_numeric: convergence guard eta_hi > n-k failed");
  auto pr = detail_quad::make_problem(k, n, d, beta);
  QuadResult res;
  if (pr.p == 0) {
    // k = n: no integral; value is phi_beta(1_n).
    res.estimate = beta.is_lowest(d) ? 1.0 : 0.0;
    res.err_bound = 0;
    return res;
  }
  if (pr.identically_zero) {
    res.err_bound = 0;
    return res;
  }

  auto radial_tensor = [&](int rn, int an) -> std::complex<double> {
    // Angular factors: (2pi/M) sum_t exp(i beta 2pi t / M), one per coord.
    const double pi = 3.14159265358979323846;
    std::complex<double> ang(1, 0);
    for (long long b : pr.beta_int) {
      std::complex<double> s(0, 0);
      for (int t = 0; t < an; ++t) {
        double th = 2.0 * pi * t / an;
        s += std::complex<double>(std::cos(th * static_cast<double>(b)),
                                  std::sin(th * static_cast<double>(b)));
      }
      ang *= s * (2.0 * pi / an);
    }
    if (std::abs(ang) == 0.0) return {0, 0};
    // Radial part: int over (0,inf)^p of prod 2 r_j^{beta_j+1} /
    // (sum r^2 + 1)^eta.
    QuadRule rule = half_line_rule(rn);
    const int m = static_cast<int>(rule.nodes.size());
    std::vector<int> idx(static_cast<size_t>(pr.p), 0);
    double total = 0;
    while (true) {
      double w = 1, sumsq = 0;
      for (int j = 0; j < pr.p; ++j) {
        double r = rule.nodes[static_cast<size_t>(idx[static_cast<size_t>(j)])];
        double rw = rule.weights[static_cast<size_t>(idx[static_cast<size_t>(j)])];
        double f = 2.0 * r;
        for (long long t = 0; t < pr.beta_int[static_cast<size_t>(j)]; ++t) f *= r;
        w *= rw * f;
        sumsq += r * r;
      }
      double val = w / std::pow(sumsq + 1.0, static_cast<double>(pr.eta));
      if (std::isfinite(val)) total += val;
      int pos = 0;
      while (pos < pr.p && ++idx[static_cast<size_t>(pos)] == m) idx[static_cast<size_t>(pos++)] = 0;
      if (pos == pr.p) break;
    }
    return ang * total;
  };

  auto tensor_grid = [&](int tn) -> std::complex<double> {
    QuadRule rule = full_line_rule(tn);
    const int m = static_cast<int>(rule.nodes.size());
    const int dims = 2 * pr.p;
    std::vector<int> idx(static_cast<size_t>(dims), 0);
    std::complex<double> total(0, 0);
    while (true) {
      double w = 1, sumsq = 0;
      std::complex<double> num(1, 0);
      for (int j = 0; j < pr.p; ++j) {
        double x = rule.nodes[static_cast<size_t>(idx[static_cast<size_t>(2 * j)])];
        double y = rule.nodes[static_cast<size_t>(idx[static_cast<size_t>(2 * j + 1)])];
        w *= rule.weights[static_cast<size_t>(idx[static_cast<size_t>(2 * j)])] *
             rule.weights[static_cast<size_t>(idx[static_cast<size_t>(2 * j + 1)])] * 2.0;
        std::complex<double> u(x, y);
        sumsq += std::norm(u);
        for (long long t = 0; t < pr.beta_int[static_cast<size_t>(j)]; ++t) num *= u;
      }
      std::complex<double> val = num * (w / std::pow(sumsq + 1.0, static_cast<double>(pr.eta)));
      if (std::isfinite(val.real()) && std::isfinite(val.imag())) total += val;
      int pos = 0;
      while (pos < dims && ++idx[static_cast<size_t>(pos)] == m) idx[static_cast<size_t>(pos++)] = 0;
      if (pos == dims) break;
    }
    return total;
  };

  switch (cfg.method) {
    case QuadMethod::RadialIterated: {
      long long evals = 1;
      for (int j = 0; j < pr.p; ++j) evals *= cfg.radial_nodes;
      if (evals > cfg.eval_budget) throw Error("intertwine_numeric: budget exceeded");
      std::complex<double> full = radial_tensor(cfg.radial_nodes, cfg.angular_nodes);
      std::complex<double> coarse = radial_tensor((2 * cfg.radial_nodes) / 3, cfg.angular_nodes);
      res.estimate = full;
      res.err_bound = std::abs(full - coarse);
      res.evaluations = evals;
      return res;
    }
    case QuadMethod::TensorGrid: {
      detail_quad::check_absolute_convergence(pr);
      int tn = cfg.tensor_nodes > 0 ? cfg.tensor_nodes : (pr.p == 1 ? 160 : 64);
      double evals_d = std::pow(static_cast<double>(tn), 2.0 * pr.p);
      if (evals_d > static_cast<double>(cfg.eval_budget))
        throw Error("intertwine_numeric: budget exceeded");
      std::complex<double> full = tensor_grid(tn);
      std::complex<double> coarse = tensor_grid((2 * tn) / 3);
      res.estimate = full;
      res.err_bound = std::abs(full - coarse);
      res.evaluations = static_cast<long long>(evals_d);
      return res;
    }
    case QuadMethod::MonteCarlo: {
      detail_quad::check_absolute_convergence(pr);
      // Heavy-tailed proposal matched to the integrand decay: per complex
      // coordinate, density (q-1)/(2pi) (1+|u|^2)^{-q} with respect to the
      // self-dual measure. The exponent sits between 1 and the largest
      // value keeping the importance weights square-integrable.
      double cap = (2.0 * pr.eta - pr.beta_sum_int - pr.p) / pr.p;
      if (cap <= 1.0) throw Error("intertwine_numeric: non-convergent configuration for this method");
      double q = 0.5 * (1.0 + cap);
      if (cfg.mc_samples > cfg.eval_budget) throw Error("intertwine_numeric: budget exceeded");
      const std::uint64_t chunk_size = 65536;
      const std::uint64_t chunks = (static_cast<std::uint64_t>(cfg.mc_samples) + chunk_size - 1) / chunk_size;
      const double pi = 3.14159265358979323846;
      double logw_norm = pr.p * std::log((q - 1.0) / (2.0 * pi));
      auto chunk_fn = [&](std::uint64_t c) -> std::pair<double, double> {
        DetRng rng(cfg.seed ^ splitmix64(c + 1));
        std::uint64_t lo = c * chunk_size;
        std::uint64_t hi = std::min(lo + chunk_size, static_cast<std::uint64_t>(cfg.mc_samples));
        double sre = 0, sim = 0;
        for (std::uint64_t s = lo; s < hi; ++s) {
          double sumsq = 0, logp = logw_norm;
          std::complex<double> num(1, 0);
          for (int j = 0; j < pr.p; ++j) {
            double v = rng.uniform();
            double r = std::sqrt(std::pow(1.0 - v, -1.0 / (q - 1.0)) - 1.0);
            double th = 2.0 * pi * rng.uniform();
            std::complex<double> u(r * std::cos(th), r * std::sin(th));
            sumsq += r * r;
            logp += -q * std::log1p(r * r);
            for (long long t = 0; t < pr.beta_int[static_cast<size_t>(j)]; ++t) num *= u;
          }
          double logf = -static_cast<double>(pr.eta) * std::log1p(sumsq);
          std::complex<double> val = num * std::exp(logf - logp);
          sre += val.real();
          sim += val.imag();
        }
        return {sre, sim};
      };
      auto total = run_chunked(chunks, cfg.threads, chunk_fn);
      double mean_re = total.first / static_cast<double>(cfg.mc_samples);
      double mean_im = total.second / static_cast<double>(cfg.mc_samples);
      // Second pass for the variance, same deterministic streams.
      auto var_fn = [&](std::uint64_t c) -> std::pair<double, double> {
        DetRng rng(cfg.seed ^ splitmix64(c + 1));
        std::uint64_t lo = c * chunk_size;
        std::uint64_t hi = std::min(lo + chunk_size, static_cast<std::uint64_t>(cfg.mc_samples));
        double a = 0, b = 0;
        for (std::uint64_t s = lo; s < hi; ++s) {
          double sumsq = 0, logp = logw_norm;
          std::complex<double> num(1, 0);
          for (int j = 0; j < pr.p; ++j) {
            double v = rng.uniform();
            double r = std::sqrt(std::pow(1.0 - v, -1.0 / (q - 1.0)) - 1.0);
            double th = 2.0 * pi * rng.uniform();
            std::complex<double> u(r * std::cos(th), r * std::sin(th));
            sumsq += r * r;
            logp += -q * std::log1p(r * r);
            for (long long t = 0; t < pr.beta_int[static_cast<size_t>(j)]; ++t) num *= u;
          }
          double logf = -static_cast<double>(pr.eta) * std::log1p(sumsq);
          std::complex<double> val = num * std::exp(logf - logp);
          a += (val.real() - mean_re) * (val.real() - mean_re);
          b += (val.imag() - mean_im) * (val.imag() - mean_im);
        }
        return {a, b};
      };
      auto var = run_chunked(chunks, cfg.threads, var_fn);
      double n_s = static_cast<double>(cfg.mc_samples);
      double se = std::sqrt((var.first + var.second) / (n_s * (n_s - 1)));
      res.estimate = {mean_re, mean_im};
      res.err_bound = 3.0 * se;
      res.evaluations = cfg.mc_samples;
      return res;
    }
  }
  throw Error("intertwine_numeric: unknown method");
}

}  // namespace eiscoh
