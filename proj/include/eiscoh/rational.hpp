#pragma once

// Exact arithmetic aliases and small number-theory helpers shared by all
// modules. Everything that touches mathematical identities runs on exact
// rationals; floating point is confined to the numerical oracles.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace eiscoh {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 50-decimal-digit working precision for embedding numerics.
using Real50    = boost::multiprecision::cpp_bin_float_50;
using Complex50 = boost::multiprecision::cpp_complex_50;

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline BigInt rat_num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt rat_den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Real50 to_real(const Rational& q) {
  return Real50(rat_num(q)) / Real50(rat_den(q));
}

// Integer square root; returns the exact root only for perfect squares.
inline std::optional<BigInt> exact_isqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

inline bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  return exact_isqrt(rat_num(q)).has_value() && exact_isqrt(rat_den(q)).has_value();
}

inline std::optional<Rational> exact_rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  auto a = exact_isqrt(rat_num(q));
  auto b = exact_isqrt(rat_den(q));
  if (!a || !b) return std::nullopt;
  return Rational(*a, *b);
}

struct SquareSplit {
  BigInt square_root;  // s
  BigInt squarefree;   // d, so that n = s^2 * d with d squarefree
};

// Splits |n| = s^2 * d by trial division. The discriminant norms handled by
// this toolkit are tiny; the bound guards against silent wrong answers on
// adversarial input.
inline SquareSplit squarefree_split(BigInt n, long long trial_bound = 1000000) {
  if (n == 0) throw Error("squarefree_split: zero argument");
  bool neg = n < 0;
  if (neg) n = -n;
  BigInt s = 1, d = 1;
  BigInt p = 2;
  while (p * p <= n && p <= trial_bound) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      for (int i = 0; i < e / 2; ++i) s *= p;
      if (e % 2) d *= p;
    }
    p += (p == 2) ? 1 : 2;
  }
  if (n > 1) {
    // Remainder has no prime factor <= trial_bound.
    if (auto r = exact_isqrt(n)) {
      s *= *r;  // remainder is t^2 with t prime (or a prime power)
    } else if (n <= BigInt(trial_bound) * trial_bound * trial_bound) {
      // p^2 would have been found by trial division, p^3 by the sqrt test
      // bound; the remainder is squarefree here.
      d *= n;
    } else {
      throw Error("squarefree_split: factorization bound exceeded");
    }
  }
  if (neg) d = -d;
  return {s, d};
}

// Kronecker symbol (a|n), extended Jacobi symbol.
inline int kronecker_symbol(BigInt a, BigInt n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while ((n & 1) == 0) { n >>= 1; ++twos; }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    long long am8 = static_cast<long long>(a % 8);
    if (am8 < 0) am8 += 8;
    if ((twos & 1) && (am8 == 3 || am8 == 5)) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      long long nm8 = static_cast<long long>(n % 8);
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
    a %= n;
  }
  return (n == 1) ? result : 0;
}

// Quadratic character of Q(sqrt(d)) evaluated on a cyclotomic parameter a:
// sigma_a(sqrt(d)) = chi_d(a) * sqrt(d) for squarefree d > 0. chi is the
// Kronecker symbol attached to the discriminant of Q(sqrt(d)).
inline int quadratic_character(const BigInt& d, const BigInt& a) {
  if (d == 1) return 1;
  if (d <= 0) throw Error("quadratic_character: needs positive squarefree d");
  BigInt disc = (d % 4 == 1) ? d : 4 * d;
  int chi = kronecker_symbol(disc, a);
  if (chi == 0) throw Error("quadratic_character: parameter not coprime to discriminant");
  return chi;
}

}  // namespace eiscoh
