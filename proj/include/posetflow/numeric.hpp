#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace posetflow {

// All verdict-producing arithmetic runs on these two types. Floating point
// is allowed only in clearly-marked display approximations.
using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Canonical (reduced, positive-denominator) rational.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_decimal(const BigInt& v) { return v.get_str(); }

// Always "num/den", even for integers ("3/1").
inline std::string to_fraction(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::optional<BigInt> parse_decimal(const std::string& text);
std::optional<Rational> parse_fraction(const std::string& text);

// Six-digit decimal rendering for human-readable reports only.
std::string decimal_approx(const Rational& v, int digits = 6);

// Deterministic RNG independent of the standard library's distributions,
// so seeded fixtures are reproducible across toolchains.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound > 0.
  uint64_t below(uint64_t bound) {
    uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
    uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }
};

}  // namespace posetflow
