#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qdense {

using Int = mpz_class;
using Rational = mpq_class;

/// p-adic valuation with an explicit infinity for zero.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(long value) : value_(value), infinite_(false) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  // Only meaningful when finite.
  constexpr long value() const { return value_; }

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr bool operator<(const Valuation& a, const Valuation& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }

 private:
  long value_ = 0;
  bool infinite_ = true;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

Valuation valuation(const Int& x, const Int& p);
Valuation valuation(const Rational& x, const Int& p);

/// Exponent of p in a non-zero x together with the p-free part.
std::pair<unsigned long, Int> split_power(const Int& x, const Int& p);

Int pow(const Int& base, unsigned long exponent);
Int powmod(const Int& base, const Int& exponent, const Int& modulus);
/// Canonical residue in [0, m).
Int mod(const Int& a, const Int& m);
/// Residue in (-m/2, m/2].
Int symmetric_mod(const Int& a, const Int& m);
/// Inverse of a modulo m; throws NotCoprime when it does not exist.
Int invmod(const Int& a, const Int& m);
Int gcd(const Int& a, const Int& b);

bool is_prime(const Int& n);
void require_prime(const Int& p, const char* what);

/// All primes in [lo, hi] by a segmented-free simple sieve (hi fits in memory).
std::vector<std::uint64_t> primes_up_to(std::uint64_t hi);
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Positive divisors of |n| (n non-zero); relies on factorization of |n|.
std::vector<Int> positive_divisors(const Int& n);
/// Prime factorization of |n| > 0 as (prime, exponent) pairs, ascending.
std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n);

std::uint64_t to_u64(const Int& x);
bool fits_u64(const Int& x);

}  // namespace qdense
