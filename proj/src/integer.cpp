#include "qdense/integer.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "qdense/error.hpp"

namespace qdense {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::IndexOutOfRange: return "index out of range";
    case ErrorCode::ZeroForm: return "zero form";
    case ErrorCode::ZeroPolynomial: return "zero polynomial";
    case ErrorCode::ConstantPolynomial: return "constant polynomial";
    case ErrorCode::ZeroModP: return "polynomial vanishes modulo p";
    case ErrorCode::NotPrime: return "not a prime";
    case ErrorCode::PrimeTooLarge: return "prime too large";
    case ErrorCode::NotARoot: return "not a root";
    case ErrorCode::DerivativeVanishes: return "derivative vanishes";
    case ErrorCode::NotCoprime: return "not coprime";
    case ErrorCode::PrecisionInsufficient: return "precision insufficient";
    case ErrorCode::CharacteristicDividesDegree: return "characteristic divides degree";
    case ErrorCode::BudgetExceeded: return "budget exceeded";
    case ErrorCode::DegenerateSpecialization: return "degenerate specialization";
    case ErrorCode::Precondition: return "precondition violated";
    case ErrorCode::InvalidParameters: return "invalid parameters";
    case ErrorCode::ContentDivisible: return "prime divides content";
    case ErrorCode::NotExact: return "inexact division";
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::NonHomogeneous: return "non-homogeneous";
    case ErrorCode::Schema: return "schema error";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "inf";
  return os << v.value();
}

std::pair<unsigned long, Int> split_power(const Int& x, const Int& p) {
  Int rest = x;
  unsigned long e = 0;
  if (p == 2) {
    e = mpz_scan1(rest.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(rest.get_mpz_t(), rest.get_mpz_t(), e);
    return {e, rest};
  }
  e = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return {e, rest};
}

Valuation valuation(const Int& x, const Int& p) {
  if (x == 0) return Valuation::infinity();
  return Valuation(static_cast<long>(split_power(x, p).first));
}

Valuation valuation(const Rational& x, const Int& p) {
  if (x == 0) return Valuation::infinity();
  auto num = split_power(x.get_num(), p).first;
  auto den = split_power(x.get_den(), p).first;
  return Valuation(static_cast<long>(num) - static_cast<long>(den));
}

Int pow(const Int& base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Int powmod(const Int& base, const Int& exponent, const Int& modulus) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int symmetric_mod(const Int& a, const Int& m) {
  Int r = mod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

Int invmod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorCode::NotCoprime, "no inverse of " + a.get_str() + " modulo " + m.get_str());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  // GMP's test is BPSW plus Miller-Rabin rounds; deterministic below 2^64.
  return mpz_probab_prime_p(n.get_mpz_t(), 30) != 0;
}

void require_prime(const Int& p, const char* what) {
  if (!is_prime(p))
    throw Error(ErrorCode::NotPrime, std::string(what) + " = " + p.get_str() + " is not prime");
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2) return out;
  std::vector<bool> composite(hi + 1, false);
  for (std::uint64_t i = 2; i <= hi; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= hi; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi <= 50'000'000) {
    for (auto p : primes_up_to(hi))
      if (p >= lo) out.push_back(p);
    return out;
  }
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n)
    if (is_prime(Int(std::to_string(n)))) out.push_back(n);
  return out;
}

namespace {

Int pollard_brent(const Int& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Int y = seed % 1000 + 2, c = seed % 97 + 1, g = 1, q = 1, x, ys;
  const unsigned long m = 128;
  unsigned long r = 1;
  auto step = [&](const Int& v) { return mod(v * v + c, n); };
  do {
    x = y;
    for (unsigned long i = 0; i < r; ++i) y = step(y);
    unsigned long k = 0;
    do {
      ys = y;
      for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
        y = step(y);
        q = mod(q * abs(Int(x - y)), n);
      }
      g = gcd(q, n);
      k += m;
    } while (k < r && g == 1);
    r *= 2;
    if (r > (1ul << 26)) return n;
  } while (g == 1);
  if (g == n) {
    do {
      ys = step(ys);
      g = gcd(abs(Int(x - ys)), n);
    } while (g == 1);
  }
  return g;
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long seed = 1; seed < 64; ++seed) {
    Int d = pollard_brent(n, seed);
    if (d != 1 && d != n) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
  throw Error(ErrorCode::BudgetExceeded, "could not factor " + n.get_str());
}

}  // namespace

std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n) {
  if (n == 0) throw Error(ErrorCode::Precondition, "cannot factor zero");
  Int m = abs(n);
  std::map<Int, unsigned> found;
  for (unsigned long d = 2; d < 100000 && Int(d) * d <= m; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      ++found[Int(d)];
      m /= d;
    }
  }
  factor_into(m, found);
  return {found.begin(), found.end()};
}

std::vector<Int> positive_divisors(const Int& n) {
  std::vector<Int> divs{1};
  for (const auto& [prime, exponent] : factor_integer(n)) {
    const std::size_t base = divs.size();
    Int power = 1;
    for (unsigned e = 1; e <= exponent; ++e) {
      power *= prime;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool fits_u64(const Int& x) {
  return x >= 0 && mpz_sizeinbase(x.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(const Int& x) {
  if (!fits_u64(x)) throw Error(ErrorCode::PrimeTooLarge, x.get_str() + " does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, x.get_mpz_t());
  return out;
}

}  // namespace qdense
