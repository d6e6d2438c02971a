#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qdense/unipoly.hpp"

namespace qdense {

/// Default seed for equal-degree splitting; fixed so runs are reproducible.
inline constexpr std::uint64_t kDefaultSplitSeed = 0x51ed270b7a3c9e45ULL;

/// Largest supported prime for F_p polynomial arithmetic is below 2^62.
bool fits_prime_field(const Int& p);

struct FactorizationModP {
  Int leading_unit;
  // Monic irreducible factors mod p with multiplicities, sorted by degree then coefficients.
  std::vector<std::pair<UniPoly, unsigned>> factors;
};

/// Complete factorization of f over F_p; throws ZeroModP when f = 0 mod p.
FactorizationModP factor_mod_p(const UniPoly& f, const Int& p,
                               std::uint64_t seed = kDefaultSplitSeed);

/// Roots in [0, p) with their multiplicities, ascending.
std::vector<std::pair<Int, unsigned>> roots_mod_p(const UniPoly& f, const Int& p,
                                                  std::uint64_t seed = kDefaultSplitSeed);

/// Quotient and remainder over F_p; results carry modulus p.
std::pair<UniPoly, UniPoly> divmod_mod_p(const UniPoly& a, const UniPoly& b, const Int& p);
/// Monic gcd over F_p (zero if both vanish mod p).
UniPoly gcd_mod_p(const UniPoly& a, const UniPoly& b, const Int& p);

struct XgcdModP {
  UniPoly g, s, t;  // s*a + t*b = g, g monic
};
XgcdModP xgcd_mod_p(const UniPoly& a, const UniPoly& b, const Int& p);

}  // namespace qdense
