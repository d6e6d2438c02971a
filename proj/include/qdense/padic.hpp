#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qdense/unipoly.hpp"

namespace qdense {

inline constexpr unsigned kDefaultPrecision = 20;

class PadicContext {
 public:
  explicit PadicContext(Int p, unsigned precision = kDefaultPrecision);

  const Int& p() const { return p_; }
  unsigned precision() const { return precision_; }
  /// p^precision
  const Int& modulus() const { return modulus_; }

 private:
  Int p_;
  unsigned precision_;
  Int modulus_;
};

/// p^valuation * unit, unit known mod p^k. unit is 0 when the valuation is infinite.
struct PadicApprox {
  Valuation valuation;
  Int unit;
};

PadicApprox to_padic(const Rational& x, const PadicContext& ctx);

struct ZpRoot {
  Int residue;  // in [0, p^k)
  unsigned multiplicity;
  bool separation_certified;

  PadicApprox approx(const PadicContext& ctx) const { return to_padic(Rational(residue), ctx); }
};

/// Newton lift of a simple root r0 mod p to the root mod p^k.
Int hensel_lift_simple(const UniPoly& f, const Int& r0, const PadicContext& ctx);

/// Lifts f = g0*h0 mod p (g0 monic, coprime to h0) to f = G*H mod p^k.
std::pair<UniPoly, UniPoly> hensel_factor(const UniPoly& f, const UniPoly& g0, const UniPoly& h0,
                                          const PadicContext& ctx);

/// All roots of f in Z_p, each with its multiplicity, sorted by residue.
std::vector<ZpRoot> zp_roots(const UniPoly& f, const PadicContext& ctx);

std::optional<ZpRoot> simple_zero_in_Zp(const UniPoly& f, const PadicContext& ctx);

/// Generalized Newton condition v(f(r)) > 2 v(f'(r)) with f'(r) != 0: r approximates
/// a unique root of f, congruent to r modulo p^(v(f(r)) - v(f'(r))).
bool newton_condition(const UniPoly& f, const Int& r, const Int& p);

}  // namespace qdense
