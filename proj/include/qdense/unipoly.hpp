#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdense/integer.hpp"

namespace qdense {

/// Dense univariate polynomial over Z, or over Z/m when a modulus is attached.
///
/// coeffs()[i] is the coefficient of x^i. The zero polynomial has no
/// coefficients and its degree() is std::nullopt (minus infinity).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Int> coeffs);
  UniPoly(std::vector<Int> coeffs, Int modulus);

  static UniPoly constant(const Int& c);
  static UniPoly monomial(const Int& c, std::size_t exponent);
  /// a*x + b
  static UniPoly linear(const Int& a, const Int& b);

  std::optional<std::size_t> degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }
  const Int& leading() const;
  const std::optional<Int>& modulus() const { return modulus_; }

  Int operator()(const Int& x) const;
  UniPoly derivative() const;
  UniPoly reduce(const Int& m) const;
  /// Drops the modulus, keeping canonical residues as integers.
  UniPoly lift() const;
  UniPoly pow(unsigned exponent) const;
  UniPoly scaled(const Int& c) const;

  std::string to_string(const std::string& var = "x") const;

  friend bool operator==(const UniPoly& a, const UniPoly& b) = default;
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a);

 private:
  void normalize();

  std::vector<Int> coeffs_;
  std::optional<Int> modulus_;
};

/// gcd of the coefficients with the sign of the leading coefficient.
Int content(const UniPoly& f);
/// f / content(f); leading coefficient positive.
UniPoly primitive_part(const UniPoly& f);

/// lc(g)^(deg f - deg g + 1) * f = q * g + r over Z.
std::pair<UniPoly, UniPoly> pseudo_divmod(const UniPoly& f, const UniPoly& g);
UniPoly pseudo_remainder(const UniPoly& f, const UniPoly& g);
/// Exact quotient over Z; throws NotExact when g does not divide f.
UniPoly exact_quotient(const UniPoly& f, const UniPoly& g);
/// Divides every coefficient by d exactly.
UniPoly exact_quotient(const UniPoly& f, const Int& d);
/// Primitive gcd over Z with positive leading coefficient (zero if both are zero).
UniPoly gcd(const UniPoly& f, const UniPoly& g);

}  // namespace qdense
