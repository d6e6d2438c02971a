#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "qdense/form.hpp"
#include "qdense/spectrum.hpp"

namespace qdense {

/// F(values with x_free left open) has a simple zero congruent to root mod p^k.
struct SimpleZeroSpecialization {
  std::size_t free_var;
  std::vector<Int> values;
  Int root;
  unsigned precision;
};

struct SpecializedRoot {
  std::size_t free_var;
  std::vector<Int> values;
  Int root;  // mod p^precision
  unsigned multiplicity;
};

/// Two Z_p zeros of specializations whose multiplicities are coprime.
struct CoprimeMultiplicities {
  SpecializedRoot first;
  SpecializedRoot second;
  unsigned precision;
};

/// L divides F mod p exactly once; at point (on L = 0) dF/dx_j is non-zero mod p.
struct SimpleLinearFactorModP {
  std::vector<Int> linear_form;
  std::vector<Int> point;
  std::size_t partial_index;
};

/// Smooth zero mod p and the root of the specialization through it, lifted mod p^k.
struct SmoothPointModP {
  std::vector<Int> point;
  std::size_t partial_index;
  Int lifted_root;
  unsigned precision;
};

/// part 1: a = 0 and (b, c) != (0, 0); part 2: a != 0, p > 3, (D/p) = -1.
struct CubicCriterion {
  int part;
  Int D;
  int legendre;
};

/// case 2: s_(p+1) = target mod p; case 1: the cubic non-residue test.
struct QuarticCriterion {
  int case_number;
  Int value;   // s_(p+1) mod p, or 8a^3c^3 + 27a^4d^2 mod p
  Int target;  // a^2c^2 - 4a^3e mod p (case 2 only)
};

struct AnisotropicModP {
  std::uint64_t points_enumerated;
};

/// f(r) mod p for r = 0 .. p-1, none zero.
struct UnivariateNonvanishing {
  std::vector<Int> residue_table;
};

/// Spectrum of a factored representation whose difference set misses 1.
struct ValuationObstruction {
  ValuationSpectrum spectrum;
  std::variant<LinearSplitForm, IntegerRootedPoly> source;
};

/// A family-specific argument; params and transcript make it re-checkable.
struct FamilyObstruction {
  std::string family;
  std::map<std::string, Int> params;
  std::vector<std::string> transcript;
  bool enumerated;  // anisotropy was confirmed by enumeration
};

using Certificate =
    std::variant<SimpleZeroSpecialization, CoprimeMultiplicities, SimpleLinearFactorModP, SmoothPointModP,
                 CubicCriterion, QuarticCriterion, AnisotropicModP, UnivariateNonvanishing,
                 ValuationObstruction, FamilyObstruction>;

const char* certificate_kind(const Certificate& c);
/// True for certificates of non-denseness.
bool certifies_not_dense(const Certificate& c);

/// Re-checks a certificate against F (its primitive part) at p. Never throws.
bool verify_certificate(const IntegralForm& f, const Int& p, const Certificate& cert);
/// Univariate variant: R(f(N)) at p.
bool verify_certificate(const UniPoly& f, const Int& p, const Certificate& cert);

/// Coefficients (a, b, c, d) of a binary cubic a x^3 + b x^2 y + c x y^2 + d y^3.
std::vector<Int> binary_coefficients(const IntegralForm& f);

/// a^2b^2c^2 - 4a^3c^3 - 4a^2b^3d - 27a^4d^2 + 18a^3bcd
Int cubic_criterion_discriminant(const Int& a, const Int& b, const Int& c, const Int& d);

/// s_(p+1) mod p for the quartic recurrence with parameters (a, c, d, e).
Int quartic_recurrence_value(const Int& a, const Int& c, const Int& d, const Int& e, const Int& p);

/// The value tested for q-th powers in the composite family (2, or -2 when q = 2).
Int composite_power_test_value(const Int& q);

}  // namespace qdense
