#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qdense/form.hpp"

namespace qdense {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Row i holds the coefficients of dF/dx_i over the degree d-1 monomials.
struct PartialsMatrix {
  std::vector<Exponents> monomials;
  std::vector<std::vector<Int>> rows;
};

PartialsMatrix partials_matrix(const IntegralForm& f);

/// Rank of the partials matrix over Q (p = nullopt) or over F_p.
/// Over F_p, throws CharacteristicDividesDegree when p | deg F.
unsigned order_of_form(const IntegralForm& f, const std::optional<Int>& p = std::nullopt);

/// Number of points of P^(n-1)(F_p), saturating at UINT64_MAX.
std::uint64_t projective_point_count(std::size_t n_vars, const Int& p);

struct FpPointReport {
  std::vector<Int> point;  // first non-zero coordinate is 1
  bool is_zero_of_F;
  std::optional<std::size_t> nonvanishing_partial_index;
};

struct AnisotropyReport {
  bool anisotropic;
  std::uint64_t points_enumerated;  // size of P^(n-1)(F_p)
  std::optional<std::vector<Int>> zero;  // lex-first zero when isotropic
};

AnisotropyReport is_anisotropic_mod_p(const IntegralForm& f, const Int& p,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

/// Lex-first projective zero mod p at which some partial derivative is non-zero.
std::optional<FpPointReport> smooth_point_mod_p(const IntegralForm& f, const Int& p,
                                                std::uint64_t budget = kDefaultEnumerationBudget);

struct LinearFactorModP {
  std::vector<Int> coeffs;  // residues mod p, first non-zero coefficient 1
  unsigned multiplicity;
};

/// Every linear factor of F mod p with its exact multiplicity.
std::vector<LinearFactorModP> linear_factors_mod_p(const IntegralForm& f, const Int& p,
                                                   std::uint64_t budget = kDefaultEnumerationBudget);

/// Multiplicity of the linear form L as a factor of F mod p (0 if it does not divide).
unsigned linear_factor_multiplicity(const IntegralForm& f, const std::vector<Int>& l, const Int& p);

/// A point of the hyperplane L = 0 (mod p) where dF/dx_j is non-zero, j = leading index of L.
std::optional<std::vector<Int>> cofactor_witness(const IntegralForm& f, const std::vector<Int>& l, const Int& p,
                                                 std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace qdense
