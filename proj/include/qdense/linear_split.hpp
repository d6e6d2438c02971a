#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdense/form.hpp"

namespace qdense {

struct LinearFactor {
  std::vector<Int> coeffs;
  unsigned multiplicity;

  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

/// content * prod L_i^e_i with primitive, sign-normalized linear forms L_i.
class LinearSplitForm {
 public:
  /// Normalizes each factor: non-primitive factors shed their content into the
  /// global content, leading non-zero coefficients become positive, and repeated
  /// factors are merged.
  LinearSplitForm(std::size_t n_vars, Int content, std::vector<LinearFactor> factors);

  std::size_t n_vars() const { return n_vars_; }
  const Int& content() const { return content_; }
  const std::vector<LinearFactor>& factors() const { return factors_; }
  unsigned degree() const;

  IntegralForm expand() const;
  Int evaluate(const std::vector<Int>& point) const;
  std::string to_string() const;

 private:
  std::size_t n_vars_;
  Int content_;
  std::vector<LinearFactor> factors_;
};

/// lead * prod (x - r_i)^e_i with distinct integer roots.
struct IntegerRootedPoly {
  Int lead;
  std::vector<std::pair<Int, unsigned>> roots;

  UniPoly expand() const;
  unsigned degree() const;
};

/// Splits a binary form into linear factors over Z, or nullopt if an irreducible
/// factor of degree >= 2 remains. Throws BudgetExceeded if the candidate divisor
/// sets are too large to enumerate.
std::optional<LinearSplitForm> binary_linear_split(const IntegralForm& f);

}  // namespace qdense
