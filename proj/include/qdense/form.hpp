#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdense/integer.hpp"
#include "qdense/unipoly.hpp"

namespace qdense {

using Exponents = std::vector<unsigned>;

/// Homogeneous polynomial in n_vars variables with integer coefficients.
///
/// Terms are kept in descending lexicographic order of exponent vectors; since all
/// vectors share the same total degree this is graded-lex order. Zero
/// coefficients are never stored.
class IntegralForm {
 public:
  using Terms = std::map<Exponents, Int, std::greater<>>;

  IntegralForm(std::size_t n_vars, unsigned degree);
  IntegralForm(std::size_t n_vars, unsigned degree, Terms terms);

  static IntegralForm variable(std::size_t n_vars, std::size_t index);
  /// sum c_i x_i
  static IntegralForm linear(const std::vector<Int>& coeffs);
  static IntegralForm constant(std::size_t n_vars, const Int& c);

  std::size_t n_vars() const { return n_vars_; }
  unsigned degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Int coefficient(const Exponents& e) const;

  Int evaluate(const std::vector<Int>& point) const;
  Int evaluate(const std::vector<Int>& point, const Int& modulus) const;

  IntegralForm partial_derivative(std::size_t i) const;
  /// Univariate polynomial in x_free after fixing the other variables in order.
  UniPoly specialize(std::size_t free_var, const std::vector<Int>& values) const;
  /// (content > 0, primitive part); throws ZeroForm.
  std::pair<Int, IntegralForm> content_and_primitive() const;
  /// Coefficients replaced by canonical residues mod m, zeros dropped.
  IntegralForm reduce_mod(const Int& m) const;
  /// Substitutes x_i = sum_j columns[i][j] * y_j; the result has columns[i].size() variables.
  IntegralForm substitute(const std::vector<std::vector<Int>>& columns) const;

  IntegralForm pow(unsigned exponent) const;
  IntegralForm scaled(const Int& c) const;
  std::string to_string() const;

  friend bool operator==(const IntegralForm& a, const IntegralForm& b) {
    return a.n_vars_ == b.n_vars_ && a.terms_ == b.terms_;
  }
  friend IntegralForm operator+(const IntegralForm& a, const IntegralForm& b);
  friend IntegralForm operator-(const IntegralForm& a, const IntegralForm& b);
  friend IntegralForm operator*(const IntegralForm& a, const IntegralForm& b);
  friend IntegralForm operator-(const IntegralForm& a);

 private:
  std::size_t n_vars_;
  unsigned degree_;
  Terms terms_;
};

/// Canonical variable name: x0, x1, ...
std::string variable_name(std::size_t index);

}  // namespace qdense
