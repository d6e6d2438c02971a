#pragma once

#include <string>
#include <variant>

#include "qdense/form.hpp"
#include "qdense/linear_split.hpp"

namespace qdense {

inline constexpr std::size_t kMaxVariables = 16;

/// Parses and expands a form over x0..x15 (aliases x, y, z, w). n_vars = 0 infers
/// the count from the highest variable used. Throws SyntaxError or NonHomogeneous.
IntegralForm parse_form(const std::string& text, std::size_t n_vars = 0);

/// Parses a product of powers of linear factors. Homogeneous factors give a
/// LinearSplitForm; factors a*x + b in one variable give an IntegerRootedPoly.
std::variant<LinearSplitForm, IntegerRootedPoly> parse_factored(const std::string& text);

}  // namespace qdense
