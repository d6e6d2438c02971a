#pragma once

#include <utility>
#include <vector>

#include "qdense/unipoly.hpp"

namespace qdense {

/// Determinant of the Sylvester matrix, via the subresultant PRS.
Int resultant(const UniPoly& f, const UniPoly& g);

/// (-1)^(n(n-1)/2) Res(f, f') / a_n.
Int discriminant(const UniPoly& f);

struct SquarefreeDecomposition {
  Int content;
  // Primitive, positive leading coefficient, pairwise coprime; ascending multiplicity.
  std::vector<std::pair<UniPoly, unsigned>> factors;
};

/// f = content * prod g_i^e_i over Z.
SquarefreeDecomposition squarefree_decomposition(const UniPoly& f);

}  // namespace qdense
