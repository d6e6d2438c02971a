#pragma once

#include "qdense/unipoly.hpp"

namespace qdense {

/// Euler criterion; p must be an odd prime.
int legendre_symbol(const Int& a, const Int& p);

/// True iff a is a q-th power in F_p^*; throws ZeroModP when p | a.
bool is_qth_power_residue(const Int& a, const Int& q, const Int& p);

/// Order of a in (Z/q)^* for prime q with q not dividing a.
Int multiplicative_order(const Int& a, const Int& q);

/// 1 + t + ... + t^(q-1) for prime q.
UniPoly cyclotomic_poly(const Int& q);

}  // namespace qdense
