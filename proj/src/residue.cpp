#include "qdense/residue.hpp"

#include "qdense/error.hpp"

namespace qdense {

int legendre_symbol(const Int& a, const Int& p) {
  require_prime(p, "Legendre symbol modulus");
  if (p == 2) throw Error(ErrorCode::Precondition, "Legendre symbol needs an odd prime");
  Int r = powmod(mod(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

bool is_qth_power_residue(const Int& a, const Int& q, const Int& p) {
  require_prime(q, "residue degree");
  require_prime(p, "residue modulus");
  Int am = mod(a, p);
  if (am == 0) throw Error(ErrorCode::ZeroModP, "p divides a");
  Int g = gcd(q, p - 1);
  return powmod(am, (p - 1) / g, p) == 1;
}

Int multiplicative_order(const Int& a, const Int& q) {
  require_prime(q, "order modulus");
  Int am = mod(a, q);
  if (am == 0) throw Error(ErrorCode::ZeroModP, "q divides a");
  Int order = q - 1;
  for (const auto& [r, e] : factor_integer(q - 1)) {
    for (unsigned i = 0; i < e; ++i) {
      if (powmod(am, order / r, q) != 1) break;
      order /= r;
    }
  }
  return order;
}

UniPoly cyclotomic_poly(const Int& q) {
  require_prime(q, "cyclotomic index");
  if (!q.fits_ulong_p() || q > 100000) throw Error(ErrorCode::InvalidParameters, "cyclotomic index too large");
  return UniPoly(std::vector<Int>(q.get_ui(), Int(1)));
}

}  // namespace qdense
