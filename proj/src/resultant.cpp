#include "qdense/resultant.hpp"

#include "qdense/error.hpp"

namespace qdense {

namespace {

Int exact_div(const Int& a, const Int& b) {
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

Int resultant(const UniPoly& f, const UniPoly& g) {
  if (f.modulus() || g.modulus()) throw Error(ErrorCode::Precondition, "resultant expects integer polynomials");
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return 0;

  UniPoly a = f, b = g;
  int sign = 1;
  if (*a.degree() < *b.degree()) {
    std::swap(a, b);
    if ((*a.degree() % 2 == 1) && (*b.degree() % 2 == 1)) sign = -sign;
  }
  if (*b.degree() == 0) return sign * qdense::pow(b.leading(), *a.degree());

  Int ca = content(a), cb = content(b);
  Int t = qdense::pow(ca, *b.degree()) * qdense::pow(cb, *a.degree());
  a = exact_quotient(a, ca);
  b = exact_quotient(b, cb);
  Int gg = 1, h = 1;
  for (;;) {
    const std::size_t da = *a.degree(), db = *b.degree();
    const std::size_t delta = da - db;
    if (da % 2 == 1 && db % 2 == 1) sign = -sign;
    UniPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = exact_quotient(r, gg * qdense::pow(h, delta));
    gg = a.leading();
    if (delta == 0) {
      // h^(1-0) g^0 = h
    } else {
      h = exact_div(qdense::pow(gg, delta), qdense::pow(h, delta - 1));
    }
    if (*b.degree() == 0) {
      const std::size_t d = *a.degree();
      Int hh = exact_div(qdense::pow(b.leading(), d), qdense::pow(h, d - 1));
      return sign * t * hh;
    }
  }
}

Int discriminant(const UniPoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "discriminant of zero polynomial");
  const std::size_t n = *f.degree();
  if (n == 0) throw Error(ErrorCode::ConstantPolynomial, "discriminant of a constant");
  Int res = resultant(f, f.derivative());
  Int d = exact_div(res, f.leading());
  return (n * (n - 1) / 2) % 2 ? Int(-d) : d;
}

SquarefreeDecomposition squarefree_decomposition(const UniPoly& f) {
  if (f.modulus()) throw Error(ErrorCode::Precondition, "squarefree decomposition expects integer polynomial");
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "squarefree decomposition of zero");
  SquarefreeDecomposition out{content(f), {}};
  UniPoly p = exact_quotient(f, out.content);
  if (p.is_constant()) return out;
  UniPoly g = gcd(p, p.derivative());
  UniPoly w = exact_quotient(p, g);
  for (unsigned i = 1; !w.is_constant(); ++i) {
    UniPoly y = gcd(w, g);
    UniPoly factor = exact_quotient(w, y);
    if (!factor.is_constant()) out.factors.emplace_back(primitive_part(factor), i);
    w = y;
    g = exact_quotient(g, y);
  }
  return out;
}

}  // namespace qdense
