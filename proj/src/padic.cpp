#include "qdense/padic.hpp"

#include <algorithm>
#include <deque>

#include "qdense/error.hpp"
#include "qdense/fp_poly.hpp"
#include "qdense/resultant.hpp"

namespace qdense {

namespace {

// Converges from a with v(g(a)) > 2 v(g'(a)) to the root mod p^k.
Int newton_lift(const UniPoly& g, Int x, const Int& p, unsigned k) {
  const UniPoly dg = g.derivative();
  for (;;) {
    Int gx = g(x);
    Int dx = dg(x);
    const long s = static_cast<long>(valuation(dx, p).value());
    Valuation v = valuation(gx, p);
    if (v.is_infinite() || v.value() >= static_cast<long>(k) + s) return mod(x, pow(p, k));
    const Int ps = pow(p, s);
    const Int m = pow(p, k + s);
    Int u, q;
    mpz_divexact(u.get_mpz_t(), dx.get_mpz_t(), ps.get_mpz_t());
    mpz_divexact(q.get_mpz_t(), gx.get_mpz_t(), ps.get_mpz_t());
    x = mod(x - q * invmod(u, m), pow(p, k + 2 * s + 1));
  }
}

}  // namespace

PadicContext::PadicContext(Int p, unsigned precision) : p_(std::move(p)), precision_(precision) {
  require_prime(p_, "p-adic context");
  if (precision_ == 0) throw Error(ErrorCode::Precondition, "precision must be at least 1");
  modulus_ = pow(p_, precision_);
}

PadicApprox to_padic(const Rational& x, const PadicContext& ctx) {
  if (x == 0) return {Valuation::infinity(), 0};
  Valuation v = valuation(x, ctx.p());
  Int num = x.get_num(), den = x.get_den();
  num = split_power(num, ctx.p()).second;
  den = split_power(den, ctx.p()).second;
  return {v, mod(num * invmod(den, ctx.modulus()), ctx.modulus())};
}

bool newton_condition(const UniPoly& f, const Int& r, const Int& p) {
  Int d = f.derivative()(r);
  if (d == 0) return false;
  Valuation v = valuation(f(r), p);
  return v.is_infinite() || v.value() > 2 * valuation(d, p).value();
}

Int hensel_lift_simple(const UniPoly& f, const Int& r0, const PadicContext& ctx) {
  const Int& p = ctx.p();
  if (mod(f(r0), p) != 0) throw Error(ErrorCode::NotARoot, "r0 is not a root of f mod p");
  if (mod(f.derivative()(r0), p) == 0) throw Error(ErrorCode::DerivativeVanishes, "f'(r0) = 0 mod p");
  const UniPoly df = f.derivative();
  Int r = mod(r0, p);
  unsigned prec = 1;
  while (prec < ctx.precision()) {
    prec = std::min(2 * prec, ctx.precision());
    const Int m = pow(p, prec);
    r = mod(r - f(r) * invmod(df(r), m), m);
  }
  return r;
}

std::pair<UniPoly, UniPoly> hensel_factor(const UniPoly& f, const UniPoly& g0, const UniPoly& h0,
                                          const PadicContext& ctx) {
  const Int& p = ctx.p();
  UniPoly fz = f.lift();
  UniPoly g = g0.reduce(p), h = h0.reduce(p);
  if (g.is_zero() || g.leading() != 1) throw Error(ErrorCode::Precondition, "g0 must be monic mod p");
  if (fz.reduce(p) != g * h) throw Error(ErrorCode::Precondition, "f is not g0*h0 mod p");
  XgcdModP bez = xgcd_mod_p(g, h, p);
  if (bez.g.degree() != std::optional<std::size_t>(0))
    throw Error(ErrorCode::NotCoprime, "g0 and h0 are not coprime mod p");
  UniPoly G = g.lift(), H = h.lift();
  Int pj = p;
  for (unsigned j = 1; j < ctx.precision(); ++j, pj *= p) {
    UniPoly err = fz - G * H;
    for (const auto& c : err.coeffs())
      if (!mpz_divisible_p(c.get_mpz_t(), pj.get_mpz_t()))
        throw Error(ErrorCode::Precondition, "lifting invariant broken");
    UniPoly e = exact_quotient(err, pj).reduce(p);
    auto [q, sigma] = divmod_mod_p(bez.t * e, g, p);
    UniPoly tau = bez.s * e + q * h;
    G = G + sigma.lift().scaled(pj);
    H = H + tau.lift().scaled(pj);
  }
  return {G.reduce(ctx.modulus()), H.reduce(ctx.modulus())};
}

std::vector<ZpRoot> zp_roots(const UniPoly& f, const PadicContext& ctx) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "roots of the zero polynomial");
  const Int& p = ctx.p();
  std::vector<ZpRoot> out;
  for (const auto& [g, mult] : squarefree_decomposition(f.lift()).factors) {
    const UniPoly dg = g.derivative();
    const Valuation vr = valuation(resultant(g, dg), p);
    const long cap = 2 * vr.value() + 2;
    struct Cls {
      Int a;
      long j;
    };
    std::deque<Cls> queue;
    if (g.reduce(p).is_constant()) continue;  // no roots mod p (g is primitive, so never zero)
    for (const auto& [r, e] : roots_mod_p(g, p)) queue.push_back({r, 1});
    while (!queue.empty()) {
      Cls c = queue.front();
      queue.pop_front();
      const Valuation s = valuation(dg(c.a), p);
      const Valuation v = valuation(g(c.a), p);
      if (s.is_finite() && c.j > s.value()) {
        if (v.is_infinite() || v.value() >= c.j + s.value())
          out.push_back({newton_lift(g, c.a, p, ctx.precision()), mult, true});
        continue;
      }
      if (c.j >= cap) throw Error(ErrorCode::PrecisionInsufficient, "root refinement exceeded separation bound");
      const Int pj = pow(p, c.j);
      for (Int t = 0; t < p; ++t) {
        Int child = c.a + t * pj;
        Valuation vc = valuation(g(child), p);
        if (vc.is_infinite() || vc.value() >= c.j + 1) queue.push_back({child, c.j + 1});
      }
    }
  }
  // Order by p-adic digits, least significant first, so the root with the smallest
  // residue mod p comes first.
  std::sort(out.begin(), out.end(), [&](const ZpRoot& a, const ZpRoot& b) {
    Int x = a.residue, y = b.residue;
    for (unsigned i = 0; i < ctx.precision(); ++i) {
      Int dx = mod(x, ctx.p()), dy = mod(y, ctx.p());
      if (dx != dy) return dx < dy;
      x /= ctx.p();
      y /= ctx.p();
    }
    return false;
  });
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].residue == out[i - 1].residue)
      throw Error(ErrorCode::PrecisionInsufficient,
                  "distinct roots agree mod p^" + std::to_string(ctx.precision()) + "; raise the precision");
  return out;
}

std::optional<ZpRoot> simple_zero_in_Zp(const UniPoly& f, const PadicContext& ctx) {
  for (auto& r : zp_roots(f, ctx))
    if (r.multiplicity == 1) return r;
  return std::nullopt;
}

}  // namespace qdense
