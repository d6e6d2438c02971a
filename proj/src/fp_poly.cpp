#include "qdense/fp_poly.hpp"

#include <algorithm>
#include <random>

#include "qdense/error.hpp"

namespace qdense {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using Poly = std::vector<u64>;  // low to high, no trailing zeros

struct Field {
  u64 p;

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p ? s - p : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    // Extended Euclid on signed 128-bit values.
    __int128 t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      __int128 q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (r != 1) throw Error(ErrorCode::NotCoprime, "element not invertible mod p");
    if (t < 0) t += p;
    return static_cast<u64>(t);
  }
};

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long deg(const Poly& a) { return static_cast<long>(a.size()) - 1; }

Poly sub(const Field& F, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  trim(a);
  return a;
}

Poly mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<u128> acc(a.size() + b.size() - 1, 0);
  // Accumulate in 128 bits and reduce occasionally; p < 2^62 so 16 products fit.
  Poly out(acc.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<u128>(a[i]) * b[j];
      if (acc[i + j] >> 124) acc[i + j] %= F.p;
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<u64>(acc[k] % F.p);
  trim(out);
  return out;
}

// a = q*b + r
void divmod(const Field& F, const Poly& a, const Poly& b, Poly* q, Poly* r) {
  if (b.empty()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial mod p");
  Poly rem = a;
  Poly quo(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const u64 inv_lc = F.inv(b.back());
  const std::size_t db = b.size() - 1;
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k] == 0) continue;
    u64 t = F.mul(rem[k], inv_lc);
    quo[k - db] = t;
    for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] = F.sub(rem[k - db + i], F.mul(t, b[i]));
  }
  trim(rem);
  trim(quo);
  if (q) *q = std::move(quo);
  if (r) *r = std::move(rem);
}

Poly rem(const Field& F, const Poly& a, const Poly& b) {
  Poly r;
  divmod(F, a, b, nullptr, &r);
  return r;
}

Poly quo(const Field& F, const Poly& a, const Poly& b) {
  Poly q;
  divmod(F, a, b, &q, nullptr);
  return q;
}

Poly monic(const Field& F, Poly a) {
  if (a.empty()) return a;
  u64 inv = F.inv(a.back());
  for (auto& c : a) c = F.mul(c, inv);
  return a;
}

Poly gcd(const Field& F, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = rem(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(F, std::move(a));
}

Poly derivative(const Field& F, const Poly& a) {
  Poly out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(F.mul(a[i], i % F.p));
  trim(out);
  return out;
}

// base^e mod m with a big exponent.
Poly powmod(const Field& F, Poly base, const Int& e, const Poly& m) {
  Poly result{1 % F.p};
  trim(result);
  base = rem(F, base, m);
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t k = bits; k-- > 0;) {
    result = rem(F, mul(F, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), k)) result = rem(F, mul(F, result, base), m);
  }
  return rem(F, result, m);
}

bool is_one(const Poly& a) { return a.size() == 1 && a[0] == 1; }

// Squarefree factorization of a monic polynomial in characteristic p.
void squarefree(const Field& F, const Poly& f, unsigned scale, std::vector<std::pair<Poly, unsigned>>& out) {
  if (deg(f) < 1) return;
  Poly c = gcd(F, f, derivative(F, f));
  Poly w = quo(F, f, c);
  for (unsigned i = 1; deg(w) > 0; ++i) {
    Poly y = gcd(F, w, c);
    Poly fac = quo(F, w, y);
    if (deg(fac) > 0) out.emplace_back(fac, i * scale);
    w = std::move(y);
    c = quo(F, c, w);
  }
  if (deg(c) > 0) {
    // Remaining c is a p-th power: take the p-th root coefficientwise (Frobenius is identity on F_p).
    Poly root;
    for (std::size_t i = 0; i < c.size(); i += F.p) root.push_back(c[i]);
    trim(root);
    squarefree(F, root, scale * static_cast<unsigned>(F.p), out);
  }
}

// Distinct-degree factorization of a squarefree monic polynomial.
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Field& F, Poly f) {
  std::vector<std::pair<Poly, unsigned>> out;
  const Poly x{0, 1};
  Poly h = x;
  for (unsigned i = 1; 2 * static_cast<long>(i) <= deg(f); ++i) {
    h = powmod(F, h, Int(static_cast<unsigned long>(F.p)), f);
    Poly g = gcd(F, f, sub(F, h, x));
    if (!is_one(g)) {
      out.emplace_back(g, i);
      f = quo(F, f, g);
      h = rem(F, h, f);
    }
  }
  if (deg(f) > 0) out.emplace_back(f, static_cast<unsigned>(deg(f)));
  return out;
}

Poly random_poly(const Field& F, std::size_t len, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, F.p - 1);
  Poly a(len);
  for (auto& c : a) c = dist(rng);
  trim(a);
  return a;
}

// Splits a product of distinct monic irreducibles of degree d.
void equal_degree(const Field& F, const Poly& f, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (deg(f) == static_cast<long>(d)) {
    out.push_back(f);
    return;
  }
  if (d == 1 && F.p <= 3) {
    // Tiny fields: all roots by direct evaluation.
    for (u64 r = 0; r < F.p; ++r) {
      u64 v = 0;
      for (std::size_t k = f.size(); k-- > 0;) v = F.add(F.mul(v, r), f[k]);
      if (v == 0) out.push_back(Poly{F.neg(r), 1});
    }
    return;
  }
  const Int q = qdense::pow(Int(static_cast<unsigned long>(F.p)), d);
  for (;;) {
    Poly a = random_poly(F, f.size() - 1, rng);
    if (deg(a) < 1) continue;
    Poly b;
    if (F.p == 2) {
      // Absolute trace a + a^2 + ... + a^(2^(d-1)) splits over F_2.
      Poly t = a, acc = a;
      for (unsigned i = 1; i < d; ++i) {
        t = rem(F, mul(F, t, t), f);
        acc = sub(F, acc, t);
      }
      b = acc;
    } else {
      b = sub(F, powmod(F, a, (q - 1) / 2, f), Poly{1});
    }
    Poly g = gcd(F, f, b);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree(F, g, d, rng, out);
      equal_degree(F, quo(F, f, g), d, rng, out);
      return;
    }
  }
}

Field field_for(const Int& p) {
  require_prime(p, "factorization modulus");
  if (!fits_prime_field(p)) throw Error(ErrorCode::PrimeTooLarge, "prime " + p.get_str() + " exceeds 2^62");
  return Field{to_u64(p)};
}

Poly to_fp(const Field& F, const UniPoly& f) {
  Poly out;
  out.reserve(f.coeffs().size());
  const Int m(static_cast<unsigned long>(F.p));
  for (const auto& c : f.coeffs()) out.push_back(to_u64(mod(c, m)));
  trim(out);
  return out;
}

UniPoly from_fp(const Field& F, const Poly& a) {
  std::vector<Int> cs;
  cs.reserve(a.size());
  for (u64 c : a) cs.emplace_back(static_cast<unsigned long>(c));
  return UniPoly(std::move(cs), Int(static_cast<unsigned long>(F.p)));
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

std::vector<std::pair<Poly, unsigned>> factor_fp(const Field& F, const Poly& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree(F, monic(F, f), 1, sqf);
  std::vector<std::pair<Poly, unsigned>> out;
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(F, part)) {
      std::vector<Poly> pieces;
      equal_degree(F, block, d, rng, pieces);
      for (auto& piece : pieces) out.emplace_back(std::move(piece), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return poly_less(a.first, b.first);
    return a.second < b.second;
  });
  return out;
}

}  // namespace

bool fits_prime_field(const Int& p) { return p > 0 && mpz_sizeinbase(p.get_mpz_t(), 2) <= 62; }

FactorizationModP factor_mod_p(const UniPoly& f, const Int& p, std::uint64_t seed) {
  Field F = field_for(p);
  Poly a = to_fp(F, f);
  if (a.empty()) throw Error(ErrorCode::ZeroModP, "polynomial vanishes mod " + p.get_str());
  FactorizationModP out{Int(static_cast<unsigned long>(a.back())), {}};
  for (auto& [g, e] : factor_fp(F, a, seed)) out.factors.emplace_back(from_fp(F, g), e);
  return out;
}

std::vector<std::pair<Int, unsigned>> roots_mod_p(const UniPoly& f, const Int& p, std::uint64_t seed) {
  Field F = field_for(p);
  Poly a = to_fp(F, f);
  if (a.empty()) throw Error(ErrorCode::ZeroModP, "polynomial vanishes mod " + p.get_str());
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree(F, monic(F, a), 1, sqf);
  std::vector<std::pair<Int, unsigned>> out;
  const Poly x{0, 1};
  for (const auto& [part, mult] : sqf) {
    Poly lin = deg(part) == 1 ? part : gcd(F, part, sub(F, powmod(F, x, Int(static_cast<unsigned long>(F.p)), part), x));
    if (deg(lin) < 1) continue;
    std::vector<Poly> pieces;
    equal_degree(F, lin, 1, rng, pieces);
    for (const auto& piece : pieces) out.emplace_back(Int(static_cast<unsigned long>(F.neg(piece[0]))), mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::pair<UniPoly, UniPoly> divmod_mod_p(const UniPoly& a, const UniPoly& b, const Int& p) {
  Field F = field_for(p);
  Poly q, r;
  divmod(F, to_fp(F, a), to_fp(F, b), &q, &r);
  return {from_fp(F, q), from_fp(F, r)};
}

UniPoly gcd_mod_p(const UniPoly& a, const UniPoly& b, const Int& p) {
  Field F = field_for(p);
  return from_fp(F, gcd(F, to_fp(F, a), to_fp(F, b)));
}

XgcdModP xgcd_mod_p(const UniPoly& a, const UniPoly& b, const Int& p) {
  Field F = field_for(p);
  Poly r0 = to_fp(F, a), r1 = to_fp(F, b);
  Poly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    Poly q, r;
    divmod(F, r0, r1, &q, &r);
    Poly s2 = sub(F, s0, mul(F, q, s1));
    Poly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.empty()) {
    u64 inv = F.inv(r0.back());
    for (auto* v : {&r0, &s0, &t0})
      for (auto& c : *v) c = F.mul(c, inv);
  }
  return {from_fp(F, r0), from_fp(F, s0), from_fp(F, t0)};
}

}  // namespace qdense
