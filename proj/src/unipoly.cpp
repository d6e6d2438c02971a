#include "qdense/unipoly.hpp"

#include <algorithm>
#include <sstream>

#include "qdense/error.hpp"

namespace qdense {

namespace {

void require_same_ring(const UniPoly& a, const UniPoly& b) {
  if (a.modulus() != b.modulus())
    throw Error(ErrorCode::Precondition, "polynomials over different coefficient rings");
}

}  // namespace

UniPoly::UniPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

UniPoly::UniPoly(std::vector<Int> coeffs, Int modulus)
    : coeffs_(std::move(coeffs)), modulus_(std::move(modulus)) {
  if (*modulus_ <= 0) throw Error(ErrorCode::Precondition, "modulus must be positive");
  normalize();
}

UniPoly UniPoly::constant(const Int& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Int& c, std::size_t exponent) {
  std::vector<Int> cs(exponent + 1, Int(0));
  cs[exponent] = c;
  return UniPoly(std::move(cs));
}

UniPoly UniPoly::linear(const Int& a, const Int& b) { return UniPoly({b, a}); }

void UniPoly::normalize() {
  if (modulus_)
    for (auto& c : coeffs_) c = mod(c, *modulus_);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::optional<std::size_t> UniPoly::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.size() - 1;
}

const Int& UniPoly::leading() const {
  if (coeffs_.empty()) throw Error(ErrorCode::ZeroPolynomial, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

Int UniPoly::operator()(const Int& x) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
    if (modulus_) acc = mod(acc, *modulus_);
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Int> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * static_cast<unsigned long>(i));
  return modulus_ ? UniPoly(std::move(out), *modulus_) : UniPoly(std::move(out));
}

UniPoly UniPoly::reduce(const Int& m) const { return UniPoly(coeffs_, m); }

UniPoly UniPoly::lift() const { return UniPoly(coeffs_); }

UniPoly UniPoly::pow(unsigned exponent) const {
  UniPoly result = modulus_ ? UniPoly({Int(1)}, *modulus_) : UniPoly::constant(1);
  UniPoly base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

UniPoly UniPoly::scaled(const Int& c) const {
  std::vector<Int> out = coeffs_;
  for (auto& v : out) v *= c;
  return modulus_ ? UniPoly(std::move(out), *modulus_) : UniPoly(std::move(out));
}

std::string UniPoly::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    Int c = coeffs_[k];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int a = abs(c);
    if (k == 0 || a != 1) {
      os << a;
      if (k > 0) os << "*";
    }
    if (k > 0) os << var;
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  require_same_ring(a, b);
  std::vector<Int> out(std::max(a.coeffs_.size(), b.coeffs_.size()), Int(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return a.modulus_ ? UniPoly(std::move(out), *a.modulus_) : UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a) {
  std::vector<Int> out = a.coeffs_;
  for (auto& c : out) c = -c;
  return a.modulus_ ? UniPoly(std::move(out), *a.modulus_) : UniPoly(std::move(out));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return a.modulus_ ? UniPoly({}, *a.modulus_) : UniPoly();
  std::vector<Int> out(a.coeffs_.size() + b.coeffs_.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return a.modulus_ ? UniPoly(std::move(out), *a.modulus_) : UniPoly(std::move(out));
}

Int content(const UniPoly& f) {
  Int g = 0;
  for (const auto& c : f.coeffs()) g = gcd(g, c);
  if (!f.is_zero() && f.leading() < 0) g = -g;
  return g;
}

UniPoly primitive_part(const UniPoly& f) {
  if (f.is_zero()) return f;
  return exact_quotient(f, content(f));
}

UniPoly exact_quotient(const UniPoly& f, const Int& d) {
  std::vector<Int> out = f.coeffs();
  for (auto& c : out) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      throw Error(ErrorCode::NotExact, "coefficient not divisible by " + d.get_str());
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  }
  return UniPoly(std::move(out));
}

std::pair<UniPoly, UniPoly> pseudo_divmod(const UniPoly& f, const UniPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "pseudo-division by zero");
  if (f.is_zero() || *f.degree() < *g.degree()) return {UniPoly(), f};
  const std::size_t dg = *g.degree();
  const Int& lc = g.leading();
  std::vector<Int> r = f.coeffs();
  std::vector<Int> q(*f.degree() - dg + 1, Int(0));
  // Each step multiplies everything so far by lc, which yields lc^(delta+1) overall.
  for (std::size_t k = r.size(); k-- > dg;) {
    Int t = r[k];
    for (auto& c : q) c *= lc;
    q[k - dg] += t;
    for (std::size_t i = 0; i < k; ++i) r[i] *= lc;
    for (std::size_t i = 0; i < dg; ++i) r[k - dg + i] -= t * g.coeffs()[i];
    r[k] = 0;
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly pseudo_remainder(const UniPoly& f, const UniPoly& g) { return pseudo_divmod(f, g).second; }

UniPoly exact_quotient(const UniPoly& f, const UniPoly& g) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
  if (f.is_zero()) return UniPoly();
  if (*f.degree() < *g.degree()) throw Error(ErrorCode::NotExact, "divisor has larger degree");
  const std::size_t dg = *g.degree();
  const Int& lc = g.leading();
  std::vector<Int> r = f.coeffs();
  std::vector<Int> q(*f.degree() - dg + 1, Int(0));
  for (std::size_t k = r.size(); k-- > dg;) {
    if (r[k] == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), lc.get_mpz_t()))
      throw Error(ErrorCode::NotExact, "polynomial division is not exact");
    Int t;
    mpz_divexact(t.get_mpz_t(), r[k].get_mpz_t(), lc.get_mpz_t());
    q[k - dg] = t;
    for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] -= t * g.coeffs()[i];
  }
  for (const auto& c : r)
    if (c != 0) throw Error(ErrorCode::NotExact, "polynomial division leaves a remainder");
  return UniPoly(std::move(q));
}

UniPoly gcd(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() && g.is_zero()) return UniPoly();
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  UniPoly a = primitive_part(f), b = primitive_part(g);
  if (*a.degree() < *b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    UniPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return primitive_part(a);
}

}  // namespace qdense
