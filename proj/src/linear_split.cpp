#include "qdense/linear_split.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qdense/error.hpp"
#include "qdense/fp_poly.hpp"

namespace qdense {

namespace {

constexpr std::size_t kMaxDivisors = 2'000'000;

std::vector<Int> bounded_divisors(const Int& n) {
  auto fac = factor_integer(n);
  double count = 1;
  for (const auto& [q, e] : fac) count *= e + 1.0;
  if (count > kMaxDivisors) throw Error(ErrorCode::BudgetExceeded, "too many divisor candidates");
  return positive_divisors(n);
}

}  // namespace

LinearSplitForm::LinearSplitForm(std::size_t n_vars, Int content, std::vector<LinearFactor> factors)
    : n_vars_(n_vars), content_(std::move(content)) {
  if (content_ == 0) throw Error(ErrorCode::ZeroForm, "linear split form with zero content");
  for (auto& f : factors) {
    if (f.coeffs.size() != n_vars) throw Error(ErrorCode::DimensionMismatch, "linear factor has wrong length");
    if (f.multiplicity == 0) continue;
    Int g = 0;
    for (const auto& c : f.coeffs) g = gcd(g, c);
    if (g == 0) throw Error(ErrorCode::ZeroForm, "zero linear factor");
    auto lead = std::find_if(f.coeffs.begin(), f.coeffs.end(), [](const Int& c) { return c != 0; });
    if (*lead < 0) g = -g;
    for (auto& c : f.coeffs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    content_ *= qdense::pow(g, f.multiplicity);
    auto same = std::find_if(factors_.begin(), factors_.end(),
                             [&](const LinearFactor& h) { return h.coeffs == f.coeffs; });
    if (same != factors_.end())
      same->multiplicity += f.multiplicity;
    else
      factors_.push_back(std::move(f));
  }
}

unsigned LinearSplitForm::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.multiplicity;
  return d;
}

IntegralForm LinearSplitForm::expand() const {
  IntegralForm out = IntegralForm::constant(n_vars_, content_);
  for (const auto& f : factors_) out = out * IntegralForm::linear(f.coeffs).pow(f.multiplicity);
  return out;
}

Int LinearSplitForm::evaluate(const std::vector<Int>& point) const {
  if (point.size() != n_vars_) throw Error(ErrorCode::DimensionMismatch, "point has wrong length");
  Int acc = content_;
  for (const auto& f : factors_) {
    Int v = 0;
    for (std::size_t i = 0; i < n_vars_; ++i) v += f.coeffs[i] * point[i];
    acc *= qdense::pow(v, f.multiplicity);
  }
  return acc;
}

std::string LinearSplitForm::to_string() const {
  std::ostringstream os;
  os << content_;
  for (const auto& f : factors_) {
    os << "*(" << IntegralForm::linear(f.coeffs).to_string() << ")";
    if (f.multiplicity > 1) os << "^" << f.multiplicity;
  }
  return os.str();
}

UniPoly IntegerRootedPoly::expand() const {
  UniPoly out = UniPoly::constant(lead);
  for (const auto& [r, e] : roots) out = out * UniPoly::linear(1, -r).pow(e);
  return out;
}

unsigned IntegerRootedPoly::degree() const {
  unsigned d = 0;
  for (const auto& r : roots) d += r.second;
  return d;
}

std::optional<LinearSplitForm> binary_linear_split(const IntegralForm& f) {
  if (f.n_vars() != 2) throw Error(ErrorCode::DimensionMismatch, "binary_linear_split needs a binary form");
  if (f.is_zero()) throw Error(ErrorCode::ZeroForm, "splitting the zero form");
  const unsigned d = f.degree();
  std::vector<Int> c(d + 1, Int(0));
  for (const auto& [e, v] : f.terms()) c[e[0]] = v;

  std::size_t lo = 0, hi = d;
  while (c[lo] == 0) ++lo;
  while (c[hi] == 0) --hi;
  std::vector<LinearFactor> factors;
  if (lo > 0) factors.push_back({{1, 0}, static_cast<unsigned>(lo)});
  if (hi < d) factors.push_back({{0, 1}, static_cast<unsigned>(d - hi)});

  UniPoly g(std::vector<Int>(c.begin() + lo, c.begin() + hi + 1));
  Int cont = content(g);
  g = exact_quotient(g, cont);

  if (!g.is_constant()) {
    // A rational root -b/a has a | lc and b | tc. Pair them through the roots of
    // g modulo a large prime l: b must be congruent to -a*r.
    Int ell = (Int(1) << 61) - 1;
    while (mod(g.leading(), ell) == 0 || !is_prime(ell)) --ell;
    const auto roots = roots_mod_p(g, ell);
    std::unordered_map<std::uint64_t, std::vector<Int>> by_residue;
    for (const auto& b : bounded_divisors(g.coeff(0))) {
      by_residue[to_u64(mod(b, ell))].push_back(b);
      by_residue[to_u64(mod(-b, ell))].push_back(-b);
    }
    std::set<std::pair<Int, Int>> tried;
    for (const auto& a : bounded_divisors(g.leading())) {
      for (const auto& [r, mult] : roots) {
        auto it = by_residue.find(to_u64(mod(-a * r, ell)));
        if (it == by_residue.end()) continue;
        for (const auto& b : it->second) {
          if (gcd(a, b) != 1 || !tried.emplace(a, b).second) continue;
          UniPoly lin = UniPoly::linear(a, b);
          unsigned e = 0;
          while (!g.is_constant()) {
            try {
              g = exact_quotient(g, lin);
              ++e;
            } catch (const Error&) {
              break;
            }
          }
          if (e > 0) factors.push_back({{a, b}, e});
        }
      }
    }
    if (!g.is_constant()) return std::nullopt;
  }
  return LinearSplitForm(2, cont * g.leading(), std::move(factors));
}

}  // namespace qdense
