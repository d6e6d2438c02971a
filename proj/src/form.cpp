#include "qdense/form.hpp"

#include <numeric>
#include <sstream>

#include "qdense/error.hpp"

namespace qdense {

namespace {

void check_point(const IntegralForm& f, std::size_t size) {
  if (size != f.n_vars())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(f.n_vars()) +
                                                  " coordinates, got " + std::to_string(size));
}

// powers[i][e] = point[i]^e for e <= degree
std::vector<std::vector<Int>> power_table(const std::vector<Int>& point, unsigned degree,
                                          const Int* modulus) {
  std::vector<std::vector<Int>> table(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) {
    auto& row = table[i];
    row.reserve(degree + 1);
    row.emplace_back(1);
    Int base = modulus ? mod(point[i], *modulus) : point[i];
    for (unsigned e = 1; e <= degree; ++e) {
      Int next = row.back() * base;
      if (modulus) next = mod(next, *modulus);
      row.push_back(std::move(next));
    }
  }
  return table;
}

Int evaluate_impl(const IntegralForm& f, const std::vector<Int>& point, const Int* modulus) {
  check_point(f, point.size());
  auto table = power_table(point, f.degree(), modulus);
  Int acc = 0, term;
  for (const auto& [e, c] : f.terms()) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) term *= table[i][e[i]];
    acc += term;
    if (modulus) acc = mod(acc, *modulus);
  }
  return acc;
}

}  // namespace

std::string variable_name(std::size_t index) { return "x" + std::to_string(index); }

IntegralForm::IntegralForm(std::size_t n_vars, unsigned degree) : n_vars_(n_vars), degree_(degree) {
  if (n_vars == 0) throw Error(ErrorCode::Precondition, "a form needs at least one variable");
}

IntegralForm::IntegralForm(std::size_t n_vars, unsigned degree, Terms terms)
    : IntegralForm(n_vars, degree) {
  for (auto& [e, c] : terms) {
    if (c == 0) continue;
    if (e.size() != n_vars)
      throw Error(ErrorCode::DimensionMismatch, "exponent vector has wrong length");
    if (std::accumulate(e.begin(), e.end(), 0u) != degree)
      throw Error(ErrorCode::NonHomogeneous, "term degree differs from form degree");
    terms_.emplace(e, std::move(c));
  }
}

IntegralForm IntegralForm::variable(std::size_t n_vars, std::size_t index) {
  if (index >= n_vars) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  Exponents e(n_vars, 0);
  e[index] = 1;
  Terms t;
  t.emplace(std::move(e), Int(1));
  return IntegralForm(n_vars, 1, std::move(t));
}

IntegralForm IntegralForm::linear(const std::vector<Int>& coeffs) {
  Terms t;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponents e(coeffs.size(), 0);
    e[i] = 1;
    t.emplace(std::move(e), coeffs[i]);
  }
  return IntegralForm(coeffs.size(), 1, std::move(t));
}

IntegralForm IntegralForm::constant(std::size_t n_vars, const Int& c) {
  Terms t;
  t.emplace(Exponents(n_vars, 0), c);
  return IntegralForm(n_vars, 0, std::move(t));
}

Int IntegralForm::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

Int IntegralForm::evaluate(const std::vector<Int>& point) const {
  return evaluate_impl(*this, point, nullptr);
}

Int IntegralForm::evaluate(const std::vector<Int>& point, const Int& modulus) const {
  if (modulus <= 0) throw Error(ErrorCode::Precondition, "modulus must be positive");
  return evaluate_impl(*this, point, &modulus);
}

IntegralForm IntegralForm::partial_derivative(std::size_t i) const {
  if (i >= n_vars_) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  IntegralForm out(n_vars_, degree_ == 0 ? 0 : degree_ - 1);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    out.terms_.emplace(std::move(d), c * e[i]);
  }
  return out;
}

UniPoly IntegralForm::specialize(std::size_t free_var, const std::vector<Int>& values) const {
  if (free_var >= n_vars_) throw Error(ErrorCode::IndexOutOfRange, "variable index out of range");
  if (values.size() + 1 != n_vars_)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n_vars_ - 1) + " values");
  std::vector<Int> point;
  point.reserve(n_vars_);
  for (std::size_t i = 0, k = 0; i < n_vars_; ++i) point.push_back(i == free_var ? Int(1) : values[k++]);
  auto table = power_table(point, degree_, nullptr);
  std::vector<Int> coeffs(degree_ + 1, Int(0));
  for (const auto& [e, c] : terms_) {
    Int term = c;
    for (std::size_t i = 0; i < n_vars_; ++i)
      if (i != free_var && e[i]) term *= table[i][e[i]];
    coeffs[e[free_var]] += term;
  }
  return UniPoly(std::move(coeffs));
}

std::pair<Int, IntegralForm> IntegralForm::content_and_primitive() const {
  if (is_zero()) throw Error(ErrorCode::ZeroForm, "content of the zero form");
  Int g = 0;
  for (const auto& [e, c] : terms_) g = gcd(g, c);
  IntegralForm prim(n_vars_, degree_);
  for (const auto& [e, c] : terms_) {
    Int q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    prim.terms_.emplace(e, std::move(q));
  }
  return {g, std::move(prim)};
}

IntegralForm IntegralForm::reduce_mod(const Int& m) const {
  if (m <= 0) throw Error(ErrorCode::Precondition, "modulus must be positive");
  IntegralForm out(n_vars_, degree_);
  for (const auto& [e, c] : terms_) {
    Int r = mod(c, m);
    if (r != 0) out.terms_.emplace(e, std::move(r));
  }
  return out;
}

IntegralForm IntegralForm::substitute(const std::vector<std::vector<Int>>& columns) const {
  if (columns.size() != n_vars_)
    throw Error(ErrorCode::DimensionMismatch, "substitution needs one row per variable");
  const std::size_t m = columns.empty() ? 0 : columns.front().size();
  for (const auto& row : columns)
    if (row.size() != m || m == 0) throw Error(ErrorCode::DimensionMismatch, "ragged substitution");
  std::vector<std::vector<IntegralForm>> powers(n_vars_);
  for (std::size_t i = 0; i < n_vars_; ++i) {
    powers[i].push_back(constant(m, 1));
    IntegralForm li = linear(columns[i]);
    for (unsigned e = 1; e <= degree_; ++e) powers[i].push_back(powers[i].back() * li);
  }
  IntegralForm out(m, degree_);
  for (const auto& [e, c] : terms_) {
    IntegralForm term = constant(m, c);
    for (std::size_t i = 0; i < n_vars_; ++i)
      if (e[i]) term = term * powers[i][e[i]];
    out = out + term;
  }
  return out;
}

IntegralForm IntegralForm::pow(unsigned exponent) const {
  IntegralForm result = constant(n_vars_, 1);
  IntegralForm base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent) base = base * base;
  }
  return result;
}

IntegralForm IntegralForm::scaled(const Int& c) const {
  IntegralForm out(n_vars_, degree_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

std::string IntegralForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int a = abs(c);
    bool constant_term = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    bool need_star = false;
    if (a != 1 || constant_term) {
      os << a;
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (need_star) os << "*";
      os << variable_name(i);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

IntegralForm operator+(const IntegralForm& a, const IntegralForm& b) {
  if (a.n_vars_ != b.n_vars_) throw Error(ErrorCode::DimensionMismatch, "forms in different variables");
  // A zero form carries no real degree, so it may be added to anything.
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree_ != b.degree_) throw Error(ErrorCode::NonHomogeneous, "adding forms of different degree");
  IntegralForm out = a;
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = out.terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

IntegralForm operator-(const IntegralForm& a) { return a.scaled(-1); }

IntegralForm operator-(const IntegralForm& a, const IntegralForm& b) { return a + (-b); }

IntegralForm operator*(const IntegralForm& a, const IntegralForm& b) {
  if (a.n_vars_ != b.n_vars_) throw Error(ErrorCode::DimensionMismatch, "forms in different variables");
  IntegralForm out(a.n_vars_, a.degree_ + b.degree_);
  Exponents e(a.n_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = out.terms_.try_emplace(e, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

}  // namespace qdense
