#include "qdense/parser.hpp"

#include <cctype>
#include <map>

#include "qdense/error.hpp"

namespace qdense {

namespace {

using Poly = std::map<Exponents, Int>;

struct Token {
  enum Kind { Number, Variable, Op, End };
  Token(Kind k, std::size_t p) : kind(k), pos(p) {}
  Kind kind;
  std::size_t pos;
  char op = 0;
  Int value;
  std::size_t var = 0;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      Token t(Token::Number, i);
      t.value = Int(s.substr(i, j - i));
      out.push_back(std::move(t));
      i = j;
    } else if (c == 'x' || c == 'y' || c == 'z' || c == 'w') {
      Token t(Token::Variable, i);
      std::size_t j = i + 1;
      if (c == 'x' && j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) {
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        std::string digits = s.substr(i + 1, j - i - 1);
        if (digits.size() > 2 || std::stoul(digits) >= kMaxVariables)
          throw SyntaxError(i, "variables beyond x15 are not supported");
        t.var = std::stoul(digits);
      } else {
        t.var = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : 3;
      }
      if (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        throw SyntaxError(i, "unknown identifier");
      out.push_back(std::move(t));
      i = j;
    } else if (c == '+' || c == '-' || c == '*' || c == '^' || c == '(' || c == ')') {
      Token t(Token::Op, i);
      t.op = c;
      out.push_back(std::move(t));
      ++i;
    } else {
      throw SyntaxError(i, std::string("unexpected character '") + c + "'");
    }
  }
  out.emplace_back(Token::End, s.size());
  return out;
}

Exponents unit_exponents() { return Exponents(kMaxVariables, 0); }

Poly constant(const Int& c) {
  Poly p;
  if (c != 0) p[unit_exponents()] = c;
  return p;
}

Poly add(const Poly& a, const Poly& b, int sign) {
  Poly out = a;
  for (const auto& [e, c] : b) {
    Int& slot = out[e];
    slot += sign * c;
    if (slot == 0) out.erase(e);
  }
  return out;
}

Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponents e(kMaxVariables);
      for (std::size_t i = 0; i < kMaxVariables; ++i) e[i] = ea[i] + eb[i];
      Int& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  return out;
}

Poly power(const Poly& base, unsigned e) {
  Poly out = constant(1), b = base;
  while (e) {
    if (e & 1) out = mul(out, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return out;
}

unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

std::string monomial_text(const Exponents& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += variable_name(i);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : tokens_(tokenize(text)) {}

  Poly parse_all() {
    Poly p = expression();
    expect_end();
    return p;
  }

  /// sign * prod base_i^e_i at the top level.
  std::pair<int, std::vector<std::pair<Poly, unsigned>>> parse_product() {
    int sign = 1;
    while (is_op('+') || is_op('-')) sign *= next().op == '-' ? -1 : 1;
    std::vector<std::pair<Poly, unsigned>> factors{power_factor()};
    while (is_op('*')) {
      next();
      factors.push_back(power_factor());
    }
    expect_end();
    return {sign, std::move(factors)};
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool is_op(char c) const { return peek().kind == Token::Op && peek().op == c; }

  void expect_end() {
    if (peek().kind != Token::End) throw SyntaxError(peek().pos, "unexpected token");
  }

  Poly expression() {
    Poly acc = term();
    while (is_op('+') || is_op('-')) {
      int sign = next().op == '-' ? -1 : 1;
      acc = add(acc, term(), sign);
    }
    return acc;
  }

  Poly term() {
    if (is_op('-')) {
      next();
      return add(Poly{}, term(), -1);
    }
    if (is_op('+')) {
      next();
      return term();
    }
    Poly acc = factor();
    while (is_op('*')) {
      next();
      acc = mul(acc, factor());
    }
    if (peek().kind == Token::Number || peek().kind == Token::Variable || is_op('('))
      throw SyntaxError(peek().pos, "juxtaposition is not allowed; use '*'");
    return acc;
  }

  Poly factor() {
    auto [base, e] = power_factor();
    return power(base, e);
  }

  std::pair<Poly, unsigned> power_factor() {
    Poly base = primary();
    unsigned e = 1;
    if (is_op('^')) {
      next();
      const Token& t = next();
      if (t.kind != Token::Number) throw SyntaxError(t.pos, "exponent must be a non-negative integer literal");
      if (!t.value.fits_uint_p() || t.value > 10'000) throw SyntaxError(t.pos, "exponent too large");
      e = static_cast<unsigned>(t.value.get_ui());
      if (is_op('^')) throw SyntaxError(peek().pos, "chained exponents need parentheses");
    }
    return {std::move(base), e};
  }

  Poly primary() {
    const Token& t = next();
    switch (t.kind) {
      case Token::Number:
        return constant(t.value);
      case Token::Variable: {
        Exponents e = unit_exponents();
        e[t.var] = 1;
        return Poly{{e, Int(1)}};
      }
      case Token::Op:
        if (t.op == '(') {
          Poly inner = expression();
          if (!is_op(')')) throw SyntaxError(peek().pos, "expected ')'");
          next();
          return inner;
        }
        if (t.op == '-') return add(Poly{}, factor(), -1);
        throw SyntaxError(t.pos, std::string("unexpected '") + t.op + "'");
      case Token::End:
        break;
    }
    throw SyntaxError(t.pos, "unexpected end of input");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

std::size_t used_variables(const Poly& p) {
  std::size_t n = 0;
  for (const auto& [e, c] : p)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) n = std::max(n, i + 1);
  return n;
}

}  // namespace

IntegralForm parse_form(const std::string& text, std::size_t n_vars) {
  Poly p = Parser(text).parse_all();
  std::size_t used = used_variables(p);
  if (n_vars == 0) n_vars = std::max<std::size_t>(used, 1);
  if (used > n_vars)
    throw Error(ErrorCode::DimensionMismatch, "expression uses " + std::to_string(used) + " variables");
  if (p.empty()) return IntegralForm(n_vars, 0);
  const auto& [first_e, first_c] = *p.begin();
  unsigned degree = total_degree(first_e);
  IntegralForm::Terms terms;
  for (const auto& [e, c] : p) {
    if (total_degree(e) != degree)
      throw Error(ErrorCode::NonHomogeneous, "non-homogeneous: " + monomial_text(first_e) + " has degree " +
                                                 std::to_string(degree) + " but " + monomial_text(e) +
                                                 " has degree " + std::to_string(total_degree(e)));
    terms.emplace(Exponents(e.begin(), e.begin() + n_vars), c);
  }
  return IntegralForm(n_vars, degree, std::move(terms));
}

std::variant<LinearSplitForm, IntegerRootedPoly> parse_factored(const std::string& text) {
  auto [sign, factors] = Parser(text).parse_product();
  Int scalar = sign;
  bool affine = false;
  std::size_t n = 1;
  std::vector<std::pair<Poly, unsigned>> linear;
  for (auto& [base, e] : factors) {
    if (base.empty()) throw Error(ErrorCode::ZeroPolynomial, "factored expression has a zero factor");
    unsigned d = 0;
    for (const auto& [ex, c] : base) d = std::max(d, total_degree(ex));
    if (d == 0) {
      scalar *= pow(base.begin()->second, e);
      continue;
    }
    if (d > 1) throw Error(ErrorCode::Precondition, "every factor must be linear");
    if (base.count(unit_exponents())) affine = true;
    n = std::max(n, used_variables(base));
    linear.emplace_back(std::move(base), e);
  }
  if (!affine) {
    std::vector<LinearFactor> out;
    for (const auto& [base, e] : linear) {
      std::vector<Int> coeffs(n, 0);
      for (const auto& [ex, c] : base)
        for (std::size_t i = 0; i < n; ++i)
          if (ex[i]) coeffs[i] = c;
      out.push_back({std::move(coeffs), e});
    }
    return LinearSplitForm(n, scalar, std::move(out));
  }
  if (n != 1) throw Error(ErrorCode::Precondition, "affine factors must involve the single variable x");
  std::map<Int, unsigned> roots;
  for (const auto& [base, e] : linear) {
    Int b = 0, a = 0;
    for (const auto& [ex, c] : base) (ex[0] ? a : b) = c;
    if (a == 0 || b % a != 0)
      throw Error(ErrorCode::Precondition, "factor " + a.get_str() + "*x + " + b.get_str() + " has no integer root");
    scalar *= pow(a, e);
    roots[-b / a] += e;
  }
  IntegerRootedPoly f{scalar, {}};
  for (const auto& [r, e] : roots) f.roots.emplace_back(r, e);
  return f;
}

}  // namespace qdense
