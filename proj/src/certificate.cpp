#include "qdense/certificate.hpp"

#include <array>
#include <numeric>

#include "qdense/error.hpp"
#include "qdense/families.hpp"
#include "qdense/formlab.hpp"
#include "qdense/padic.hpp"
#include "qdense/residue.hpp"
#include "qdense/resultant.hpp"

namespace qdense {

namespace {

using Mat3 = std::array<std::array<Int, 3>, 3>;

Mat3 mul(const Mat3& a, const Mat3& b, const Int& p) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Int s = 0;
      for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
      c[i][j] = mod(s, p);
    }
  return c;
}

IntegralForm primitive(const IntegralForm& f) { return f.content_and_primitive().second; }

bool nonzero_mod(const std::vector<Int>& x, const Int& p) {
  for (const auto& c : x)
    if (mod(c, p) != 0) return true;
  return false;
}

std::vector<Int> others(const std::vector<Int>& point, std::size_t skip) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (i != skip) out.push_back(point[i]);
  return out;
}

// Root r of g is certified as a Z_p zero of multiplicity m.
bool certified_root(const UniPoly& g, const Int& r, unsigned m, const Int& p, unsigned k) {
  if (g.is_zero()) return false;
  if (mod(g(r), pow(p, k)) != 0) return false;
  for (const auto& [h, e] : squarefree_decomposition(g).factors)
    if (e == m && newton_condition(h, r, p)) return true;
  return false;
}

bool verify_form(const IntegralForm& input, const Int& p, const SimpleZeroSpecialization& c) {
  IntegralForm f = primitive(input);
  UniPoly g = f.specialize(c.free_var, c.values);
  if (c.precision == 0 || g.is_zero()) return false;
  if (c.root < 0 || c.root >= pow(p, c.precision)) return false;
  return mod(g(c.root), pow(p, c.precision)) == 0 && newton_condition(g, c.root, p);
}

bool verify_form(const IntegralForm& input, const Int& p, const CoprimeMultiplicities& c) {
  IntegralForm f = primitive(input);
  if (std::gcd(c.first.multiplicity, c.second.multiplicity) != 1) return false;
  for (const auto* s : {&c.first, &c.second})
    if (!certified_root(f.specialize(s->free_var, s->values), s->root, s->multiplicity, p, c.precision))
      return false;
  return true;
}

bool smooth_at(const IntegralForm& f, const Int& p, const std::vector<Int>& point, std::size_t j) {
  if (point.size() != f.n_vars() || j >= f.n_vars() || !nonzero_mod(point, p)) return false;
  return f.evaluate(point, p) == 0 && f.partial_derivative(j).evaluate(point, p) != 0;
}

bool verify_form(const IntegralForm& input, const Int& p, const SimpleLinearFactorModP& c) {
  IntegralForm f = primitive(input);
  if (c.linear_form.size() != f.n_vars() || !nonzero_mod(c.linear_form, p)) return false;
  Int lp = 0;
  for (std::size_t i = 0; i < c.point.size() && i < c.linear_form.size(); ++i) lp += c.linear_form[i] * c.point[i];
  if (mod(lp, p) != 0) return false;
  if (!smooth_at(f, p, c.point, c.partial_index)) return false;
  return linear_factor_multiplicity(f, c.linear_form, p) == 1;
}

bool verify_form(const IntegralForm& input, const Int& p, const SmoothPointModP& c) {
  IntegralForm f = primitive(input);
  if (!smooth_at(f, p, c.point, c.partial_index) || c.precision == 0) return false;
  UniPoly g = f.specialize(c.partial_index, others(c.point, c.partial_index));
  if (mod(c.lifted_root - c.point[c.partial_index], p) != 0) return false;
  return mod(g(c.lifted_root), pow(p, c.precision)) == 0 && mod(g.derivative()(c.lifted_root), p) != 0;
}

bool verify_form(const IntegralForm& input, const Int& p, const CubicCriterion& c) {
  if (input.n_vars() != 2 || input.degree() != 3) return false;
  auto co = binary_coefficients(primitive(input));
  const Int &a = co[0], &b = co[1], &cc = co[2], &d = co[3];
  if (c.part == 1) return a == 0 && (b != 0 || cc != 0);
  if (c.part != 2 || a == 0 || p <= 3) return false;
  Int D = cubic_criterion_discriminant(a, b, cc, d);
  return D == c.D && c.legendre == -1 && legendre_symbol(D, p) == -1;
}

bool verify_form(const IntegralForm& input, const Int& p, const QuarticCriterion& c) {
  if (input.n_vars() != 2 || input.degree() != 4 || p <= 3) return false;
  auto co = binary_coefficients(primitive(input));
  const Int &a = co[0], &b = co[1], &cc = co[2], &d = co[3], &e = co[4];
  if (a == 0 || b == 0 || mod(b, p) != 0) return false;
  const Int A = a * a * cc * cc + 12 * a * a * a * e;
  if (c.case_number == 2) {
    if (mod(A, p) == 0) return false;
    Int s = quartic_recurrence_value(a, cc, d, e, p);
    Int target = mod(a * a * cc * cc - 4 * a * a * a * e, p);
    return s == c.value && target == c.target && s == target;
  }
  if (c.case_number != 1 || mod(A, p) != 0 || mod(p, 3) != 1) return false;
  Int v = mod(8 * pow(a, 3) * pow(cc, 3) + 27 * pow(a, 4) * d * d, p);
  return v == c.value && v != 0 && !is_qth_power_residue(v, 3, p);
}

bool verify_form(const IntegralForm& input, const Int& p, const AnisotropicModP& c) {
  IntegralForm f = primitive(input);
  if (f.degree() < 2) return false;
  auto rep = is_anisotropic_mod_p(f, p, UINT64_MAX);
  return rep.anisotropic && rep.points_enumerated == c.points_enumerated;
}

bool verify_form(const IntegralForm&, const Int&, const UnivariateNonvanishing&) { return false; }

bool verify_form(const IntegralForm& input, const Int& p, const ValuationObstruction& c) {
  const auto* split = std::get_if<LinearSplitForm>(&c.source);
  if (!split || split->n_vars() != input.n_vars() || c.spectrum.q != p) return false;
  if (!(split->expand().content_and_primitive().second == primitive(input))) return false;
  return valuation_spectrum(*split, p, UINT64_MAX) == c.spectrum && !unit_difference(c.spectrum);
}

bool verify_form(const IntegralForm& input, const Int& p, const FamilyObstruction& c) {
  IntegralForm f = primitive(input);
  auto param = [&](const char* name) -> Int {
    auto it = c.params.find(name);
    if (it == c.params.end()) throw Error(ErrorCode::Schema, std::string("missing parameter ") + name);
    return it->second;
  };
  if (c.family == "cyclotomic") {
    Int q = param("q");
    if (!(primitive(cyclotomic_norm_form(q)) == f) || p == q || f.degree() < 2) return false;
    if (c.enumerated) return is_anisotropic_mod_p(f, p, UINT64_MAX).anisotropic;
    // Phi_q irreducible mod p exactly when p generates (Z/q)^*; the norm form is then anisotropic.
    return multiplicative_order(p, q) == q - 1;
  }
  if (c.family == "composite") {
    Int q = param("q"), k = param("k"), m = param("m");
    if (!k.fits_uint_p() || !m.fits_uint_p()) return false;
    if (!(primitive(composite_counterexample(q, k.get_ui(), m.get_ui())) == f)) return false;
    if (mod(k * q, p) == 0) return false;
    return !is_qth_power_residue(composite_power_test_value(q), q, p);
  }
  return false;
}

bool verify_uni(const UniPoly& f, const Int& p, const UnivariateNonvanishing& c) {
  if (!p.fits_ulong_p() || c.residue_table.size() != p.get_ui()) return false;
  for (unsigned long r = 0; r < p.get_ui(); ++r) {
    Int v = mod(f(Int(r)), p);
    if (v == 0 || v != c.residue_table[r]) return false;
  }
  return true;
}

bool verify_uni(const UniPoly& f, const Int& p, const ValuationObstruction& c) {
  const auto* rooted = std::get_if<IntegerRootedPoly>(&c.source);
  if (!rooted || c.spectrum.q != p || f.is_zero()) return false;
  if (!(primitive_part(rooted->expand()) == primitive_part(f.lift()))) return false;
  return valuation_spectrum(*rooted, p, UINT64_MAX) == c.spectrum && !unit_difference(c.spectrum);
}

bool verify_uni(const UniPoly& f, const Int& p, const SimpleZeroSpecialization& c) {
  if (c.precision == 0) return false;
  return mod(f(c.root), pow(p, c.precision)) == 0 && newton_condition(f.lift(), c.root, p);
}

bool verify_uni(const UniPoly& f, const Int& p, const CoprimeMultiplicities& c) {
  if (std::gcd(c.first.multiplicity, c.second.multiplicity) != 1) return false;
  return certified_root(f.lift(), c.first.root, c.first.multiplicity, p, c.precision) &&
         certified_root(f.lift(), c.second.root, c.second.multiplicity, p, c.precision);
}

template <class T>
bool verify_uni(const UniPoly&, const Int&, const T&) {
  return false;
}

}  // namespace

const char* certificate_kind(const Certificate& c) {
  static constexpr const char* names[] = {
      "SimpleZeroSpecialization", "CoprimeMultiplicities",  "SimpleLinearFactorModP", "SmoothPointModP",
      "CubicCriterion",           "QuarticCriterion",       "AnisotropicModP",        "UnivariateNonvanishing",
      "ValuationObstruction",     "FamilyObstruction"};
  return names[c.index()];
}

bool certifies_not_dense(const Certificate& c) {
  return std::holds_alternative<AnisotropicModP>(c) || std::holds_alternative<UnivariateNonvanishing>(c) ||
         std::holds_alternative<ValuationObstruction>(c) || std::holds_alternative<FamilyObstruction>(c);
}

bool verify_certificate(const IntegralForm& f, const Int& p, const Certificate& cert) {
  try {
    if (f.is_zero() || !is_prime(p)) return false;
    return std::visit([&](const auto& c) { return verify_form(f, p, c); }, cert);
  } catch (const std::exception&) {
    return false;
  }
}

bool verify_certificate(const UniPoly& f, const Int& p, const Certificate& cert) {
  try {
    if (f.is_zero() || !is_prime(p)) return false;
    return std::visit([&](const auto& c) { return verify_uni(f, p, c); }, cert);
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<Int> binary_coefficients(const IntegralForm& f) {
  if (f.n_vars() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a binary form");
  std::vector<Int> out(f.degree() + 1, Int(0));
  for (const auto& [e, c] : f.terms()) out[e[1]] = c;
  return out;
}

Int cubic_criterion_discriminant(const Int& a, const Int& b, const Int& c, const Int& d) {
  return a * a * b * b * c * c - 4 * pow(a, 3) * pow(c, 3) - 4 * a * a * pow(b, 3) * d - 27 * pow(a, 4) * d * d +
         18 * pow(a, 3) * b * c * d;
}

Int quartic_recurrence_value(const Int& a, const Int& c, const Int& d, const Int& e, const Int& p) {
  const Int alpha = mod(-2 * a * c, p);
  const Int beta = mod(4 * pow(a, 3) * e - a * a * c * c, p);
  const Int gamma = mod(pow(a, 4) * d * d, p);
  const Int s0 = mod(Int(3), p), s1 = mod(-2 * a * c, p), s2 = mod(2 * a * a * c * c + 8 * pow(a, 3) * e, p);
  // (s_(n+2), s_(n+1), s_n) -> (s_(n+3), s_(n+2), s_(n+1)); p - 1 steps reach s_(p+1).
  Mat3 m{{{alpha, beta, gamma}, {Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}}};
  Mat3 r{{{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}}};
  Int n = p - 1;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = mul(r, m, p);
    m = mul(m, m, p);
    n >>= 1;
  }
  return mod(r[0][0] * s2 + r[0][1] * s1 + r[0][2] * s0, p);
}

Int composite_power_test_value(const Int& q) { return q == 2 ? Int(-2) : Int(2); }

}  // namespace qdense
