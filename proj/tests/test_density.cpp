#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qdense/density.hpp"
#include "qdense/families.hpp"
#include "qdense/fp_poly.hpp"
#include "qdense/padic.hpp"
#include "qdense/parser.hpp"
#include "qdense/residue.hpp"

using namespace qdense;

namespace {

const char* kQuintic = "x^5+x^3*y*z+y*z^4+x^4*z+x*y^4+y^5";
const char* kSextic = "x^6+x^5*y+x^4*y^2+x^2*y^4+y^6+x^2*z^4+z^6";

ProbeConfig audit_probe(std::uint64_t budget = 20'000) {
  ProbeConfig c;
  c.unit_depth = 1;
  c.window = 2;
  c.budget = budget;
  c.box_cap = budget;
  return c;
}

template <class T>
bool holds(const DensityVerdict& v) {
  return v.certificate && std::holds_alternative<T>(*v.certificate);
}

}  // namespace

TEST_CASE("decide examples") {
  auto quintic = parse_form(kQuintic);
  auto v1 = decide(quintic, 5);
  CHECK(v1.status == DensityStatus::Dense);
  REQUIRE(v1.certificate);
  CHECK(verify_certificate(quintic, 5, *v1.certificate));
  // The specialization certificate for the same prime is accepted too.
  SimpleZeroSpecialization spec{0, {1, 0}, hensel_lift_simple(quintic.specialize(0, {1, 0}), 2, PadicContext(5)),
                                kDefaultPrecision};
  CHECK(verify_certificate(quintic, 5, Certificate(spec)));

  auto cubic2 = parse_form("x^3 + x^2*y + y^3");
  auto v2 = decide(cubic2, 2);
  CHECK(v2.status == DensityStatus::NotDense);
  CHECK(holds<AnisotropicModP>(v2));

  auto norm3 = parse_form("x0^2 - x0*x1 + x1^2");
  auto v3 = decide(norm3, 5);
  CHECK(v3.status == DensityStatus::NotDense);
  REQUIRE(holds<AnisotropicModP>(v3));
  CHECK(std::get<AnisotropicModP>(*v3.certificate).points_enumerated == 6);
}

TEST_CASE("verify_certificate rejects corrupted witnesses") {
  auto quintic = parse_form(kQuintic);
  Int root = hensel_lift_simple(quintic.specialize(0, {1, 0}), 2, PadicContext(5));
  SimpleZeroSpecialization good{0, {1, 0}, root, kDefaultPrecision};
  CHECK(verify_certificate(quintic, 5, Certificate(good)));
  SimpleZeroSpecialization bad = good;
  bad.root += 1;
  CHECK_FALSE(verify_certificate(quintic, 5, Certificate(bad)));
  SimpleZeroSpecialization wrong_len = good;
  wrong_len.values = {1};
  CHECK_FALSE(verify_certificate(quintic, 5, Certificate(wrong_len)));

  auto norm3 = parse_form("x0^2 - x0*x1 + x1^2");
  CHECK_FALSE(verify_certificate(norm3, 7, Certificate(AnisotropicModP{8})));
  CHECK(verify_certificate(norm3, 5, Certificate(AnisotropicModP{6})));
  // A composite modulus never verifies.
  CHECK_FALSE(verify_certificate(norm3, 9, Certificate(AnisotropicModP{13})));
}

TEST_CASE("decide results always verify and probes agree") {
  std::vector<IntegralForm> battery{parse_form(kQuintic), parse_form("x^3 + x^2*y + x*y^2 + 6*y^3"),
                                    parse_form("x0^2 - x0*x1 + x1^2"), parse_form("x^4 + 17*x^3*y + y^4"),
                                    parse_form("x0*x1"), parse_form("x^3 + 2*y^3")};
  for (auto& f : battery)
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      auto v = decide(f, p);
      if (v.status == DensityStatus::Unknown) continue;
      REQUIRE(v.certificate);
      CHECK(verify_certificate(f, p, *v.certificate));
      if (v.status == DensityStatus::NotDense) CHECK_FALSE(quotient_probe(f, p, audit_probe()).has_valuation(1));
    }
}

TEST_CASE("constant forms are Unknown") {
  auto v = decide(IntegralForm::constant(2, 3), 5);
  CHECK(v.status == DensityStatus::Unknown);
}

TEST_CASE("scan_primes") {
  auto quintic = parse_form(kQuintic);
  auto rows = scan_primes(quintic, 0, {1, 0}, 200);
  std::set<long> dense;
  for (auto& r : rows) {
    if (r.verdict.status == DensityStatus::Dense) dense.insert(static_cast<long>(to_u64(r.p)));
    if (r.verdict.certificate) CHECK(verify_certificate(quintic, r.p, *r.verdict.certificate));
  }
  for (long p : {5, 13, 19, 31, 43, 101, 181}) CHECK(dense.count(p));

  // scan_primes and decide agree where both commit.
  for (auto& r : rows) {
    if (r.p > 40 || r.verdict.status == DensityStatus::Unknown) continue;
    auto d = decide(quintic, r.p);
    if (d.status != DensityStatus::Unknown) CHECK(d.status == r.verdict.status);
  }

  DecideConfig cfg;
  cfg.threads = 4;
  auto sextic = parse_form(kSextic);
  auto rows2 = scan_primes(sextic, 2, {1, 0}, 100'000, cfg);
  std::set<long> dense2;
  for (auto& r : rows2)
    if (r.verdict.status == DensityStatus::Dense) dense2.insert(static_cast<long>(to_u64(r.p)));
  for (long p : {3, 607, 1451, 5417, 88747}) CHECK(dense2.count(p));

  CHECK_ERROR_CODE(scan_primes(parse_form("x0^2", 2), 0, {1}, 50), ErrorCode::DegenerateSpecialization);
}

TEST_CASE("cubic_verdict") {
  auto f = parse_form("x^3 + x^2*y + x*y^2 + 6*y^3");
  CHECK(cubic_criterion_discriminant(1, 1, 1, 6) == -891);
  auto c = cubic_verdict(f, 5);
  CHECK(c.status == DensityStatus::Unknown);
  CHECK(decide(f, 5).status == DensityStatus::Dense);
  CHECK(roots_mod_p(f.specialize(0, {1}), Int(5)).size() == 3);

  auto g = parse_form("y*(x^2 + x*y + 2*y^2)");
  auto cg = cubic_verdict(g, 7);
  CHECK(cg.status == DensityStatus::Dense);
  REQUIRE(holds<CubicCriterion>(cg));
  CHECK(std::get<CubicCriterion>(*cg.certificate).part == 1);
  CHECK(verify_certificate(g, 7, *cg.certificate));

  // Random cubics with (D/p) = -1 are Dense, and the probe reaches valuation 1.
  std::mt19937_64 rng(41);
  int tested = 0;
  while (tested < 12) {
    long p = std::vector<long>{5, 7, 11, 13}[rng() % 4];
    long a = 1 + static_cast<long>(rng() % (p - 1)), b = static_cast<long>(rng() % p),
         cc = static_cast<long>(rng() % p), d = static_cast<long>(rng() % p);
    Int D = cubic_criterion_discriminant(a, b, cc, d);
    if (legendre_symbol(D, p) != -1) continue;
    ++tested;
    IntegralForm::Terms t;
    for (auto [e, v] : std::vector<std::pair<Exponents, long>>{{{3, 0}, a}, {{2, 1}, b}, {{1, 2}, cc}, {{0, 3}, d}})
      if (v) t[e] = v;
    IntegralForm h(2, 3, t);
    auto v = cubic_verdict(h, p);
    CHECK(v.status == DensityStatus::Dense);
    REQUIRE(v.certificate);
    CHECK(verify_certificate(h, p, *v.certificate));
    CHECK(quotient_probe(h, p, audit_probe()).has_valuation(1));
    // Cross-check: the specialization y = 1 has exactly one root mod p, a simple one.
    auto r = roots_mod_p(h.specialize(0, {1}), Int(p));
    REQUIRE(r.size() == 1);
    CHECK(r[0].second == 1);
  }
}

TEST_CASE("quartic_verdict") {
  auto f = parse_form("x^4 + 17*x^3*y + y^4");
  auto q = quartic_verdict(f, 17);
  CHECK(q.status == DensityStatus::Unknown);
  CHECK(quartic_recurrence_value(1, 0, 0, 1, 17) == 8);
  auto d = decide(f, 17);
  CHECK(d.status == DensityStatus::Dense);

  for (long p : {5L, 7L, 11L, 13L, 19L, 23L}) {
    IntegralForm g(2, 4, {{{4, 0}, Int(1)}, {{3, 1}, Int(p)}, {{0, 4}, Int(1)}});
    auto v = quartic_verdict(g, p);
    CHECK(v.status != DensityStatus::NotDense);
    if (v.status == DensityStatus::Dense) {
      CHECK(verify_certificate(g, p, *v.certificate));
      CHECK(quotient_probe(g, p, audit_probe()).has_valuation(1));
    }
  }

  CHECK_ERROR_CODE(quartic_verdict(parse_form("x^4 + 3*x^3*y + y^4"), 3), ErrorCode::Precondition);
  CHECK_ERROR_CODE(quartic_verdict(parse_form("x^4 + x^3*y + y^4"), 7), ErrorCode::Precondition);
}

TEST_CASE("valuation spectra and obstructions") {
  IntegerRootedPoly f{1, {{0, 6}, {-1, 10}, {-2, 15}}};
  auto s = valuation_spectrum(f, 7);
  CHECK(s.finite_values == std::set<long>{0});
  std::set<long> strides;
  for (auto& t : s.tails) strides.insert(t.stride);
  CHECK(strides == std::set<long>{6, 10, 15});
  CHECK_FALSE(unit_difference(s));
  auto ob = obstruction_from_spectrum(s, f);
  REQUIRE(ob);
  CHECK(verify_certificate(f.expand(), 7, Certificate(*ob)));

  IntegerRootedPoly g{1, {{0, 1}, {1, 1}}};
  auto sg = valuation_spectrum(g, 5);
  CHECK(sg.contains(0));
  CHECK(sg.contains(1));
  CHECK(unit_difference(sg));
  CHECK_FALSE(obstruction_from_spectrum(sg, g));

  // gcds of the strides all exceed 1, and no combination differs by 1.
  CHECK(std::gcd(6, 10) == 2);
  CHECK(std::gcd(6, 15) == 3);
  CHECK(std::gcd(10, 15) == 5);
  for (long a = 0; a < 60; ++a)
    for (long b = 0; b < 60; ++b) CHECK_FALSE((s.contains(a) && s.contains(b) && a - b == 1));

  auto g2 = finitely_dense_g(2, {2, 3, 5, 7});
  auto s2 = valuation_spectrum(g2, 101);
  for (auto& t : s2.tails) CHECK(std::set<long>{15, 21, 35}.count(t.stride));
  CHECK_FALSE(unit_difference(s2));
}

TEST_CASE("univariate_nonvanishing_obstruction") {
  auto c1 = univariate_nonvanishing_obstruction(UniPoly({Int(1), Int(0), Int(1)}), 3);
  REQUIRE(c1);
  CHECK(c1->residue_table == std::vector<Int>{1, 2, 2});
  CHECK(verify_certificate(UniPoly({Int(1), Int(0), Int(1)}), 3, Certificate(*c1)));
  CHECK_FALSE(univariate_nonvanishing_obstruction(UniPoly({Int(0), Int(1)}), 3));
  auto c3 = univariate_nonvanishing_obstruction(UniPoly({Int(1), Int(1), Int(1)}), 2);
  REQUIRE(c3);
  CHECK(c3->residue_table == std::vector<Int>{1, 1});
}
