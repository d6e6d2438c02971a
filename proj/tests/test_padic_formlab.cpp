#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "qdense/formlab.hpp"
#include "qdense/linear_split.hpp"
#include "qdense/padic.hpp"
#include "qdense/parser.hpp"

using namespace qdense;

namespace {

UniPoly P(std::vector<long> c) {
  std::vector<Int> v(c.begin(), c.end());
  return UniPoly(v);
}

// Every x in [0, p^k) with f(x) = 0 mod p^k.
std::vector<Int> brute_roots_mod(const UniPoly& f, long p, unsigned k) {
  const Int m = pow(Int(p), k);
  std::vector<Int> out;
  for (Int x = 0; x < m; ++x)
    if (mod(f(x), m) == 0) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("padic valuation examples") {
  CHECK(valuation(Int(0), Int(3)).is_infinite());
  CHECK(valuation(Int(35), Int(5)) == Valuation(1));
  CHECK(valuation(Int(12), Int(2)) == Valuation(2));
  CHECK(valuation(Rational(50, 3), Int(5)) == Valuation(2));
  CHECK(valuation(Rational(4, 125), Int(5)) == Valuation(-3));
}

TEST_CASE("hensel_lift_simple") {
  for (long p : {2L, 5L, 13L}) CHECK(hensel_lift_simple(P({-3, 1}), mod(Int(3), Int(p)), PadicContext(p, 4)) == 3);

  const auto f = P({1, 1, 0, 0, 0, 1});
  Int r = hensel_lift_simple(f, 2, PadicContext(5, 2));
  // Oracle: one explicit Newton step r = 2 - f(2)/f'(2) mod 25.
  Int newton = mod(Int(2) - f(Int(2)) * invmod(f.derivative()(Int(2)), Int(25)), Int(25));
  CHECK(r == newton);
  CHECK(r == 17);
  CHECK(mod(f(r), Int(25)) == 0);

  Int s = hensel_lift_simple(P({-2, 0, 1}), 3, PadicContext(7, 3));
  auto brute = brute_roots_mod(P({-2, 0, 1}), 7, 3);
  std::vector<Int> lifts_of_3;
  for (auto& x : brute)
    if (mod(x, Int(7)) == 3) lifts_of_3.push_back(x);
  REQUIRE(lifts_of_3.size() == 1);
  CHECK(s == lifts_of_3[0]);
  CHECK(s == 108);

  CHECK_ERROR_CODE(hensel_lift_simple(f, 1, PadicContext(5, 3)), ErrorCode::NotARoot);
  CHECK_ERROR_CODE(hensel_lift_simple(P({0, 0, 1}), 0, PadicContext(5, 3)), ErrorCode::DerivativeVanishes);
  CHECK_ERROR_CODE(PadicContext(9, 3), ErrorCode::NotPrime);
}

TEST_CASE("hensel_lift_simple is stable under precision extension") {
  const auto f = P({1, 1, 0, 0, 0, 1});
  Int r5 = hensel_lift_simple(f, 2, PadicContext(5, 5));
  Int r12 = hensel_lift_simple(f, 2, PadicContext(5, 12));
  CHECK(hensel_lift_simple(f, r5, PadicContext(5, 12)) == r12);
  CHECK(mod(r12, pow(Int(5), 5)) == r5);
}

TEST_CASE("hensel_factor") {
  auto [g1, h1] = hensel_factor(P({-1, 0, 1}), P({-1, 1}), P({1, 1}), PadicContext(5, 3));
  CHECK(g1.lift() == P({124, 1}));
  CHECK(h1.lift() == P({1, 1}));

  const Int m25(25);
  auto [g2, h2] = hensel_factor(P({-6, 0, 1}), P({-1, 1}), P({1, 1}), PadicContext(5, 2));
  CHECK(((g2.lift() * h2.lift()) - P({-6, 0, 1})).reduce(m25).is_zero());
  // Oracle: the monic linear G = x - a mod 25 with a = 1 mod 5 dividing x^2 - 6.
  long found = -1;
  for (long a = 1; a < 25; a += 5)
    if ((a * a - 6) % 25 == 0) found = a;
  REQUIRE(found >= 0);
  CHECK(g2.lift() == P({25 - found, 1}));

  const auto f3 = P({-2, 1}) * P({1, 1, 1});
  auto [g3, h3] = hensel_factor(f3, P({3, 1}), P({1, 1, 1}), PadicContext(5, 4));
  CHECK(((g3.lift() * h3.lift()) - f3).reduce(Int(625)).is_zero());
  CHECK(g3.leading() == 1);
  CHECK(g3.lift().reduce(Int(5)) == P({3, 1}).reduce(Int(5)));

  CHECK_ERROR_CODE(hensel_factor(P({1, 2, 1}), P({1, 1}), P({1, 1}), PadicContext(5, 3)), ErrorCode::NotCoprime);
}

TEST_CASE("zp_roots") {
  auto r1 = zp_roots(P({0, -5, 1}), PadicContext(5, 20));
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].residue == 0);
  CHECK(r1[1].residue == 5);
  CHECK(r1[0].multiplicity == 1);
  CHECK(r1[0].separation_certified);

  auto x = P({0, 1});
  auto f = x.pow(6) * P({1, 1}).pow(10) * P({2, 1}).pow(15);
  PadicContext c7(7, 20);
  auto r2 = zp_roots(f, c7);
  REQUIRE(r2.size() == 3);
  std::map<Int, unsigned> got;
  for (auto& r : r2) got[r.residue] = r.multiplicity;
  CHECK(got[Int(0)] == 6);
  CHECK(got[c7.modulus() - 1] == 10);
  CHECK(got[c7.modulus() - 2] == 15);

  CHECK(zp_roots(P({1, 0, 1}), c7).empty());

  // Random split polynomials.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    std::map<long, unsigned> want;
    while (want.size() < 1 + rng() % 3) want[static_cast<long>(rng() % 41) - 20] = 1 + rng() % 3;
    UniPoly g = UniPoly::constant(1);
    for (auto [a, e] : want) g = g * P({-a, 1}).pow(e);
    for (long p : {2L, 3L, 7L, 23L, 47L}) {
      PadicContext ctx(p, 20);
      auto roots = zp_roots(g, ctx);
      REQUIRE(roots.size() == want.size());
      for (auto& r : roots) {
        CHECK(mod(g(r.residue), ctx.modulus()) == 0);
        bool matched = false;
        for (auto [a, e] : want)
          if (mod(Int(a), ctx.modulus()) == r.residue) matched = (e == r.multiplicity);
        CHECK(matched);
      }
    }
  }
}

TEST_CASE("zp_roots reports insufficient precision") {
  // Roots 0 and 5^6 agree to 6 digits; 3 digits cannot separate them.
  CHECK_ERROR_CODE(zp_roots(P({0, -15625, 1}), PadicContext(5, 3)), ErrorCode::PrecisionInsufficient);
}

TEST_CASE("simple_zero_in_Zp") {
  auto z1 = simple_zero_in_Zp(P({1, 1, 0, 0, 0, 1}), PadicContext(5));
  REQUIRE(z1);
  CHECK(mod(z1->residue, Int(5)) == 2);
  CHECK(z1->multiplicity == 1);
  for (long p : {2L, 3L, 11L}) CHECK_FALSE(simple_zero_in_Zp(P({0, 0, 1}), PadicContext(p)));
  auto z2 = simple_zero_in_Zp(P({1, 0, 0, 17, 1}), PadicContext(17));
  REQUIRE(z2);
  CHECK(mod(z2->residue, Int(17)) == 2);
}

TEST_CASE("order_of_form") {
  CHECK(order_of_form(parse_form("x0^4", 3)) == 1);
  CHECK(order_of_form(parse_form("x0^2 - x0*x1 + x1^2")) == 2);
  auto s = parse_form("x1^2 + x2^2", 3);
  auto f = parse_form("x0^6", 3) + s.pow(3).scaled(2);
  CHECK(order_of_form(f) == 3);
  CHECK(order_of_form(parse_form("(x0 + x1)^3", 3)) == 1);
  CHECK(order_of_form(parse_form("x0^2 - x0*x1 + x1^2"), Int(7)) == 2);
  CHECK_ERROR_CODE(order_of_form(parse_form("x0^2 - x0*x1 + x1^2"), Int(2)),
                   ErrorCode::CharacteristicDividesDegree);

  auto m = partials_matrix(parse_form("x0^2 - x0*x1 + x1^2"));
  CHECK(m.rows.size() == 2);
  CHECK(m.monomials.size() == 2);
}

TEST_CASE("order is invariant under powers") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    IntegralForm::Terms t;
    for (unsigned a = 0; a <= 3; ++a)
      for (unsigned b = 0; a + b <= 3; ++b) {
        long c = static_cast<long>(rng() % 7) - 3;
        if (c) t[{a, b, 3 - a - b}] = c;
      }
    IntegralForm f(3, 3, t);
    if (f.is_zero()) continue;
    const unsigned o = order_of_form(f);
    CHECK(order_of_form(f.pow(2)) == o);
    CHECK(order_of_form(f.pow(3)) == o);
  }
}

TEST_CASE("is_anisotropic_mod_p") {
  auto q = parse_form("x0^2 - x0*x1 + x1^2");
  auto a2 = is_anisotropic_mod_p(q, 2);
  CHECK(a2.anisotropic);
  CHECK(a2.points_enumerated == 3);
  CHECK(is_anisotropic_mod_p(parse_form("x^3 + x^2*y + y^3"), 2).anisotropic);
  auto a7 = is_anisotropic_mod_p(q, 7);
  CHECK_FALSE(a7.anisotropic);
  REQUIRE(a7.zero);
  CHECK(q.evaluate(*a7.zero, Int(7)) == 0);
  CHECK_ERROR_CODE(is_anisotropic_mod_p(parse_form("x0^2 + x1^2 + x2^2"), 101, 1000), ErrorCode::BudgetExceeded);

  // Spot check against random points.
  std::mt19937_64 rng(29);
  auto cubic = parse_form("x^3 + x^2*y + y^3");
  for (int i = 0; i < 1000; ++i) {
    std::vector<Int> x{Int(static_cast<long>(rng() % 2)), Int(static_cast<long>(rng() % 2))};
    if (x[0] == 0 && x[1] == 0) continue;
    CHECK(cubic.evaluate(x, Int(2)) != 0);
  }
}

TEST_CASE("linear_factors_mod_p") {
  auto f = parse_form("y*(3*x^2 + x*y + 2*y^2)");
  auto lf = linear_factors_mod_p(f, 5);
  bool has_y = false;
  for (auto& l : lf)
    if (l.coeffs == std::vector<Int>{0, 1}) has_y = l.multiplicity == 1;
  CHECK(has_y);
  CHECK(linear_factors_mod_p(parse_form("x0^2 - x0*x1 + x1^2"), 2).empty());
  auto cube = linear_factors_mod_p(parse_form("x0^3", 2), 5);
  REQUIRE(cube.size() == 1);
  CHECK(cube[0].coeffs == std::vector<Int>{1, 0});
  CHECK(cube[0].multiplicity == 3);
  CHECK_ERROR_CODE(linear_factors_mod_p(parse_form("5*x0^2 + 10*x1^2"), 5), ErrorCode::ZeroModP);

  // Degree bookkeeping: the multiplicities never exceed the degree.
  auto g = parse_form("(x + 2*y)^2 * (x - y) * (x^2 + y^2)");
  auto lg = linear_factors_mod_p(g, 3);
  unsigned total = 0;
  for (auto& l : lg) total += l.multiplicity;
  CHECK(total == 3);  // x^2 + y^2 is irreducible mod 3
  auto lg7 = linear_factors_mod_p(g, 13);
  total = 0;
  for (auto& l : lg7) total += l.multiplicity;
  CHECK(total == 5);  // -1 is a square mod 13
}

TEST_CASE("smooth_point_mod_p") {
  auto s1 = smooth_point_mod_p(parse_form("x0*x1"), 5);
  REQUIRE(s1);
  CHECK(s1->is_zero_of_F);
  CHECK(parse_form("x0*x1").partial_derivative(*s1->nonvanishing_partial_index).evaluate(s1->point, Int(5)) != 0);
  auto quintic = parse_form("x^5+x^3*y*z+y*z^4+x^4*z+x*y^4+y^5");
  auto s2 = smooth_point_mod_p(quintic, 5);
  REQUIRE(s2);
  CHECK(quintic.evaluate(s2->point, Int(5)) == 0);
  CHECK(quintic.evaluate({2, 1, 0}, Int(5)) == 0);
  CHECK(quintic.partial_derivative(0).evaluate({2, 1, 0}, Int(5)) != 0);
  CHECK_FALSE(smooth_point_mod_p(parse_form("(x0 + x1)^2"), 3));
}

TEST_CASE("binary_linear_split") {
  CHECK_FALSE(binary_linear_split(parse_form("x^2 + y^2")));
  auto s = binary_linear_split(parse_form("x^3*y^2*(x + 2*y)"));
  REQUIRE(s);
  CHECK(s->content() == 1);
  CHECK(s->expand() == parse_form("x^3*y^2*(x + 2*y)"));
  std::map<std::vector<Int>, unsigned> got;
  for (auto& f : s->factors()) got[f.coeffs] = f.multiplicity;
  CHECK(got == std::map<std::vector<Int>, unsigned>{{{1, 0}, 3}, {{0, 1}, 2}, {{1, 2}, 1}});

  auto t = binary_linear_split(parse_form("-6*(2*x - 3*y)^2*(x + y)"));
  REQUIRE(t);
  CHECK(t->expand() == parse_form("-6*(2*x - 3*y)^2*(x + y)"));
}
