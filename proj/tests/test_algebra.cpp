#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qdense/form.hpp"
#include "qdense/fp_poly.hpp"
#include "qdense/parser.hpp"
#include "qdense/residue.hpp"
#include "qdense/resultant.hpp"

using namespace qdense;

namespace {

UniPoly P(std::vector<long> c) {
  std::vector<Int> v(c.begin(), c.end());
  return UniPoly(v);
}

const char* kQuintic = "x^5+x^3*y*z+y*z^4+x^4*z+x*y^4+y^5";
const char* kSextic = "x^6+x^5*y+x^4*y^2+x^2*y^4+y^6+x^2*z^4+z^6";

Int oracle_discriminant(const UniPoly& f) {
  const std::size_t n = *f.degree();
  Int r = oracle::sylvester_resultant(f, f.derivative());
  if ((n * (n - 1) / 2) % 2) r = -r;
  return r / f.leading();
}

}  // namespace

TEST_CASE("evaluate") {
  auto q = parse_form("x0^2 - x0*x1 + x1^2");
  CHECK(q.evaluate({1, 1}) == 1);
  auto f = parse_form(kQuintic);
  CHECK(f.evaluate({2, 1, 0}) == 35);
  CHECK(f.evaluate({3, 1, 0}) == 247);
  CHECK(f.evaluate({3, 1, 0}, Int(13)) == 0);
  CHECK_ERROR_CODE(f.evaluate({1, 2}), ErrorCode::DimensionMismatch);
}

TEST_CASE("partial_derivative") {
  CHECK(parse_form("x0^3").partial_derivative(0) == parse_form("3*x0^2"));
  auto q = parse_form("x0^2 - x0*x1 + x1^2");
  CHECK(q.partial_derivative(1) == parse_form("-x0 + 2*x1"));
  auto q3 = parse_form("x0^2 - x0*x1 + x1^2", 3);
  auto d = q3.partial_derivative(2);
  CHECK(d.is_zero());
  CHECK(d.degree() == 1);
  CHECK_ERROR_CODE(q.partial_derivative(2), ErrorCode::IndexOutOfRange);
}

TEST_CASE("specialize") {
  CHECK(parse_form(kQuintic).specialize(0, {1, 0}) == P({1, 1, 0, 0, 0, 1}));
  CHECK(parse_form(kSextic).specialize(2, {1, 0}) == P({1, 0, 0, 0, 1, 0, 1}));
  CHECK(parse_form("x0^2 - x0*x1 + x1^2").specialize(0, {0}) == P({0, 0, 1}));
}

TEST_CASE("content_and_primitive") {
  auto [c1, p1] = parse_form("2*x0^2 + 4*x1^2").content_and_primitive();
  CHECK(c1 == 2);
  CHECK(p1 == parse_form("x0^2 + 2*x1^2"));
  auto q = parse_form("x0^2 - x0*x1 + x1^2");
  auto [c2, p2] = q.content_and_primitive();
  CHECK(c2 == 1);
  CHECK(p2 == q);
  auto [c3, p3] = parse_form("6*x0^3").content_and_primitive();
  CHECK(c3 == 6);
  CHECK(p3 == parse_form("x0^3"));
  CHECK_ERROR_CODE(IntegralForm(2, 2).content_and_primitive(), ErrorCode::ZeroForm);
}

TEST_CASE("resultant") {
  CHECK(resultant(P({-3, 1}), P({-1, 1})) == 2);
  CHECK(resultant(P({1, 0, 1}), P({0, 1})) == 1);
  CHECK_ERROR_CODE(resultant(UniPoly(), UniPoly()), ErrorCode::ZeroPolynomial);

  // Res_t(t^2+t+1, x0 + x1 t) equals x0^2 - x0x1 + x1^2 at every integer point.
  auto norm = parse_form("x0^2 - x0*x1 + x1^2");
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      if (a == 0 && b == 0) continue;
      CHECK(resultant(P({1, 1, 1}), P({a, b})) == norm.evaluate({a, b}));
    }
  CHECK(resultant(P({1, 1, 1}), P({1, 1})) == 1);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long> a(1 + rng() % 7), b(1 + rng() % 6);
    for (auto& x : a) x = coef(rng);
    for (auto& x : b) x = coef(rng);
    a.back() = a.back() ? a.back() : 1;
    b.back() = b.back() ? b.back() : 1;
    CHECK(resultant(P(a), P(b)) == oracle::sylvester_resultant(P(a), P(b)));
  }
}

TEST_CASE("discriminant") {
  CHECK(discriminant(P({-1, 0, 1})) == 4);
  CHECK(discriminant(P({5, 3, 1})) == 9 - 20);
  CHECK(discriminant(P({1, 1, 0, 0, 0, 1})) == 3381);
  CHECK(discriminant(P({1, 0, 0, 0, 1, 0, 1})) == -61504);
  CHECK(oracle_discriminant(P({1, 0, 0, 0, 1, 0, 1})) == -61504);
  CHECK(discriminant(P({0, 0, 1, 1})) == 0);
  CHECK_ERROR_CODE(discriminant(P({7})), ErrorCode::ConstantPolynomial);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<long> a(2 + rng() % 6);
    for (auto& x : a) x = coef(rng);
    if (a.back() == 0) a.back() = 3;
    CHECK(discriminant(P(a)) == oracle_discriminant(P(a)));
  }
}

TEST_CASE("squarefree_decomposition") {
  auto d1 = squarefree_decomposition(P({0, 0, 1, 1}));
  REQUIRE(d1.factors.size() == 2);
  CHECK(d1.factors[0] == std::pair{P({1, 1}), 1u});
  CHECK(d1.factors[1] == std::pair{P({0, 1}), 2u});

  auto x = P({0, 1}), x1 = P({1, 1}), x2 = P({2, 1});
  auto d2 = squarefree_decomposition(x.pow(6) * x1.pow(10) * x2.pow(15));
  REQUIRE(d2.factors.size() == 3);
  CHECK(d2.factors[0] == std::pair{x, 6u});
  CHECK(d2.factors[1] == std::pair{x1, 10u});
  CHECK(d2.factors[2] == std::pair{x2, 15u});

  auto d3 = squarefree_decomposition(P({1, 1, 0, 0, 0, 1}));
  REQUIRE(d3.factors.size() == 1);
  CHECK(d3.factors[0].second == 1);
  CHECK(gcd(P({1, 1, 0, 0, 0, 1}), P({1, 0, 0, 0, 5})) == P({1}));
}

TEST_CASE("factor_mod_p") {
  auto f1 = factor_mod_p(P({-1, 0, 1}), Int(5));
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.factors[0].first.lift() == P({1, 1}));
  CHECK(f1.factors[1].first.lift() == P({4, 1}));

  auto f2 = factor_mod_p(P({6, 1, 1, 1}), Int(5));
  REQUIRE(f2.factors.size() == 3);
  for (auto& [g, m] : f2.factors) {
    CHECK(*g.degree() == 1);
    CHECK(m == 1);
  }

  auto f3 = factor_mod_p(P({1, 0, 1}), Int(3));
  REQUIRE(f3.factors.size() == 1);
  CHECK(*f3.factors[0].first.degree() == 2);

  CHECK_ERROR_CODE(factor_mod_p(P({5, 10}), Int(5)), ErrorCode::ZeroModP);
  CHECK_ERROR_CODE(factor_mod_p(P({1, 1}), Int(6)), ErrorCode::NotPrime);

  // Product of the factors reproduces f mod p.
  std::mt19937_64 rng(3);
  for (long p : {2L, 3L, 7L, 13L, 101L}) {
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<long> a(2 + rng() % 8);
      for (auto& x : a) x = static_cast<long>(rng() % 50);
      a.back() = 1 + static_cast<long>(rng() % (p - 1 ? p - 1 : 1));
      auto fac = factor_mod_p(P(a), Int(p));
      UniPoly prod = UniPoly::constant(fac.leading_unit);
      for (auto& [g, m] : fac.factors) {
        CHECK(g.leading() == 1);
        prod = prod * g.lift().pow(m);
      }
      CHECK(prod.reduce(Int(p)) == P(a).reduce(Int(p)));
    }
  }
}

TEST_CASE("roots_mod_p") {
  auto r1 = roots_mod_p(P({1, 1, 0, 0, 0, 1}), Int(5));
  CHECK(std::find(r1.begin(), r1.end(), std::pair<Int, unsigned>(2, 1)) != r1.end());
  auto r2 = roots_mod_p(P({1, 0, 0, 17, 1}), Int(17));
  CHECK(std::find(r2.begin(), r2.end(), std::pair<Int, unsigned>(2, 1)) != r2.end());
  CHECK(roots_mod_p(P({0, 0, 1}), Int(7)) == std::vector<std::pair<Int, unsigned>>{{0, 2}});

  std::mt19937_64 rng(5);
  for (long p : {2L, 3L, 5L, 11L, 29L}) {
    for (int trial = 0; trial < 40; ++trial) {
      // Build polynomials with forced repeated roots half the time.
      UniPoly f = UniPoly::constant(1);
      for (int k = 0, n = 1 + static_cast<int>(rng() % 4); k < n; ++k)
        f = f * P({static_cast<long>(rng() % p), 1}).pow(1 + rng() % 3);
      std::vector<long> extra{static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 9), 1};
      if (trial % 2) f = f * P(extra);
      CHECK(roots_mod_p(f, Int(p)) == oracle::brute_roots(f, p));
    }
  }
}

TEST_CASE("legendre_symbol") {
  for (long p : {3L, 5L, 7L, 101L}) {
    CHECK(legendre_symbol(1, p) == 1);
    CHECK(legendre_symbol(p, p) == 0);
    for (long a = 1; a < p; ++a) {
      bool square = false;
      for (long y = 1; y < p; ++y) square |= (y * y - a) % p == 0;
      CHECK(legendre_symbol(a, p) == (square ? 1 : -1));
    }
  }
  CHECK(legendre_symbol(-891, 5) == 1);
}

TEST_CASE("is_qth_power_residue") {
  for (long a = 1; a < 11; ++a) CHECK(is_qth_power_residue(a, 3, 11));  // 3 does not divide 10
  CHECK_FALSE(is_qth_power_residue(2, 3, 7));
  CHECK(is_qth_power_residue(1, 5, 11));
  // Oracle: enumerate q-th powers.
  for (long p : {7L, 11L, 13L, 31L}) {
    for (long q : {2L, 3L, 5L}) {
      std::set<long> powers;
      for (long y = 1; y < p; ++y) powers.insert(to_u64(powmod(y, q, p)));
      for (long a = 1; a < p; ++a) CHECK(is_qth_power_residue(a, q, p) == powers.count(a) > 0);
    }
  }
  CHECK_ERROR_CODE(is_qth_power_residue(14, 3, 7), ErrorCode::ZeroModP);
}

TEST_CASE("cyclotomic_poly and multiplicative_order") {
  CHECK(cyclotomic_poly(2) == P({1, 1}));
  CHECK(cyclotomic_poly(3) == P({1, 1, 1}));
  CHECK(cyclotomic_poly(5) == P({1, 1, 1, 1, 1}));
  CHECK(multiplicative_order(2, 5) == 4);
  CHECK(multiplicative_order(19, 5) == 2);
  CHECK(multiplicative_order(2, 7) == 3);
}

TEST_CASE("valuation") {
  CHECK(valuation(Int(0), Int(5)).is_infinite());
  CHECK(valuation(Int(250), Int(5)) == Valuation(3));
  CHECK(valuation(Int(-7), Int(7)) == Valuation(1));
  CHECK(valuation(Int(3381), Int(7)) == Valuation(2));
  auto [k, u] = split_power(Int(-96), Int(2));
  CHECK(k == 5);
  CHECK(u == -3);
}
