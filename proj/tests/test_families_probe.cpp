#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "qdense/density.hpp"
#include "qdense/families.hpp"
#include "qdense/formlab.hpp"
#include "qdense/parser.hpp"
#include "qdense/resultant.hpp"
#include "qdense/residue.hpp"

using namespace qdense;

namespace {

std::vector<long> primes_of(const std::vector<FamilyPrimeEntry>& rows) {
  std::vector<long> out;
  for (auto& r : rows) out.push_back(static_cast<long>(to_u64(r.p)));
  return out;
}

// Coefficients of (sum a_i t^i)(sum b_i t^i) reduced mod Phi_q, in the basis 1..t^(q-2).
std::vector<Int> cyclotomic_product(const std::vector<Int>& a, const std::vector<Int>& b, long q) {
  std::vector<Int> prod(2 * q, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) prod[(i + j) % q] += a[i] * b[j];  // t^q = 1
  // t^(q-1) = -(1 + ... + t^(q-2))
  std::vector<Int> out(q - 1);
  for (long i = 0; i < q - 1; ++i) out[i] = prod[i] - prod[q - 1];
  return out;
}

}  // namespace

TEST_CASE("cyclotomic_norm_form") {
  CHECK(cyclotomic_norm_form(2) == parse_form("x0"));
  CHECK(cyclotomic_norm_form(3) == parse_form("x0^2 - x0*x1 + x1^2"));

  auto f5 = cyclotomic_norm_form(5);
  CHECK(f5.n_vars() == 4);
  CHECK(f5.degree() == 4);
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) {
    std::vector<Int> a(4), b(4);
    for (auto& x : a) x = static_cast<long>(rng() % 11) - 5;
    for (auto& x : b) x = static_cast<long>(rng() % 11) - 5;
    CHECK(f5.evaluate(a) * f5.evaluate(b) == f5.evaluate(cyclotomic_product(a, b, 5)));
  }
  // Agreement with the resultant definition at random points.
  for (long q : {3L, 5L, 7L}) {
    auto f = cyclotomic_norm_form(q);
    for (int i = 0; i < 10; ++i) {
      std::vector<Int> a(q - 1);
      for (auto& x : a) x = static_cast<long>(rng() % 7) - 3;
      UniPoly g(a);
      if (g.is_zero()) continue;
      CHECK(f.evaluate(a) == resultant(cyclotomic_poly(q), g));
    }
    CHECK(order_of_form(f) == q - 1);
  }
  CHECK_ERROR_CODE(cyclotomic_norm_form(13), ErrorCode::BudgetExceeded);
}

TEST_CASE("cyclotomic_not_dense_primes") {
  CHECK(primes_of(cyclotomic_not_dense_primes(3, 20)) == std::vector<long>{2, 5, 11, 17});
  for (auto& r : cyclotomic_not_dense_primes(3, 20)) {
    REQUIRE(r.certificate);
    CHECK(verify_certificate(cyclotomic_norm_form(3), r.p, Certificate(*r.certificate)));
  }

  // q = 5: the congruence filter gives {2, 3, 7, 13, 17, 19}; 19 has order 2 mod 5 and is isotropic.
  auto rows = cyclotomic_not_dense_primes(5, 20);
  CHECK(primes_of(rows) == std::vector<long>{2, 3, 7, 13, 17, 19});
  for (auto& r : rows) {
    const bool primitive = multiplicative_order(r.p, 5) == 4;
    CHECK(r.certificate.has_value() == primitive);
    if (r.p <= 13) CHECK(is_anisotropic_mod_p(cyclotomic_norm_form(5), r.p).anisotropic == primitive);
  }

  // Anisotropy by enumeration matches the order criterion for q in {3, 5}, p <= 50.
  for (long q : {3L, 5L}) {
    auto f = cyclotomic_norm_form(q);
    for (auto p : primes_up_to(50)) {
      if (static_cast<long>(p) == q || (p - 1) % q == 0) continue;
      if (q == 5 && p > 23) continue;
      CHECK(is_anisotropic_mod_p(f, p).anisotropic == (multiplicative_order(p, q) == q - 1));
    }
  }
}

TEST_CASE("composite family") {
  CHECK(composite_counterexample(3, 1, 1) == parse_form("x0^3 + 2*x1^3"));
  auto f = composite_counterexample(3, 2, 2);
  CHECK(f == parse_form("x0^6 + 2*x1^6 + 6*x1^4*x2^2 + 6*x1^2*x2^4 + 2*x2^6"));
  CHECK(f.terms().size() == 5);
  CHECK(order_of_form(f) == 3);
  CHECK(order_of_form(composite_counterexample(3, 1, 1)) == 2);

  auto primes = primes_of(composite_not_dense_primes(3, 2, 2, 50));
  auto has = [&](long p) { return std::find(primes.begin(), primes.end(), p) != primes.end(); };
  CHECK(has(7));
  CHECK_FALSE(has(31));
  CHECK(has(13));
  CHECK(powmod(2, 4, 13) == 3);
  CHECK(powmod(4, 3, 31) == 2);

  // q divides every valuation the probe sees at a qualifying prime.
  ProbeConfig pc;
  pc.budget = 20'000;
  pc.box_cap = 20'000;
  pc.window = 3;
  auto rep = quotient_probe(f, 7, pc);
  for (long v : rep.quotient_valuations()) CHECK(v % 3 == 0);
}

TEST_CASE("finitely dense family") {
  FinitelyDenseParams params{2, 3, 5, 7};
  auto f = finitely_dense_f(params);
  CHECK(f.degree() == 113);
  std::map<Int, unsigned> roots(f.roots.begin(), f.roots.end());
  CHECK(roots == std::map<Int, unsigned>{{0, 15}, {-2, 21}, {-4, 21}, {-8, 21}, {-16, 35}});
  // Round trip: the expansion vanishes at each root to the stated order.
  auto e = f.expand();
  CHECK(*e.degree() == 113);
  auto sq = squarefree_decomposition(e);
  std::multiset<unsigned> mults;
  for (auto& [g, m] : sq.factors) mults.insert(m * *g.degree());
  CHECK(mults == std::multiset<unsigned>{15, 35, 63});

  CHECK_ERROR_CODE((FinitelyDenseParams{3, 2, 5, 7}.validate()), ErrorCode::InvalidParameters);

  auto g2 = finitely_dense_g(2, params);
  CHECK(g2.degree() == 315);
  CHECK(g2.factors().size() == 15);
  auto g3 = finitely_dense_g(3, params);
  CHECK(g3.degree() == 315 + 105);
  CHECK(g3.evaluate({3, 1, 2}) == g2.evaluate({3, 1}) * pow(Int(2), 105));
}

TEST_CASE("finitely_dense_checks") {
  auto spec = FamilySpec::parse("finitely_dense_f:p=2,q1=3,q2=5,q3=7");
  FinitelyDenseCheckConfig cfg;
  cfg.probe.budget = 50'000;
  cfg.q_bound = 20;
  cfg.extra_q = {3};
  auto rep = finitely_dense_checks(spec, cfg);
  CHECK(rep.probe_reached_window);
  for (long v = -3; v <= 3; ++v) CHECK(rep.probe.has_valuation(v));
  bool saw3 = false, saw17 = false;
  for (auto& c : rep.q_checks) {
    if (c.q == 3) {
      saw3 = true;
      CHECK(c.status == "outside theorem range");
    }
    if (c.q == 17) {
      saw17 = true;
      CHECK(c.status == "certified");
      REQUIRE(c.certificate);
      CHECK(verify_certificate(finitely_dense_f({2, 3, 5, 7}).expand(), 17, Certificate(*c.certificate)));
    }
  }
  CHECK(saw3);
  CHECK(saw17);
  CHECK_ERROR_CODE(FamilySpec::parse("finitely_dense_f:p=3,q1=2,q2=5,q3=7").validate(),
                   ErrorCode::InvalidParameters);
}

TEST_CASE("quotient_probe") {
  ProbeConfig pc;
  pc.unit_depth = 1;
  pc.window = 1;
  pc.budget = 20'000;
  auto r1 = quotient_probe(parse_form("x0*x1"), 5, pc);
  CHECK(r1.coverage == doctest::Approx(1.0));
  for (auto& [key, w] : r1.reachable) {
    // Each witness really realises its class.
    Int fx = parse_form("x0*x1").evaluate(w.x), fy = parse_form("x0*x1").evaluate(w.y);
    Rational qv(fx, fy);
    CHECK(valuation(qv, Int(5)) == Valuation(key.first));
  }

  pc.window = 3;
  auto r2 = quotient_probe(parse_form("x0^2 - x0*x1 + x1^2"), 5, pc);
  for (long v : r2.quotient_valuations()) CHECK(v % 2 == 0);
  CHECK(r2.has_valuation(2));

  ProbeConfig pq;
  pq.unit_depth = 2;
  pq.window = 2;
  auto r3 = quotient_probe(parse_form("x^5+x^3*y*z+y*z^4+x^4*z+x*y^4+y^5"), 5, pq);
  CHECK(r3.coverage >= 0.95);

  // Determinism and thread independence.
  ProbeConfig pd;
  pd.budget = 5'000;
  pd.box_cap = 1'000;
  auto a = quotient_probe(parse_form("x^3 + 2*y^3"), 7, pd);
  pd.threads = 4;
  auto b = quotient_probe(parse_form("x^3 + 2*y^3"), 7, pd);
  CHECK(a.reachable.size() == b.reachable.size());
  CHECK(a.coverage == b.coverage);
  CHECK(a.value_valuations == b.value_valuations);
  for (auto& [k, w] : a.reachable) {
    REQUIRE(b.reachable.count(k));
    CHECK(b.reachable.at(k).x == w.x);
  }
}

TEST_CASE("valuation_census") {
  auto c1 = valuation_census(cyclotomic_norm_form(3), 5, 3);
  CHECK(c1.exhaustive);
  for (auto& [v, n] : c1.counts) CHECK(v % 2 == 0);

  auto c2 = valuation_census(composite_counterexample(3, 2, 2), 7, 2);
  for (auto& [v, n] : c2.counts) CHECK(v % 3 == 0);

  auto c3 = valuation_census(parse_form("x0*x1"), 3, 3);
  for (long v = 0; v <= 4; ++v) CHECK(c3.counts.count(v));
}

TEST_CASE("spectrum agrees with brute-force valuation enumeration") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    IntegerRootedPoly f{1, {}};
    std::set<long> used;
    for (int k = 0, n = 1 + static_cast<int>(rng() % 3); k < n; ++k) {
      long r = static_cast<long>(rng() % 7) - 3;
      if (used.insert(r).second) f.roots.emplace_back(r, 1 + static_cast<unsigned>(rng() % 6));
    }
    for (long q : {2L, 3L, 5L, 7L}) {
      unsigned K = 1;
      while (pow(Int(q), K + 1) <= 100'000) ++K;
      const Int qk = pow(Int(q), K);
      auto s = valuation_spectrum(f, q);
      const UniPoly e = f.expand();
      std::set<long> attained;
      for (Int x = 0; x < qk; ++x) {
        Int v = e(x);
        if (v != 0) attained.insert(valuation(v, Int(q)).value());
      }
      for (long v : attained) CHECK(s.contains(v));
      for (long v = 0; v < static_cast<long>(K); ++v)
        if (s.contains(v)) CHECK(attained.count(v));
      bool one = false;
      for (long v : attained) one |= attained.count(v + 1) > 0;
      CHECK_MESSAGE(one == unit_difference(s).has_value(), "q=" << q << " trial " << trial);
      CHECK(obstruction_from_spectrum(s, f).has_value() == !one);
    }
  }
}

TEST_CASE("census agrees with linear-split spectra") {
  std::vector<LinearSplitForm> battery{
      LinearSplitForm(2, 1, {{{1, 0}, 2}, {{0, 1}, 3}}),
      LinearSplitForm(2, 1, {{{1, 0}, 1}, {{1, 1}, 1}, {{1, -1}, 1}}),
      LinearSplitForm(2, 3, {{{1, 2}, 2}, {{0, 1}, 1}}),
  };
  for (auto& g : battery)
    for (long q : {2L, 3L, 5L}) {
      if (mod(g.content(), Int(q)) == 0) {
        CHECK_ERROR_CODE(valuation_spectrum(g, q), ErrorCode::ContentDivisible);
        continue;
      }
      const unsigned K = q == 2 ? 5 : 3;
      auto s = valuation_spectrum(g, q);
      auto census = valuation_census(g.expand(), q, K);
      REQUIRE(census.exhaustive);
      const long cut = static_cast<long>(K);
      for (auto& [v, n] : census.counts)
        if (v < cut) CHECK_MESSAGE(s.contains(v), g.to_string() << " q=" << q << " v=" << v);
    }
}
