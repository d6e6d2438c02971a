#include "qdense/paper_report.hpp"

#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "qdense/error.hpp"
#include "qdense/families.hpp"
#include "qdense/fp_poly.hpp"
#include "qdense/parser.hpp"
#include "qdense/residue.hpp"
#include "qdense/resultant.hpp"

namespace qdense {

namespace {

class Checks {
 public:
  explicit Checks(CriterionResult& r) : r_(r) {}
  bool expect(bool ok, const std::string& what) {
    r_.details.push_back((ok ? "ok: " : "FAILED: ") + what);
    all_ = all_ && ok;
    return ok;
  }
  void note(const std::string& what) { r_.details.push_back(what); }
  bool all() const { return all_; }

 private:
  CriterionResult& r_;
  bool all_ = true;
};

UniPoly poly(std::initializer_list<long> low_to_high) {
  std::vector<Int> c;
  for (long x : low_to_high) c.emplace_back(x);
  return UniPoly(std::move(c));
}

std::string join(const std::vector<Int>& xs) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  os << '}';
  return os.str();
}

template <class Pred>
std::vector<Int> primes_where(const std::vector<ScanEntry>& table, Pred pred) {
  std::vector<Int> out;
  for (const auto& e : table)
    if (pred(e)) out.push_back(e.p);
  return out;
}

bool is_dense(const DensityVerdict& v) { return v.status == DensityStatus::Dense; }
bool is_not_dense(const DensityVerdict& v) { return v.status == DensityStatus::NotDense; }

std::string kind_of(const DensityVerdict& v) {
  return v.certificate ? certificate_kind(*v.certificate) : "none";
}

/// Checks a scan table: listed primes Dense, every Dense certificate verifies.
void check_scan(Checks& c, const IntegralForm& f, const std::vector<ScanEntry>& table,
                const std::vector<long>& expected) {
  auto dense = primes_where(table, [](const ScanEntry& e) { return is_dense(e.verdict); });
  std::set<Int> dense_set(dense.begin(), dense.end());
  for (long p : expected) c.expect(dense_set.count(Int(p)) > 0, "Dense at p = " + std::to_string(p));
  std::size_t bad = 0;
  for (const auto& e : table)
    if (e.verdict.certificate && !verify_certificate(f, e.p, *e.verdict.certificate)) ++bad;
  c.expect(bad == 0, "every certificate in the table re-verifies (" + std::to_string(dense.size()) + " Dense, " +
                         std::to_string(bad) + " rejected)");
}

IntegralForm binary_cubic(const Int& a, const Int& b, const Int& c, const Int& d) {
  IntegralForm::Terms t;
  t[{3, 0}] = a;
  t[{2, 1}] = b;
  t[{1, 2}] = c;
  t[{0, 3}] = d;
  return IntegralForm(2, 3, std::move(t));
}

}  // namespace

PaperReport::PaperReport(ReportOptions options)
    : threads_(options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency())) {}

CriterionResult PaperReport::run(int id) {
  using Fn = CriterionResult (PaperReport::*)();
  static constexpr Fn table[] = {&PaperReport::discriminants,
                                 &PaperReport::scan_quintic,
                                 &PaperReport::scan_sextic,
                                 &PaperReport::cubic_battery,
                                 &PaperReport::quartic_battery,
                                 &PaperReport::small_prime_examples,
                                 &PaperReport::cyclotomic_family,
                                 &PaperReport::composite_family,
                                 &PaperReport::finitely_dense_family,
                                 &PaperReport::coprime_multiplicity_pattern,
                                 &PaperReport::property_suites};
  if (id < 1 || id > kCriteria) throw Error(ErrorCode::InvalidParameters, "no criterion " + std::to_string(id));
  auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = (this->*table[id - 1])();
  } catch (const std::exception& e) {
    r.pass = false;
    r.details.push_back(std::string("FAILED: exception: ") + e.what());
  }
  if (r.title.empty()) r.title = "(aborted)";
  r.id = id;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> PaperReport::run_all() {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run(id));
  return out;
}

bool report_succeeded(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass && !r.expected_failure) return false;
  return true;
}

std::string format_result_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.id << ": " << (r.pass ? "PASS" : r.expected_failure ? "FAIL (expected)" : "FAIL") << "  "
     << r.title;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << "  [" << r.seconds << " s]";
  return os.str();
}

CriterionResult PaperReport::discriminants() {
  CriterionResult r;
  r.title = "discriminants of x^5+x+1 and z^6+z^4+1";
  Checks c(r);
  Int d1 = discriminant(poly({1, 1, 0, 0, 0, 1}));
  Int d2 = discriminant(poly({1, 0, 0, 0, 1, 0, 1}));
  c.expect(d1 == 3381, "disc(x^5+x+1) = " + d1.get_str() + ", expected 3381");
  c.expect(d2 == -pow(Int(2), 6) * 31 * 31, "disc(z^6+z^4+1) = " + d2.get_str() + ", expected -2^6*31^2 = -61504");
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::scan_quintic() {
  CriterionResult r;
  r.title = "prime scan of the quintic example up to 200";
  Checks c(r);
  IntegralForm f = parse_form("x^5 + x^3*y*z + y*z^4 + x^4*z + x*y^4 + y^5");
  DecideConfig cfg;
  cfg.threads = threads();
  auto table = scan_primes(f, 0, {Int(1), Int(0)}, 200, cfg);
  check_scan(c, f, table, {5, 13, 19, 31, 43, 101, 181});
  c.note("Dense primes: " + join(primes_where(table, [](const ScanEntry& e) { return is_dense(e.verdict); })));
  c.note("NotDense primes: " +
         join(primes_where(table, [](const ScanEntry& e) { return is_not_dense(e.verdict); })));
  for (const auto& e : table) record(e.verdict);
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::scan_sextic() {
  CriterionResult r;
  r.title = "prime scan of the sextic example up to 10^5 in under 60 s";
  Checks c(r);
  IntegralForm f = parse_form("x^6 + x^5*y + x^4*y^2 + x^2*y^4 + y^6 + x^2*z^4 + z^6");
  DecideConfig cfg;
  cfg.threads = threads();
  auto start = std::chrono::steady_clock::now();
  auto table = scan_primes(f, 2, {Int(1), Int(0)}, 100'000, cfg);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check_scan(c, f, table, {3, 607, 1451, 5417, 88747});
  c.expect(secs < 60, "scan took " + std::to_string(secs) + " s");
  std::size_t dense = 0, not_dense = 0;
  for (const auto& e : table) {
    dense += is_dense(e.verdict);
    not_dense += is_not_dense(e.verdict);
  }
  c.note(std::to_string(table.size()) + " primes: " + std::to_string(dense) + " Dense, " + std::to_string(not_dense) +
         " NotDense, " + std::to_string(table.size() - dense - not_dense) + " Unknown");
  for (const auto& e : table)
    if (e.p <= 13) record(e.verdict);
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::cubic_battery() {
  CriterionResult r;
  r.title = "binary cubic criterion battery";
  Checks c(r);
  IntegralForm f = binary_cubic(1, 1, 1, 6);
  Int D = cubic_criterion_discriminant(1, 1, 1, 6);
  c.expect(D == -891, "D(x^3+x^2y+xy^2+6y^3) = " + D.get_str());
  c.expect(legendre_symbol(mod(D, 5), 5) == 1, "(-891/5) = +1");
  c.expect(cubic_verdict(f, 5).status == DensityStatus::Unknown, "criterion silent at p = 5");
  auto roots = roots_mod_p(poly({6, 1, 1, 1}), 5);
  bool three_simple = roots.size() == 3;
  for (const auto& [x, m] : roots) three_simple = three_simple && m == 1;
  c.expect(three_simple, "x^3+x^2+x+6 has three simple roots mod 5");
  auto v = decide(f, 5);
  record(v);
  c.expect(is_dense(v) && verify_certificate(f, 5, *v.certificate), "decide at p = 5: " +
                                                                         std::string(to_string(v.status)) + " via " +
                                                                         kind_of(v));

  std::mt19937_64 rng(20240501);
  std::uniform_int_distribution<long> coef(-30, 30);
  std::size_t dense = 0, probed = 0, lemma = 0, total = 0;
  for (long p : {5, 7, 11, 13}) {
    for (int found = 0; found < 25;) {
      Int a = coef(rng), b = coef(rng), cc = coef(rng), d = coef(rng);
      if (a == 0 || d == 0) continue;
      IntegralForm g = binary_cubic(a, b, cc, d).content_and_primitive().second;
      auto co = binary_coefficients(g);
      Int Dg = cubic_criterion_discriminant(co[0], co[1], co[2], co[3]);
      if (legendre_symbol(mod(Dg, p), Int(p)) != -1) continue;
      ++found;
      ++total;
      auto cv = cubic_verdict(g, p);
      dense += is_dense(cv);
      record(cv);
      ProbeConfig pc;
      pc.window = 1;
      pc.budget = 5000;
      pc.threads = threads();
      probed += quotient_probe(g, Int(p), pc).has_valuation(1);
      // x^3 + b x^2 + ac x + a^2 d has exactly one root mod p, and it is simple
      auto rts = roots_mod_p(UniPoly({co[0] * co[0] * co[3], co[0] * co[2], co[1], Int(1)}), Int(p));
      lemma += rts.size() == 1 && rts[0].second == 1;
    }
  }
  c.expect(dense == total, std::to_string(dense) + "/" + std::to_string(total) + " random cubics with (D/p) = -1 Dense");
  c.expect(probed == total, std::to_string(probed) + "/" + std::to_string(total) + " probes reach valuation 1");
  c.expect(lemma == total, std::to_string(lemma) + "/" + std::to_string(total) +
                               " monic cubics have exactly one root mod p, simple");
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::quartic_battery() {
  CriterionResult r;
  r.title = "binary quartic x^4+17x^3y+y^4 at p = 17";
  Checks c(r);
  IntegralForm f = parse_form("x^4 + 17*x^3*y + y^4");
  auto v = decide(f, 17);
  record(v);
  c.expect(is_dense(v), std::string("decide: ") + to_string(v.status) + " via " + kind_of(v));
  auto qv = quartic_verdict(f, 17);
  c.expect(qv.status == DensityStatus::Unknown, "quartic criterion silent");
  Int s = quartic_recurrence_value(1, 0, 0, 1, 17);
  Int target = mod(Int(-4), 17);
  c.expect(mod(Int(12), 17) != 0, "a^2c^2 + 12a^3e = 12 is non-zero mod 17");
  c.expect(s != target, "s_18 = " + s.get_str() + " mod 17, a^2c^2 - 4a^3e = " + target.get_str() + " mod 17");
  for (const auto& n : qv.notes) c.note("criterion: " + n);
  UniPoly g = f.specialize(0, {Int(1)});
  PadicContext ctx(17, 20);
  Certificate cert = SimpleZeroSpecialization{0, {Int(1)}, hensel_lift_simple(g, 2, ctx), 20};
  c.expect(verify_certificate(f, 17, cert), "root 2 of x^4+17x^3+1 lifts to a simple 17-adic root");
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::small_prime_examples() {
  CriterionResult r;
  r.title = "cubic patterns mod 2 and mod 3";
  Checks c(r);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-40, 40);
  // residue pattern (a, b, c, d) mod m; -1 marks "even" for the mod-2 case
  auto sample = [&](long m, std::array<long, 4> pattern) {
    for (;;) {
      std::array<Int, 4> x;
      for (int i = 0; i < 4; ++i) x[i] = Int(coef(rng) * m + pattern[i]);
      if (x[0] == 0) continue;
      return binary_cubic(x[0], x[1], x[2], x[3]);
    }
  };
  auto run_pattern = [&](const std::string& name, long p, std::array<long, 4> pattern, DensityStatus want,
                         const char* kind, std::vector<IntegralForm> extra) {
    std::size_t ok = 0, n = 0;
    for (int i = 0; i < 20; ++i) extra.push_back(sample(p, pattern));
    for (const auto& f : extra) {
      auto v = decide(f, p);
      record(v);
      ++n;
      ok += v.status == want && kind_of(v) == kind && verify_certificate(f, p, *v.certificate);
    }
    c.expect(ok == n, name + ": " + std::to_string(ok) + "/" + std::to_string(n) + " " + to_string(want) + " via " + kind);
  };
  run_pattern("a, b, d odd, c even at p = 2", 2, {1, 1, 0, 1}, DensityStatus::NotDense, "AnisotropicModP",
              {binary_cubic(1, 1, 0, 1)});
  run_pattern("a = 2, b = c = d = 1 mod 3 at p = 3", 3, {2, 1, 1, 1}, DensityStatus::NotDense, "AnisotropicModP",
              {binary_cubic(2, 1, 1, 1)});
  std::size_t hensel = 0, dense = 0, n = 0;
  for (int i = 0; i < 20; ++i) {
    IntegralForm f = i == 0 ? binary_cubic(1, 1, 1, 1) : sample(3, {1, 1, 1, 1});
    auto v = decide(f, 3);
    record(v);
    ++n;
    dense += is_dense(v) && verify_certificate(f, 3, *v.certificate);
    UniPoly g = f.specialize(0, {Int(1)});
    bool simple = mod(g(Int(2)), 3) == 0 && mod(g.derivative()(Int(2)), 3) != 0;
    PadicContext ctx(3, 20);
    hensel += simple && verify_certificate(f, 3, SimpleZeroSpecialization{0, {Int(1)}, hensel_lift_simple(g, 2, ctx), 20});
  }
  c.expect(dense == n, "all = 1 mod 3 at p = 3: " + std::to_string(dense) + "/" + std::to_string(n) + " Dense");
  c.expect(hensel == n, "all = 1 mod 3: residue 2 is a simple root of F(x, 1) and lifts (" + std::to_string(hensel) +
                            "/" + std::to_string(n) + ")");
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::cyclotomic_family() {
  CriterionResult r;
  r.title = "cyclotomic norm form, q = 3";
  Checks c(r);
  IntegralForm f = cyclotomic_norm_form(3);
  c.expect(f == parse_form("x0^2 - x0*x1 + x1^2"), "generator gives " + f.to_string());
  c.expect(order_of_form(f) == 2, "order over Q is 2");
  auto entries = cyclotomic_not_dense_primes(3, 20, kDefaultEnumerationBudget, threads());
  std::vector<Int> certified;
  for (const auto& e : entries) {
    if (!e.certificate) continue;
    certified.push_back(e.p);
    c.expect(verify_certificate(f, e.p, *e.certificate), "certificate at p = " + e.p.get_str() + " re-verifies");
    DensityVerdict v;
    v.status = DensityStatus::NotDense;
    v.p = e.p;
    v.form = f;
    v.certificate = *e.certificate;
    record(v);
  }
  c.expect(certified == std::vector<Int>{2, 5, 11, 17}, "NotDense certified at " + join(certified));
  auto census = valuation_census(f, 5, 3);
  bool even = census.exhaustive && !census.counts.empty();
  std::vector<Int> seen;
  for (const auto& [v, n] : census.counts) {
    even = even && v % 2 == 0;
    seen.emplace_back(v);
  }
  c.expect(even, "exhaustive census mod 5^3 has valuations " + join(seen));
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::composite_family() {
  CriterionResult r;
  r.title = "composite-degree family (q, k, m) = (3, 2, 2)";
  Checks c(r);
  IntegralForm f = composite_counterexample(3, 2, 2);
  c.expect(f == parse_form("x0^6 + 2*x1^6 + 6*x1^4*x2^2 + 6*x1^2*x2^4 + 2*x2^6"), "generator gives " + f.to_string());
  c.expect(order_of_form(f) == 3, "order over Q is 3");
  auto entries = composite_not_dense_primes(3, 2, 2, 50, threads());
  std::set<Int> listed;
  for (const auto& e : entries) {
    listed.insert(e.p);
    bool ok = e.certificate && verify_certificate(f, e.p, *e.certificate);
    if (e.p == 7 || e.p == 13) c.expect(ok, "NotDense certified at p = " + e.p.get_str());
    if (ok) {
      DensityVerdict v;
      v.status = DensityStatus::NotDense;
      v.p = e.p;
      v.form = f;
      v.certificate = *e.certificate;
      record(v);
    }
  }
  c.expect(is_qth_power_residue(2, 3, 31) && mod(pow(Int(4), 3), 31) == 2, "4^3 = 2 mod 31");
  c.expect(!listed.count(31), "p = 31 excluded");
  std::vector<Int> l(listed.begin(), listed.end());
  c.note("primes up to 50 certified: " + join(l));
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::finitely_dense_family() {
  CriterionResult r;
  r.title = "finitely-dense family (p, q1, q2, q3) = (2, 3, 5, 7)";
  Checks c(r);
  FinitelyDenseParams params{2, 3, 5, 7};
  LinearSplitForm g2 = finitely_dense_g(2, params);
  c.expect(g2.degree() == 315, "deg g_2 = " + std::to_string(g2.degree()));
  c.expect(g2.factors().size() == 15, "g_2 has " + std::to_string(g2.factors().size()) + " distinct linear factors");
  IntegerRootedPoly f = finitely_dense_f(params);
  c.expect(f.degree() == 113, "deg f = " + std::to_string(f.degree()));

  FinitelyDenseCheckConfig cfg;
  cfg.probe.threads = threads();
  cfg.q_bound = 0;
  cfg.extra_q = {3, 17, 19, 101};
  auto report = finitely_dense_checks(FamilySpec::parse("finitely_dense_f:p=2,q1=3,q2=5,q3=7"), cfg);
  std::vector<Int> reached;
  for (long v : report.probe.quotient_valuations())
    if (v >= -3 && v <= 3) reached.emplace_back(v);
  c.expect(report.probe_reached_window, "probe reaches quotient valuations " + join(reached) + " in [-3, 3]");
  c.expect(report.unit_equation_solvable, "unit equation solvable mod 2");
  const std::set<long> allowed{15, 21, 35};
  auto check_strides = [&](const ValuationSpectrum& s) {
    std::vector<Int> strides;
    bool ok = !s.tails.empty();
    for (const auto& t : s.tails) {
      ok = ok && allowed.count(t.stride);
      strides.emplace_back(t.stride);
    }
    return std::pair{ok, join(strides)};
  };
  UniPoly fx = f.expand();
  for (const auto& q : report.q_checks) {
    if (q.q == 3) {
      c.expect(q.status == "outside theorem range", "q = 3 reported as " + q.status);
      continue;
    }
    bool ok = q.status == "certified" && q.certificate && verify_certificate(fx, q.q, Certificate(*q.certificate));
    auto [strides_ok, strides] = q.certificate ? check_strides(q.certificate->spectrum) : std::pair{false, ""};
    c.expect(ok && strides_ok, "f at q = " + q.q.get_str() + ": " + q.status + ", strides " + strides);
  }
  auto s101 = valuation_spectrum(g2, 101);
  auto cert = obstruction_from_spectrum(s101, g2);
  auto [strides_ok, strides] = check_strides(s101);
  c.expect(cert && strides_ok && verify_certificate(g2.expand(), 101, Certificate(*cert)),
           "g_2 at q = 101: obstruction with strides " + strides);
  r.pass = c.all();
  return r;
}

CriterionResult PaperReport::coprime_multiplicity_pattern() {
  CriterionResult r;
  r.title = "x^6 (x+1)^10 (x+2)^15 obstructed at every prime q <= 50";
  Checks c(r);
  IntegerRootedPoly f{1, {{Int(0), 6}, {Int(-1), 10}, {Int(-2), 15}}};
  UniPoly fx = f.expand();
  std::vector<Int> certified, missing;
  std::map<long, ValuationSpectrum> spectra;
  for (auto q : primes_up_to(50)) {
    auto s = valuation_spectrum(f, Int(q));
    auto cert = obstruction_from_spectrum(s, f);
    if (cert && verify_certificate(fx, Int(q), Certificate(*cert))) certified.emplace_back(q);
    else missing.emplace_back(q);
    spectra.emplace(static_cast<long>(q), std::move(s));
  }
  c.expect(missing.empty(), "certified at " + std::to_string(certified.size()) + " primes; missing " + join(missing));

  // Brute force over x in [0, q^B): the attained valuations V satisfy
  // truncated spectrum <= V <= spectrum, and 1 lies outside V - V.
  auto brute = [&](long q, long bound) {
    std::set<long> attained;
    Int qq(q);
    for (long x = 0; x < bound; ++x) {
      Int v = fx(Int(x));
      if (v != 0) attained.insert(static_cast<long>(valuation(v, qq).value()));
    }
    return attained;
  };
  auto unit_gap = [](const std::set<long>& vals) {
    for (long v : vals)
      if (vals.count(v + 1)) return std::optional<std::pair<long, long>>{{v + 1, v}};
    return std::optional<std::pair<long, long>>{};
  };
  for (long q : {5, 7}) {
    long depth = 0, bound = 1;
    while (bound * q <= 100'000) {
      bound *= q;
      ++depth;
    }
    const auto& s = spectra.at(q);
    auto attained = brute(q, bound);
    bool inside = true;
    for (long v : attained) inside = inside && s.contains(v);
    bool covered = true;
    for (long v : s.finite_values) covered = covered && attained.count(v);
    for (const auto& t : s.tails)
      for (long k = 1; k <= depth - static_cast<long>(s.exhaustive_depth); ++k)
        covered = covered && attained.count(t.offset + t.stride * k);
    c.expect(inside && covered && !unit_gap(attained),
             "q = " + std::to_string(q) + ": brute force over [0, " + std::to_string(bound) +
                 ") matches the spectrum and misses difference 1");
  }
  // p = 2 sits outside the pattern: nu_2(f(64)) - nu_2(f(31)) = 51 - 50.
  if (!missing.empty()) {
    bool only_two = missing == std::vector<Int>{2};
    long v64 = static_cast<long>(valuation(fx(Int(64)), Int(2)).value());
    long v31 = static_cast<long>(valuation(fx(Int(31)), Int(2)).value());
    bool witnessed = v64 - v31 == 1 && unit_difference(spectra.at(2)).has_value();
    c.note("q = 2: nu_2(f(64)) = " + std::to_string(v64) + ", nu_2(f(31)) = " + std::to_string(v31) +
           "; the quotient f(64)/f(31) has valuation 1, so no valuation obstruction exists at 2");
    // every other sub-check must hold for the failure to count as expected
    r.expected_failure = only_two && witnessed;
    for (std::size_t i = 1; i < r.details.size(); ++i)
      if (r.details[i].rfind("FAILED", 0) == 0) r.expected_failure = false;
  }
  r.pass = c.all();
  return r;
}

namespace {

/// Whether some point of P^(n-1)(F_p) is a common zero of F and all its partials.
bool has_singular_point(const IntegralForm& f, const Int& p) {
  const std::size_t n = f.n_vars();
  std::vector<IntegralForm> partials;
  for (std::size_t i = 0; i < n; ++i) partials.push_back(f.partial_derivative(i));
  const long pl = p.get_si();
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::vector<Int> x(n, 0);
    x[lead] = 1;
    for (;;) {
      bool singular = f.evaluate(x, p) == 0;
      for (std::size_t i = 0; singular && i < n; ++i) singular = partials[i].evaluate(x, p) == 0;
      if (singular) return true;
      std::size_t i = n;
      while (i-- > lead + 1) {
        if (x[i] + 1 < pl) {
          x[i] += 1;
          break;
        }
        x[i] = 0;
      }
      if (i == lead) break;
    }
  }
  return false;
}

IntegralForm random_form(std::mt19937_64& rng, std::size_t n, unsigned degree, long range) {
  std::uniform_int_distribution<long> coef(-range, range);
  IntegralForm::Terms terms;
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == n) {
      e[i] = left;
      terms[e] = coef(rng);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  return IntegralForm(n, degree, std::move(terms));
}

}  // namespace

CriterionResult PaperReport::property_suites() {
  CriterionResult r;
  r.title = "property suites and probe soundness audit";
  Checks c(r);
  std::mt19937_64 rng(11);

  // Hensel residuals
  {
    const long primes[] = {2, 3, 5, 7, 11, 13, 101, 10007};
    std::uniform_int_distribution<long> coef(-1000, 1000);
    std::uniform_int_distribution<int> deg(2, 8), prec(1, 40), pick(0, 7);
    std::size_t ok = 0, n = 0;
    while (n < 500) {
      Int p(primes[pick(rng)]);
      std::vector<Int> co(deg(rng) + 1);
      for (auto& x : co) x = coef(rng);
      if (co.back() == 0) continue;
      UniPoly f(co);
      if (f.reduce(p).is_zero()) continue;
      std::optional<Int> r0;
      for (const auto& [x, m] : roots_mod_p(f, p))
        if (m == 1) r0 = x;
      if (!r0) continue;
      ++n;
      PadicContext ctx(p, static_cast<unsigned>(prec(rng)));
      Int root = hensel_lift_simple(f, *r0, ctx);
      ok += mod(f(root), ctx.modulus()) == 0 && mod(root - *r0, p) == 0;
    }
    c.expect(ok == n, "Hensel residual vanishes on " + std::to_string(ok) + "/" + std::to_string(n) + " instances");
  }

  // o(F) = o(F^r) on forms without singular F_7-points
  {
    std::size_t ok = 0, n = 0;
    while (n < 50) {
      std::size_t vars = 2 + n % 3;
      IntegralForm f = random_form(rng, vars, 2 + static_cast<unsigned>(n % 2), 9);
      if (f.is_zero() || has_singular_point(f, 7)) continue;
      ++n;
      unsigned o = order_of_form(f);
      ok += o == order_of_form(f.pow(2)) && o == order_of_form(f.pow(3));
    }
    c.expect(ok == n, "o(F) = o(F^2) = o(F^3) on " + std::to_string(ok) + "/" + std::to_string(n) +
                          " forms with no singular F_7-point");
  }

  // o over Q vs o over F_p for 10 < p < 100
  std::vector<IntegralForm> forms = {parse_form("x^5 + x^3*y*z + y*z^4 + x^4*z + x*y^4 + y^5"),
                                     parse_form("x^6 + x^5*y + x^4*y^2 + x^2*y^4 + y^6 + x^2*z^4 + z^6"),
                                     parse_form("x^3 + x^2*y + x*y^2 + 6*y^3"),
                                     parse_form("x^4 + 17*x^3*y + y^4"),
                                     parse_form("x0*x1"),
                                     cyclotomic_norm_form(3),
                                     cyclotomic_norm_form(5),
                                     composite_counterexample(3, 2, 2),
                                     composite_counterexample(3, 1, 1)};
  {
    std::size_t ok = 0, n = 0;
    std::vector<std::string> bad;
    for (const auto& f : forms) {
      unsigned oq = order_of_form(f);
      for (auto p : primes_in_range(11, 99)) {
        ++n;
        unsigned op = order_of_form(f, Int(p));
        if (op == oq) ++ok;
        else bad.push_back(f.to_string() + " at " + std::to_string(p));
      }
    }
    c.expect(ok == n, "order over Q equals order over F_p on " + std::to_string(ok) + "/" + std::to_string(n) +
                          " (form, p) pairs" + (bad.empty() ? "" : ", first mismatch: " + bad.front()));
  }

  // Probe audit: battery verdicts plus decide on the battery forms at small primes.
  for (const auto& f : forms)
    for (long p : {2, 3, 5, 7, 11, 13}) record(decide(f, p));
  std::set<std::pair<std::string, Int>> seen;
  std::size_t not_dense = 0, dense = 0, skipped = 0, contradictions = 0;
  std::vector<std::string> failures;
  for (const auto& v : battery_) {
    if (v.status == DensityStatus::Unknown) continue;
    if (!seen.insert({v.form.to_string(), v.p}).second) continue;
    ProbeConfig pc;
    pc.threads = threads();
    if (is_not_dense(v)) {
      ++not_dense;
      pc.window = 1;
      pc.budget = 20'000;
      if (quotient_probe(v.form, v.p, pc).has_valuation(1)) {
        ++contradictions;
        failures.push_back("NotDense " + v.form.to_string() + " at " + v.p.get_str() + " reaches valuation 1");
      }
      continue;
    }
    if (v.p > 13) {
      ++skipped;
      continue;
    }
    ++dense;
    pc.unit_depth = 3;
    pc.window = 2;
    pc.budget = 100'000;
    auto rep = quotient_probe(v.form, v.p, pc);
    if (rep.coverage < 0.95) {
      ++contradictions;
      failures.push_back("Dense " + v.form.to_string() + " at " + v.p.get_str() + " covers " +
                         std::to_string(rep.coverage));
    }
  }
  c.expect(contradictions == 0, "probe audit: " + std::to_string(not_dense) + " NotDense and " + std::to_string(dense) +
                                    " Dense verdicts, " + std::to_string(contradictions) + " contradictions" +
                                    (failures.empty() ? "" : "; first: " + failures.front()));
  c.note(std::to_string(skipped) + " Dense verdicts at p > 13 not probed at depth 3");
  r.pass = c.all();
  return r;
}

}  // namespace qdense
