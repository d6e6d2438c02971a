#include "qdense/families.hpp"

#include <bit>
#include <set>
#include <sstream>
#include <unordered_map>

#include "qdense/error.hpp"
#include "qdense/parallel.hpp"
#include "qdense/residue.hpp"

namespace qdense {

namespace {

const std::map<std::string, std::set<std::string>> kFamilyParams = {
    {"cyclotomic", {"q"}},
    {"composite", {"q", "k", "m"}},
    {"finitely_dense_f", {"p", "q1", "q2", "q3"}},
    {"finitely_dense_g2", {"p", "q1", "q2", "q3"}},
    {"finitely_dense_gn", {"p", "q1", "q2", "q3", "n"}},
};

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidParameters, what); }

unsigned small_param(const FamilySpec& spec, const std::string& name, unsigned long limit) {
  Int v = spec.param(name);
  if (v < 1 || v > limit) invalid(name + " must lie in [1, " + std::to_string(limit) + "]");
  return static_cast<unsigned>(v.get_ui());
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
  FamilySpec spec;
  auto colon = text.find(':');
  spec.id = text.substr(0, colon);
  if (colon == std::string::npos) return spec;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    std::string item = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw SyntaxError(colon + 1 + pos, "expected key=value");
    Int value;
    if (value.set_str(item.substr(eq + 1), 10) != 0) throw SyntaxError(colon + 2 + pos + eq, "bad integer");
    if (!spec.params.emplace(item.substr(0, eq), value).second)
      throw SyntaxError(colon + 1 + pos, "duplicate key " + item.substr(0, eq));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return spec;
}

std::string FamilySpec::to_string() const {
  std::ostringstream os;
  os << id;
  const char* sep = ":";
  for (const auto& [k, v] : params) {
    os << sep << k << '=' << v;
    sep = ",";
  }
  return os.str();
}

Int FamilySpec::param(const std::string& name) const {
  auto it = params.find(name);
  if (it == params.end()) invalid("missing parameter " + name + " for family " + id);
  return it->second;
}

void FamilySpec::validate() const {
  auto known = kFamilyParams.find(id);
  if (known == kFamilyParams.end()) invalid("unknown family " + id);
  for (const auto& name : known->second) param(name);
  for (const auto& [name, value] : params)
    if (!known->second.count(name)) invalid("unexpected parameter " + name + " for family " + id);
  if (id == "cyclotomic") {
    if (!is_prime(param("q"))) invalid("q must be prime");
  } else if (id == "composite") {
    if (!is_prime(param("q"))) invalid("q must be prime");
    small_param(*this, "k", 64);
    small_param(*this, "m", 15);
  } else {
    FinitelyDenseParams::from_spec(*this);
    if (id == "finitely_dense_gn" && small_param(*this, "n", 16) < 3) invalid("n must be at least 3");
  }
}

void FinitelyDenseParams::validate() const {
  if (!is_prime(p)) invalid("p must be prime");
  for (unsigned q : {q1, q2, q3})
    if (!is_prime(Int(q))) invalid("q" + std::to_string(q == q1 ? 1 : q == q2 ? 2 : 3) + " must be prime");
  if (!(q1 < q2 && q2 < q3)) invalid("need q1 < q2 < q3");
  Int pp = p * (p - 1);
  for (auto [name, q] : {std::pair{"q1", q1}, {"q2", q2}, {"q3", q3}})
    if (mod(pp, Int(q)) == 0)
      invalid(std::string(name) + " = " + std::to_string(q) + " divides p(p-1) = " + pp.get_str());
}

FinitelyDenseParams FinitelyDenseParams::from_spec(const FamilySpec& spec) {
  FinitelyDenseParams params{spec.param("p"), small_param(spec, "q1", 1000), small_param(spec, "q2", 1000),
                             small_param(spec, "q3", 1000)};
  params.validate();
  return params;
}

IntegralForm cyclotomic_norm_form(const Int& q) {
  require_prime(q, "cyclotomic_norm_form");
  if (q > 11) throw Error(ErrorCode::BudgetExceeded, "cyclotomic norm forms are built for q <= 11");
  const std::size_t n = q.get_ui() - 1;
  if (n == 1) return IntegralForm::variable(1, 0);
  // Column c holds g * zeta^c in the basis 1, zeta, ..., zeta^(q-2); entry (r, c) is linear in x.
  std::vector<std::vector<std::vector<Int>>> coef(n, std::vector<std::vector<Int>>(n, std::vector<Int>(n, 0)));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t m = k + c;
      if (m < n) {
        coef[m][c][k] += 1;
      } else if (m == n) {
        for (std::size_t r = 0; r < n; ++r) coef[r][c][k] -= 1;
      } else {
        coef[m - n - 1][c][k] += 1;
      }
    }
  std::unordered_map<std::uint32_t, IntegralForm> memo;
  auto det = [&](auto&& self, std::size_t row, std::uint32_t mask) -> IntegralForm {
    if (row == n) return IntegralForm::constant(n, 1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    IntegralForm acc(n, static_cast<unsigned>(n - row));
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask >> c & 1u)) continue;
      bool zero = true;
      for (const auto& v : coef[row][c]) zero = zero && v == 0;
      if (zero) continue;
      IntegralForm term = IntegralForm::linear(coef[row][c]) * self(self, row + 1, mask & ~(1u << c));
      if (std::popcount(mask & ((1u << c) - 1)) % 2) acc = acc - term;
      else acc = acc + term;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return det(det, 0, (1u << n) - 1);
}

IntegralForm composite_counterexample(const Int& q, unsigned k, unsigned m) {
  require_prime(q, "composite_counterexample");
  if (k < 1 || m < 1) invalid("k and m must be at least 1");
  unsigned e = static_cast<unsigned>(q.get_ui());
  IntegralForm sum(m + 1, k);
  for (unsigned i = 1; i <= m; ++i) sum = sum + IntegralForm::variable(m + 1, i).pow(k);
  return IntegralForm::variable(m + 1, 0).pow(k * e) + sum.pow(e).scaled(2);
}

IntegerRootedPoly finitely_dense_f(const FinitelyDenseParams& params) {
  params.validate();
  const auto& [p, q1, q2, q3] = params;
  IntegerRootedPoly f{Int(1), {{Int(0), q1 * q2}}};
  for (unsigned i = 1; i <= q1; ++i) f.roots.emplace_back(-pow(p, i), q1 * q3);
  f.roots.emplace_back(-pow(p, q1 + 1), q2 * q3);
  return f;
}

LinearSplitForm finitely_dense_g(std::size_t n, const FinitelyDenseParams& params) {
  params.validate();
  if (n < 2 || n > 16) invalid("n must lie in [2, 16]");
  const auto& [p, q1, q2, q3] = params;
  auto vec = [n](const Int& a, const Int& b) {
    std::vector<Int> v(n, 0);
    v[0] = a;
    v[1] = b;
    return v;
  };
  std::vector<LinearFactor> factors{{vec(1, 0), q1 * q2}};
  for (unsigned i = 1; i <= q1; ++i) factors.push_back({vec(1, pow(p, i)), q1 * q3});
  factors.push_back({vec(1, pow(p, q1 + 1)), q2 * q3});
  for (unsigned i = 1; i <= q3 - 1; ++i) factors.push_back({vec(pow(p, i), 1), q1 * q2});
  for (unsigned i = q3; i <= q3 + q2 - q1 - 1; ++i) factors.push_back({vec(pow(p, i), 1), q1 * q3});
  for (unsigned i = q3 + q2 - q1; i <= q3 + q2 - 2; ++i) factors.push_back({vec(pow(p, i), 1), q2 * q3});
  for (std::size_t j = 2; j < n; ++j) {
    std::vector<Int> v(n, 0);
    v[j] = 1;
    factors.push_back({v, q1 * q2 * q3});
  }
  return LinearSplitForm(n, 1, std::move(factors));
}

std::vector<FamilyPrimeEntry> cyclotomic_not_dense_primes(const Int& q, std::uint64_t bound, std::uint64_t budget,
                                                          unsigned threads) {
  require_prime(q, "cyclotomic_not_dense_primes");
  IntegralForm form = cyclotomic_norm_form(q);
  std::vector<Int> primes;
  for (auto p : primes_up_to(bound))
    if (Int(p) != q && mod(Int(p) - 1, q) != 0) primes.emplace_back(p);
  std::vector<FamilyPrimeEntry> out(primes.size());
  const std::string qs = q.get_str();
  parallel_for(primes.size(), threads, [&](std::size_t i) {
    const Int& p = primes[i];
    FamilyPrimeEntry& e = out[i];
    e.p = p;
    if (form.degree() < 2) {
      e.note = "linear form: values cover every valuation";
      return;
    }
    Int order = multiplicative_order(p, q);
    std::uint64_t points = projective_point_count(form.n_vars(), p);
    if (points <= budget) {
      auto rep = is_anisotropic_mod_p(form, p, budget);
      if (rep.anisotropic) {
        e.certificate = FamilyObstruction{"cyclotomic", {{"q", q}}, {}, true};
        e.certificate->transcript.push_back("enumerated " + std::to_string(rep.points_enumerated) +
                                            " projective points mod " + p.get_str() + ": no zero");
        return;
      }
      e.note = "isotropic mod p; the order of p mod " + qs + " is " + order.get_str();
      return;
    }
    if (order == q - 1) {
      e.certificate = FamilyObstruction{"cyclotomic", {{"q", q}}, {}, false};
      e.certificate->transcript.push_back("order of p mod " + qs + " is " + order.get_str() +
                                          ": Phi_" + qs + " is irreducible mod p");
    } else {
      e.note = "over budget; the order of p mod " + qs + " is " + order.get_str() + ", so the form is isotropic";
    }
  });
  return out;
}

std::vector<FamilyPrimeEntry> composite_not_dense_primes(const Int& q, unsigned k, unsigned m, std::uint64_t bound,
                                                         unsigned threads) {
  require_prime(q, "composite_not_dense_primes");
  if (k < 1 || m < 1) invalid("k and m must be at least 1");
  const Int t = composite_power_test_value(q);
  std::vector<Int> candidates;
  for (auto p : primes_up_to(bound))
    if (mod(Int(k) * q, Int(p)) != 0 && mod(t, Int(p)) != 0) candidates.emplace_back(p);
  std::vector<std::optional<FamilyPrimeEntry>> found(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t i) {
    const Int& p = candidates[i];
    if (is_qth_power_residue(t, q, p)) return;
    Int g = gcd(q, p - 1);
    Int r = powmod(t, (p - 1) / g, p);
    FamilyObstruction cert{"composite", {{"q", q}, {"k", Int(k)}, {"m", Int(m)}}, {}, false};
    cert.transcript.push_back(t.get_str() + "^((p-1)/" + g.get_str() + ") = " + r.get_str() + " mod " +
                              p.get_str() + ": not a " + q.get_str() + "-th power");
    found[i] = FamilyPrimeEntry{p, std::move(cert), ""};
  });
  std::vector<FamilyPrimeEntry> out;
  for (auto& f : found)
    if (f) out.push_back(std::move(*f));
  return out;
}

namespace {

/// Sizes of the images of x -> x^a and y -> y^b on F_p^*; their product set is the subgroup of order lcm.
bool unit_equation_solvable(const Int& p, unsigned a, unsigned b) {
  auto image_size = [&](unsigned e) -> Int {
    if (p > 1'000'000) return (p - 1) / gcd(Int(e), p - 1);
    std::set<unsigned long> seen;
    for (unsigned long x = 1; x < p.get_ui(); ++x) seen.insert(powmod(Int(x), Int(e), p).get_ui());
    return Int(seen.size());
  };
  Int sa = image_size(a), sb = image_size(b);
  Int l = sa / gcd(sa, sb) * sb;
  return l == p - 1;
}

}  // namespace

FinitelyDenseReport finitely_dense_checks(const FamilySpec& spec, const FinitelyDenseCheckConfig& config) {
  spec.validate();
  if (spec.id.rfind("finitely_dense", 0) != 0) invalid("finitely_dense_checks needs a finitely_dense family");
  auto params = FinitelyDenseParams::from_spec(spec);
  const auto& [p, q1, q2, q3] = params;
  FinitelyDenseReport report;
  report.spec = spec;

  ProbeConfig probe = config.probe;
  probe.window = config.probe_window;
  std::variant<LinearSplitForm, IntegerRootedPoly> source = IntegerRootedPoly{};
  if (spec.id == "finitely_dense_f") {
    auto f = finitely_dense_f(params);
    source = f;
    report.threshold = pow(p, q1 + 1);
    Evaluator eval = [f](const std::vector<Int>& x) {
      Int v = f.lead;
      for (const auto& [r, e] : f.roots) v *= pow(x[0] - r, e);
      return v;
    };
    report.probe = quotient_probe(eval, 1, p, probe);
  } else {
    std::size_t n = spec.id == "finitely_dense_g2" ? 2 : spec.param("n").get_ui();
    auto g = finitely_dense_g(n, params);
    source = g;
    report.threshold = pow(p, q1 + q2 + q3 - 1);
    report.probe = quotient_probe(g, p, probe);
  }
  auto reached = report.probe.quotient_valuations();
  report.probe_reached_window = true;
  for (long v = -config.probe_window; v <= config.probe_window; ++v)
    report.probe_reached_window = report.probe_reached_window && reached.count(v);
  report.unit_equation_solvable = unit_equation_solvable(p, q1 * q2, q2 * q3);

  std::set<Int> qs(config.extra_q.begin(), config.extra_q.end());
  std::size_t sampled = 0;
  if (report.threshold < Int(std::to_string(config.q_bound)))
    for (auto q : primes_in_range(report.threshold.get_ui() + 1, config.q_bound)) {
      if (sampled++ >= config.max_sampled_q) break;
      qs.insert(Int(q));
    }
  for (const Int& q : qs) {
    FamilyQCheck check;
    check.q = q;
    check.above_threshold = q > report.threshold;
    if (!is_prime(q)) invalid("sampled q = " + q.get_str() + " is not prime");
    if (q == p || q == q1 || q == q2 || q == q3) {
      check.status = "outside theorem range";
      report.q_checks.push_back(std::move(check));
      continue;
    }
    try {
      ValuationSpectrum s = std::visit(
          [&](const auto& src) { return valuation_spectrum(src, q, config.spectrum_budget); }, source);
      check.unit_difference = unit_difference(s);
      if (check.unit_difference) {
        check.status = "no obstruction";
      } else {
        check.status = "certified";
        check.certificate = ValuationObstruction{std::move(s), source};
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      check.status = "budget exceeded";
    }
    report.q_checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace qdense
