#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>

#include "qdense/error.hpp"
#include "qdense/paper_report.hpp"
#include "qdense/parser.hpp"
#include "qdense/serialize.hpp"

using namespace qdense;

namespace {

struct Globals {
  std::string format = "text";
  std::optional<std::uint64_t> budget;
  unsigned threads = 1;
  bool structured() const { return format == "structured"; }
};

Int parse_int(const std::string& s) {
  Int x;
  if (x.set_str(s, 10) != 0) throw CLI::ValidationError("not an integer: " + s);
  return x;
}

Int parse_prime(const std::string& s) {
  Int p = parse_int(s);
  if (!is_prime(p)) throw CLI::ValidationError("--prime must be a prime, got " + s);
  return p;
}

std::vector<Int> parse_list(const std::string& s) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
  return out;
}

void print_verdict(const DensityVerdict& v) {
  std::cout << "status: " << to_string(v.status) << "\n"
            << "prime: " << v.p << "\n"
            << "form: " << v.form.to_string() << "\n";
  if (v.certificate) std::cout << "certificate: " << to_json(*v.certificate).dump() << "\n";
  if (v.evidence)
    std::cout << "evidence: coverage " << v.evidence->coverage << " over " << v.evidence->samples_used
              << " samples\n";
  for (const auto& n : v.notes) std::cout << "note: " << n << "\n";
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic density of ratio sets of integral forms"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "text | structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--budget", g.budget, "enumeration / sample budget for the chosen command");
  app.add_option("--threads", g.threads, "worker threads for scan, probe, family and paper-report")
      ->check(CLI::Range(1u, 1024u));
  app.fallthrough();

  std::string form_text, prime_text = "0", values_text, seed_text;
  unsigned depth = kDefaultPrecision;
  auto* analyze = app.add_subcommand("analyze", "decide density of R(F) in Q_p");
  analyze->add_option("form", form_text)->required();
  analyze->add_option("--prime", prime_text)->required();
  analyze->add_option("--depth", depth, "p-adic precision of lifted roots");
  analyze->add_option("--seed", seed_text);

  std::size_t free_var = 0;
  std::uint64_t prime_bound = 100;
  auto* scan = app.add_subcommand("scan", "per-prime verdicts driven by a specialization");
  scan->add_option("form", form_text)->required();
  scan->add_option("--free-var", free_var)->required();
  scan->add_option("--values", values_text, "comma-separated values of the other variables")->required();
  scan->add_option("--prime-bound", prime_bound)->required();

  std::string family_id, params_text;
  std::map<std::string, std::string> fam;
  std::uint64_t q_bound = 0;
  std::string extra_q;
  auto* family = app.add_subcommand("family", "generate a family member and run its checkers");
  family->add_option("id", family_id)->required();
  family->add_option("--params", params_text, "key=value,... (alternative to the flags below)");
  for (const char* key : {"q", "k", "m", "p", "q1", "q2", "q3", "n"})
    family->add_option(std::string("--") + key, fam[key]);
  family->add_option("--prime-bound", prime_bound, "bound for the prime listings");
  family->add_option("--q-bound", q_bound, "sampled q up to this bound (finitely dense families)");
  family->add_option("--extra-q", extra_q, "comma-separated extra q to check");

  unsigned unit_depth = 1;
  long window = 2;
  auto* probe = app.add_subcommand("probe", "empirical quotient-class coverage");
  probe->add_option("form", form_text)->required();
  probe->add_option("--prime", prime_text)->required();
  probe->add_option("--unit-depth", unit_depth);
  probe->add_option("--window", window);
  probe->add_option("--seed", seed_text);

  auto* spectrum = app.add_subcommand("spectrum", "valuation spectrum of a product of linear factors");
  spectrum->add_option("factored-form", form_text)->required();
  spectrum->add_option("--prime", prime_text)->required();

  std::vector<int> only;
  auto* report = app.add_subcommand("paper-report", "run the acceptance battery");
  report->add_option("--only", only, "criterion numbers to run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    auto seed = [&](std::uint64_t fallback) {
      return seed_text.empty() ? fallback : static_cast<std::uint64_t>(parse_int(seed_text).get_ui());
    };
    if (*analyze) {
      DecideConfig cfg;
      cfg.precision = depth;
      cfg.seed = seed(cfg.seed);
      cfg.probe.seed = cfg.seed;
      if (g.budget) cfg.budget = *g.budget;
      auto v = decide(parse_form(form_text), parse_prime(prime_text), cfg);
      g.structured() ? print_json(to_json(v)) : print_verdict(v);
    } else if (*scan) {
      DecideConfig cfg;
      cfg.threads = g.threads;
      if (g.budget) cfg.budget = *g.budget;
      IntegralForm f = parse_form(form_text);
      auto table = scan_primes(f, free_var, parse_list(values_text), prime_bound, cfg);
      if (g.structured()) {
        Json rows = Json::array();
        for (const auto& e : table) rows.push_back(to_json(e));
        print_json({{"schema", kSchemaVersion}, {"command", "scan"}, {"form", to_json(f)}, {"verdicts", rows}});
      } else {
        for (const auto& e : table)
          std::cout << e.p << "\t" << to_string(e.verdict.status) << "\t"
                    << (e.verdict.certificate ? certificate_kind(*e.verdict.certificate) : "-") << "\n";
      }
    } else if (*family) {
      FamilySpec spec = FamilySpec::parse(params_text.empty() ? family_id : family_id + ":" + params_text);
      for (const auto& [k, v] : fam)
        if (!v.empty()) spec.params[k] = parse_int(v);
      spec.validate();
      Json out = {{"schema", kSchemaVersion}, {"family", spec.to_string()}};
      std::ostringstream text;
      text << "family: " << spec.to_string() << "\n";
      auto listing = [&](const IntegralForm& f, const std::vector<FamilyPrimeEntry>& entries) {
        out["form"] = to_json(f);
        out["order"] = order_of_form(f);
        Json rows = Json::array();
        text << "form: " << f.to_string() << "\norder: " << order_of_form(f) << "\n";
        for (const auto& e : entries) {
          rows.push_back(to_json(e));
          text << e.p << "\t" << (e.certificate ? "NotDense" : "Unknown") << "\t"
               << (e.certificate ? e.certificate->transcript.front() : e.note) << "\n";
        }
        out["primes"] = rows;
      };
      if (spec.id == "cyclotomic") {
        Int q = spec.param("q");
        listing(cyclotomic_norm_form(q),
                cyclotomic_not_dense_primes(q, prime_bound, g.budget.value_or(kDefaultEnumerationBudget), g.threads));
      } else if (spec.id == "composite") {
        Int q = spec.param("q");
        unsigned k = spec.param("k").get_ui(), m = spec.param("m").get_ui();
        listing(composite_counterexample(q, k, m), composite_not_dense_primes(q, k, m, prime_bound, g.threads));
      } else {
        FinitelyDenseCheckConfig cfg;
        cfg.probe.threads = g.threads;
        if (g.budget) cfg.probe.budget = *g.budget;
        cfg.q_bound = q_bound;
        if (!extra_q.empty()) cfg.extra_q = parse_list(extra_q);
        auto params = FinitelyDenseParams::from_spec(spec);
        if (spec.id == "finitely_dense_f") {
          auto f = finitely_dense_f(params);
          out["polynomial"] = to_json(f);
          text << "f: degree " << f.degree() << ", roots";
          for (const auto& [r, e] : f.roots) text << " " << r << "^" << e;
          text << "\n";
        } else {
          auto gform = finitely_dense_g(spec.id == "finitely_dense_g2" ? 2 : spec.param("n").get_ui(), params);
          out["form"] = to_json(gform);
          text << "g: degree " << gform.degree() << ", " << gform.factors().size() << " factors\n"
               << gform.to_string() << "\n";
        }
        auto rep = finitely_dense_checks(spec, cfg);
        out["checks"] = to_json(rep);
        text << "threshold: " << rep.threshold << "\n"
             << "probe reached [-" << cfg.probe_window << ", " << cfg.probe_window
             << "]: " << (rep.probe_reached_window ? "yes" : "no") << "\n"
             << "unit equation solvable mod p: " << (rep.unit_equation_solvable ? "yes" : "no") << "\n";
        for (const auto& c : rep.q_checks)
          text << "q = " << c.q << "\t" << c.status << (c.above_threshold ? "" : "\t(below threshold)") << "\n";
      }
      g.structured() ? print_json(out) : void(std::cout << text.str());
    } else if (*probe) {
      ProbeConfig cfg;
      cfg.unit_depth = unit_depth;
      cfg.window = window;
      cfg.threads = g.threads;
      cfg.seed = seed(cfg.seed);
      if (g.budget) cfg.budget = *g.budget;
      auto rep = quotient_probe(parse_form(form_text), parse_prime(prime_text), cfg);
      if (g.structured()) {
        Json j = to_json(rep, true);
        j["schema"] = kSchemaVersion;
        print_json(j);
      } else {
        std::cout << "coverage: " << rep.coverage << " (" << rep.reachable.size() << " classes, "
                  << rep.samples_used << " samples, seed " << rep.seed << ")\n";
        for (long v = -window; v <= window; ++v) std::cout << "valuation " << v << ": " << rep.coverage_at(v) << "\n";
      }
    } else if (*spectrum) {
      auto src = parse_factored(form_text);
      Int q = parse_prime(prime_text);
      std::uint64_t budget = g.budget.value_or(kDefaultSpectrumBudget);
      auto s = std::visit([&](const auto& x) { return valuation_spectrum(x, q, budget); }, src);
      auto cert = obstruction_from_spectrum(s, src);
      auto witness = unit_difference(s);
      if (g.structured()) {
        Json j = {{"schema", kSchemaVersion}, {"spectrum", to_json(s)}};
        j["certificate"] = cert ? to_json(Certificate(*cert)) : Json(nullptr);
        print_json(j);
      } else {
        std::cout << "finite:";
        for (long v : s.finite_values) std::cout << " " << v;
        std::cout << "\ntails:";
        for (const auto& t : s.tails) std::cout << " {" << t.offset << " + " << t.stride << "t}";
        std::cout << "\nfree stride: " << s.free_stride << "\ndepth: " << s.exhaustive_depth << "\n";
        if (cert) std::cout << "NotDense: 1 is not a difference of attained valuations\n";
        else std::cout << "no obstruction: " << witness->first << " - " << witness->second << " = 1\n";
      }
    } else if (*report) {
      PaperReport runner(ReportOptions{g.threads});
      std::vector<CriterionResult> results;
      if (only.empty())
        for (int id = 1; id <= PaperReport::kCriteria; ++id) only.push_back(id);
      Json rows = Json::array();
      for (int id : only) {
        auto r = runner.run(id);
        if (g.structured()) {
          rows.push_back({{"criterion", r.id},
                          {"title", r.title},
                          {"pass", r.pass},
                          {"expected_failure", r.expected_failure},
                          {"details", r.details},
                          {"seconds", r.seconds}});
        } else {
          std::cout << format_result_line(r) << "\n";
          for (const auto& d : r.details) std::cout << "    " << d << "\n";
        }
        results.push_back(std::move(r));
      }
      if (g.structured()) print_json({{"schema", kSchemaVersion}, {"criteria", rows}});
      return report_succeeded(results) ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool usage = e.code() == ErrorCode::Syntax || e.code() == ErrorCode::NonHomogeneous;
    return usage ? 2 : 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
