#include "qdense/density.hpp"

#include <mutex>
#include <numeric>
#include <random>

#include "qdense/error.hpp"
#include "qdense/fp_poly.hpp"
#include "qdense/linear_split.hpp"
#include "qdense/parallel.hpp"
#include "qdense/residue.hpp"
#include "qdense/resultant.hpp"

namespace qdense {

namespace {

std::vector<Int> drop_coordinate(const std::vector<Int>& point, std::size_t skip) {
  std::vector<Int> out;
  for (std::size_t i = 0; i < point.size(); ++i)
    if (i != skip) out.push_back(point[i]);
  return out;
}

std::size_t leading_index(const std::vector<Int>& coeffs) {
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) return i;
  return 0;
}

bool is_budget(const Error& e) { return e.code() == ErrorCode::BudgetExceeded; }

/// All tuples of [-r, r]^len with r shrunk until the count fits the cap, then seeded random tuples.
std::vector<std::vector<Int>> sweep_tuples(std::size_t len, const DecideConfig& config) {
  std::vector<std::vector<Int>> out;
  long r = config.sweep_radius;
  auto count = [&](long radius) {
    double c = 1;
    for (std::size_t i = 0; i < len; ++i) c *= static_cast<double>(2 * radius + 1);
    return c;
  };
  while (r > 0 && count(r) > static_cast<double>(config.sweep_cap)) --r;
  std::vector<long> t(len, -r);
  for (;;) {
    out.emplace_back(t.begin(), t.end());
    std::size_t i = len;
    while (i-- > 0) {
      if (t[i] < r) {
        ++t[i];
        break;
      }
      t[i] = -r;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  if (len == 0) return out;
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<long> coord(-config.random_radius, config.random_radius);
  for (std::size_t k = 0; k < config.random_tuples; ++k) {
    std::vector<Int> v(len);
    for (auto& c : v) c = Int(coord(rng));
    out.push_back(std::move(v));
  }
  return out;
}

class Pipeline {
 public:
  Pipeline(const IntegralForm& f, const Int& p, const DecideConfig& config) : ctx_(p, config.precision) {
    require_prime(p, "decide");
    if (f.is_zero()) throw Error(ErrorCode::ZeroForm, "decide needs a non-zero form");
    v_.p = p;
    v_.config = config;
    v_.form = f.content_and_primitive().second;
  }

  DensityVerdict run() {
    const IntegralForm& F = v_.form;
    if (F.degree() == 0) {
      v_.notes.push_back("constant form: the ratio set is {1}");
      return std::move(v_);
    }
    if (linear_factor_stage() || anisotropy_stage() || smooth_point_stage() || sweep_stage() ||
        spectrum_stage())
      return std::move(v_);
    probe_stage();
    return std::move(v_);
  }

 private:
  const Int& p() const { return v_.p; }
  const DecideConfig& config() const { return v_.config; }

  bool accept(Certificate cert, const std::string& stage) {
    if (!verify_certificate(v_.form, p(), cert)) {
      v_.notes.push_back(stage + ": candidate certificate failed re-verification");
      return false;
    }
    v_.status = certifies_not_dense(cert) ? DensityStatus::NotDense : DensityStatus::Dense;
    v_.certificate = std::move(cert);
    v_.notes.push_back("certified by " + stage);
    return true;
  }

  bool linear_factor_stage() {
    try {
      for (const auto& lf : linear_factors_mod_p(v_.form, p(), config().budget)) {
        if (lf.multiplicity != 1) continue;
        auto w = cofactor_witness(v_.form, lf.coeffs, p(), config().budget);
        if (w && accept(SimpleLinearFactorModP{lf.coeffs, *w, leading_index(lf.coeffs)}, "simple linear factor"))
          return true;
      }
    } catch (const Error& e) {
      if (!is_budget(e)) throw;
      v_.notes.push_back(std::string("simple linear factor: skipped, ") + e.what());
    }
    return false;
  }

  bool within_point_budget(const char* stage) {
    if (projective_point_count(v_.form.n_vars(), p()) <= config().budget) return true;
    v_.notes.push_back(std::string(stage) + ": skipped, projective space exceeds the budget");
    return false;
  }

  bool anisotropy_stage() {
    if (v_.form.degree() < 2 || !within_point_budget("anisotropy")) return false;
    auto rep = is_anisotropic_mod_p(v_.form, p(), config().budget);
    return rep.anisotropic && accept(AnisotropicModP{rep.points_enumerated}, "anisotropy mod p");
  }

  bool smooth_point_stage() {
    if (!within_point_budget("smooth point")) return false;
    auto sp = smooth_point_mod_p(v_.form, p(), config().budget);
    if (!sp || !sp->nonvanishing_partial_index) return false;
    std::size_t j = *sp->nonvanishing_partial_index;
    UniPoly g = v_.form.specialize(j, drop_coordinate(sp->point, j));
    Int root = hensel_lift_simple(g, sp->point[j], ctx_);
    return accept(SmoothPointModP{sp->point, j, root, ctx_.precision()}, "smooth point mod p");
  }

  bool sweep_stage() {
    const std::size_t n = v_.form.n_vars();
    auto tuples = sweep_tuples(n - 1, config());
    std::vector<SpecializedRoot> multiple;
    for (std::size_t fv = 0; fv < n; ++fv)
      for (const auto& values : tuples) {
        UniPoly g = v_.form.specialize(fv, values);
        if (g.is_zero() || g.is_constant()) continue;
        std::vector<ZpRoot> roots;
        try {
          roots = zp_roots(g, ctx_);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::PrecisionInsufficient) throw;
          continue;
        }
        for (const auto& r : roots) {
          if (r.multiplicity == 1) {
            if (accept(SimpleZeroSpecialization{fv, values, r.residue, ctx_.precision()}, "specialization sweep"))
              return true;
            continue;
          }
          SpecializedRoot here{fv, values, r.residue, r.multiplicity};
          for (const auto& other : multiple)
            if (std::gcd(other.multiplicity, here.multiplicity) == 1 &&
                accept(CoprimeMultiplicities{other, here, ctx_.precision()}, "coprime multiplicities"))
              return true;
          bool seen = false;
          for (const auto& other : multiple) seen = seen || other.multiplicity == here.multiplicity;
          if (!seen) multiple.push_back(std::move(here));
        }
      }
    return false;
  }

  bool spectrum_stage() {
    if (v_.form.n_vars() != 2) return false;
    try {
      auto split = binary_linear_split(v_.form);
      if (!split) return false;
      auto s = valuation_spectrum(*split, p(), config().budget);
      auto cert = obstruction_from_spectrum(s, *split);
      if (!cert) {
        v_.notes.push_back("valuation spectrum: difference set contains 1");
        return false;
      }
      return accept(std::move(*cert), "valuation spectrum");
    } catch (const Error& e) {
      if (!is_budget(e)) throw;
      v_.notes.push_back(std::string("valuation spectrum: skipped, ") + e.what());
    }
    return false;
  }

  void probe_stage() {
    ProbeConfig pc = config().probe;
    pc.threads = config().threads;
    v_.evidence = quotient_probe(v_.form, p(), pc);
    v_.notes.push_back("no certificate found; probe evidence attached");
  }

  DensityVerdict v_;
  PadicContext ctx_;
};

}  // namespace

const char* to_string(DensityStatus s) {
  switch (s) {
    case DensityStatus::Dense:
      return "Dense";
    case DensityStatus::NotDense:
      return "NotDense";
    case DensityStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

DensityVerdict decide(const IntegralForm& f, const Int& p, const DecideConfig& config) {
  return Pipeline(f, p, config).run();
}

std::vector<ScanEntry> scan_primes(const IntegralForm& f, std::size_t free_var, const std::vector<Int>& values,
                                   std::uint64_t bound, const DecideConfig& config) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroForm, "scan needs a non-zero form");
  if (free_var >= f.n_vars() || values.size() + 1 != f.n_vars())
    throw Error(ErrorCode::DimensionMismatch, "scan needs one value for every variable except the free one");
  const IntegralForm F = f.content_and_primitive().second;
  const UniPoly g = F.specialize(free_var, values);
  if (g.is_constant() || discriminant(g) == 0)
    throw Error(ErrorCode::DegenerateSpecialization, "degenerate specialization; choose other values");
  const Int D = discriminant(g);

  auto primes = primes_up_to(bound);
  std::vector<ScanEntry> out(primes.size());
  DecideConfig inner = config;
  inner.threads = 1;
  inner.probe.threads = 1;
  parallel_for(primes.size(), config.threads, [&](std::size_t i) {
    const Int p(primes[i]);
    ScanEntry& e = out[i];
    e.p = p;
    e.via_specialization = false;
    if (mod(D, p) != 0) {
      for (const auto& [r, m] : roots_mod_p(g, p)) {
        if (m != 1) continue;
        PadicContext ctx(p, config.precision);
        Certificate cert = SimpleZeroSpecialization{free_var, values, hensel_lift_simple(g, r, ctx), ctx.precision()};
        if (!verify_certificate(F, p, cert)) continue;
        e.verdict.status = DensityStatus::Dense;
        e.verdict.p = p;
        e.verdict.form = F;
        e.verdict.config = config;
        e.verdict.certificate = std::move(cert);
        e.verdict.notes.push_back("simple root " + Int(r).get_str() + " of the specialization mod p, lifted");
        e.via_specialization = true;
        return;
      }
    }
    e.verdict = decide(F, p, inner);
  });
  return out;
}

DensityVerdict cubic_verdict(const IntegralForm& f, const Int& p) {
  if (f.n_vars() != 2 || f.degree() != 3)
    throw Error(ErrorCode::Precondition, "cubic criterion needs a binary cubic form");
  require_prime(p, "cubic_verdict");
  DensityVerdict v;
  v.p = p;
  v.form = f.content_and_primitive().second;
  auto co = binary_coefficients(v.form);
  const Int &a = co[0], &b = co[1], &c = co[2], &d = co[3];
  const Int D = cubic_criterion_discriminant(a, b, c, d);
  std::optional<Certificate> cert;
  if (a == 0) {
    if (b != 0 || c != 0) cert = CubicCriterion{1, D, 0};
    else v.notes.push_back("a = b = c = 0: criterion does not apply");
  } else if (p <= 3) {
    v.notes.push_back("criterion needs p > 3");
  } else {
    int l = legendre_symbol(mod(D, p), p);
    if (l == -1) cert = CubicCriterion{2, D, -1};
    else v.notes.push_back("D = " + D.get_str() + " has Legendre symbol " + std::to_string(l) + ": criterion silent");
  }
  if (cert && verify_certificate(v.form, p, *cert)) {
    v.status = DensityStatus::Dense;
    v.certificate = std::move(cert);
  }
  return v;
}

DensityVerdict quartic_verdict(const IntegralForm& f, const Int& p) {
  if (f.n_vars() != 2 || f.degree() != 4)
    throw Error(ErrorCode::Precondition, "quartic criterion needs a binary quartic form");
  require_prime(p, "quartic_verdict");
  if (p <= 3) throw Error(ErrorCode::Precondition, "quartic criterion needs p > 3");
  DensityVerdict v;
  v.p = p;
  v.form = f.content_and_primitive().second;
  auto co = binary_coefficients(v.form);
  const Int &a = co[0], &b = co[1], &c = co[2], &d = co[3], &e = co[4];
  if (a == 0) throw Error(ErrorCode::Precondition, "quartic criterion needs a != 0");
  if (b == 0) throw Error(ErrorCode::Precondition, "quartic criterion needs b != 0");
  if (mod(b, p) != 0) throw Error(ErrorCode::Precondition, "quartic criterion needs p | b");
  const Int A = mod(a * a * c * c + 12 * pow(a, 3) * e, p);
  std::optional<Certificate> cert;
  if (A != 0) {
    Int s = quartic_recurrence_value(a, c, d, e, p);
    Int target = mod(a * a * c * c - 4 * pow(a, 3) * e, p);
    if (s == target) cert = QuarticCriterion{2, s, target};
    else
      v.notes.push_back("case 2: s_(p+1) = " + s.get_str() + " but a^2c^2 - 4a^3e = " + target.get_str() +
                        " mod p: criterion silent");
  } else if (mod(p, 3) != 1) {
    v.notes.push_back("case 1 needs p = 1 mod 3: criterion silent");
  } else {
    Int w = mod(8 * pow(a, 3) * pow(c, 3) + 27 * pow(a, 4) * d * d, p);
    if (w != 0 && !is_qth_power_residue(w, 3, p)) cert = QuarticCriterion{1, w, Int(0)};
    else v.notes.push_back("case 1: 8a^3c^3 + 27a^4d^2 = " + w.get_str() + " is a cube mod p: criterion silent");
  }
  if (cert && verify_certificate(v.form, p, *cert)) {
    v.status = DensityStatus::Dense;
    v.certificate = std::move(cert);
  }
  return v;
}

std::optional<ValuationObstruction> obstruction_from_spectrum(
    const ValuationSpectrum& spectrum, const std::variant<LinearSplitForm, IntegerRootedPoly>& source) {
  if (unit_difference(spectrum)) return std::nullopt;
  return ValuationObstruction{spectrum, source};
}

std::optional<UnivariateNonvanishing> univariate_nonvanishing_obstruction(const UniPoly& f, const Int& p) {
  require_prime(p, "univariate_nonvanishing_obstruction");
  if (p > 10'000'000) throw Error(ErrorCode::BudgetExceeded, "residue tables are built for p <= 10^7");
  if (f.is_zero()) return std::nullopt;
  UnivariateNonvanishing cert;
  for (unsigned long r = 0; r < p.get_ui(); ++r) {
    Int v = mod(f(Int(r)), p);
    if (v == 0) return std::nullopt;
    cert.residue_table.push_back(v);
  }
  return cert;
}

}  // namespace qdense
