#include "qdense/probe.hpp"

#include <random>

#include "qdense/error.hpp"
#include "qdense/parallel.hpp"

namespace qdense {

namespace {

constexpr std::size_t kChunk = 4096;
constexpr std::uint64_t kPairOpsCap = 20'000'000;

Int unit_group_order(const Int& p, unsigned j) { return pow(p, j - 1) * (p - 1); }

/// Integer points of the max-norm box [-R, R]^n by increasing shell, zero excluded.
/// Within shell r, the first coordinate of absolute value r selects the block.
std::vector<std::vector<long>> box_points(std::size_t n, long radius, std::uint64_t limit) {
  std::vector<std::vector<long>> out;
  for (long r = 1; r <= radius && out.size() < limit; ++r)
    for (std::size_t first = 0; first < n && out.size() < limit; ++first) {
      std::vector<long> x(n);
      for (std::size_t i = 0; i < first; ++i) x[i] = -(r - 1);
      x[first] = -r;
      for (std::size_t i = first + 1; i < n; ++i) x[i] = -r;
      for (;;) {
        out.push_back(x);
        if (out.size() >= limit) break;
        // odometer: last coordinate fastest; x[first] toggles between -r and r
        std::size_t i = n;
        bool done = true;
        while (i-- > 0) {
          long lo = i < first ? -(r - 1) : -r, hi = i < first ? r - 1 : r;
          if (i == first) {
            if (x[i] == -r) {
              x[i] = r;
              done = false;
              break;
            }
            x[i] = -r;
            continue;
          }
          if (x[i] < hi) {
            ++x[i];
            done = false;
            break;
          }
          x[i] = lo;
        }
        if (done) break;
      }
    }
  return out;
}

struct Sample {
  bool nonzero = false;
  long valuation = 0;
  Int unit;
};

}  // namespace

bool ProbeReport::has_valuation(long v) const { return quotient_valuations().count(v) > 0; }

std::set<long> ProbeReport::quotient_valuations() const {
  std::set<long> out;
  for (const auto& [key, w] : reachable) out.insert(key.first);
  return out;
}

double ProbeReport::coverage_at(long v) const {
  std::size_t count = 0;
  for (const auto& [key, w] : reachable) count += key.first == v;
  return static_cast<double>(count) / unit_group_order(p, unit_depth).get_d();
}

ProbeReport quotient_probe(const Evaluator& f, std::size_t n_vars, const Int& p, const ProbeConfig& config) {
  require_prime(p, "quotient_probe");
  if (config.unit_depth < 1) throw Error(ErrorCode::InvalidParameters, "unit depth must be at least 1");
  if (config.window < 0) throw Error(ErrorCode::InvalidParameters, "window must be non-negative");
  if (config.budget < 1) throw Error(ErrorCode::InvalidParameters, "budget must be at least 1");
  if (config.random_bits < 1 || config.random_bits > 62)
    throw Error(ErrorCode::InvalidParameters, "random bits must lie in [1, 62]");
  if (n_vars == 0) throw Error(ErrorCode::InvalidParameters, "probe needs at least one variable");

  ProbeReport report;
  report.p = p;
  report.unit_depth = config.unit_depth;
  report.window = config.window;
  report.seed = config.seed;
  const Int pj = pow(p, config.unit_depth);
  const Int phi = unit_group_order(p, config.unit_depth);

  Int radius_int = p * p;
  long radius = radius_int.fits_slong_p() ? radius_int.get_si() : LONG_MAX;
  std::uint64_t box_limit = std::min(config.budget, config.box_cap);
  auto box = box_points(n_vars, radius, box_limit);
  const std::uint64_t total = config.budget;

  std::mt19937_64 rng(config.seed);
  const std::int64_t bound = std::int64_t{1} << config.random_bits;
  std::uniform_int_distribution<std::int64_t> coord(-bound, bound);

  // valuation -> unit residue -> first point attaining it
  std::map<long, std::map<Int, std::vector<Int>>> bins;
  std::vector<std::vector<Int>> chunk;
  std::vector<Sample> samples;
  std::uint64_t produced = 0;
  while (produced < total) {
    chunk.clear();
    while (chunk.size() < kChunk && produced < total) {
      std::vector<Int> x(n_vars);
      if (produced < box.size()) {
        for (std::size_t i = 0; i < n_vars; ++i) x[i] = Int(box[produced][i]);
      } else {
        for (std::size_t i = 0; i < n_vars; ++i) x[i] = Int(static_cast<long>(coord(rng)));
      }
      chunk.push_back(std::move(x));
      ++produced;
    }
    samples.assign(chunk.size(), Sample{});
    parallel_for(chunk.size(), config.threads, [&](std::size_t i) {
      Int v = f(chunk[i]);
      if (v == 0) return;
      auto [e, u] = split_power(v, p);
      samples[i] = Sample{true, static_cast<long>(e), mod(u, pj)};
    });
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (!samples[i].nonzero) continue;
      report.value_valuations.insert(samples[i].valuation);
      bins[samples[i].valuation].try_emplace(samples[i].unit, chunk[i]);
    }
  }
  report.samples_used = produced;

  std::map<long, Int> filled;
  std::uint64_t ops = 0;
  for (const auto& [v1, units1] : bins)
    for (const auto& [v2, units2] : bins) {
      long d = v1 - v2;
      if (d < -config.window || d > config.window) continue;
      std::vector<std::pair<Int, const std::vector<Int>*>> inverses;
      for (const auto& [u2, y] : units2) inverses.emplace_back(invmod(u2, pj), &y);
      for (const auto& [u1, x] : units1) {
        if (filled[d] == phi || ops >= kPairOpsCap) break;
        for (const auto& [inv, y] : inverses) {
          if (++ops >= kPairOpsCap) break;
          Int cls = mod(u1 * inv, pj);
          auto [it, fresh] = report.reachable.try_emplace({d, cls}, ProbeWitness{x, *y});
          if (fresh && ++filled[d] == phi) break;
        }
      }
    }
  double classes = static_cast<double>(2 * config.window + 1) * phi.get_d();
  report.coverage = static_cast<double>(report.reachable.size()) / classes;
  return report;
}

ProbeReport quotient_probe(const IntegralForm& f, const Int& p, const ProbeConfig& config) {
  return quotient_probe([&f](const std::vector<Int>& x) { return f.evaluate(x); }, f.n_vars(), p, config);
}

ProbeReport quotient_probe(const UniPoly& f, const Int& p, const ProbeConfig& config) {
  return quotient_probe([&f](const std::vector<Int>& x) { return f(x[0]); }, 1, p, config);
}

ProbeReport quotient_probe(const LinearSplitForm& f, const Int& p, const ProbeConfig& config) {
  return quotient_probe([&f](const std::vector<Int>& x) { return f.evaluate(x); }, f.n_vars(), p, config);
}

ValuationCensus valuation_census(const Evaluator& f, std::size_t n_vars, const Int& p, unsigned depth,
                                 std::uint64_t budget, std::uint64_t seed) {
  require_prime(p, "valuation_census");
  if (depth < 1) throw Error(ErrorCode::InvalidParameters, "census depth must be at least 1");
  const Int side = pow(p, depth);
  const Int size = pow(side, static_cast<unsigned long>(n_vars));
  ValuationCensus census;
  auto record = [&](const std::vector<Int>& x) {
    ++census.points;
    Int v = f(x);
    if (v != 0) ++census.counts[static_cast<long>(split_power(v, p).first)];
  };
  if (size <= Int(std::to_string(budget))) {
    std::vector<Int> x(n_vars, 0);
    for (;;) {
      record(x);
      std::size_t i = n_vars;
      while (i-- > 0) {
        if (++x[i] < side) break;
        x[i] = 0;
      }
      if (i == static_cast<std::size_t>(-1)) break;
    }
    return census;
  }
  census.exhaustive = false;
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(static_cast<unsigned long>(seed));
  std::vector<Int> x(n_vars);
  for (std::uint64_t s = 0; s < budget; ++s) {
    for (auto& c : x) c = rng.get_z_range(side);
    record(x);
  }
  return census;
}

ValuationCensus valuation_census(const IntegralForm& f, const Int& p, unsigned depth, std::uint64_t budget,
                                 std::uint64_t seed) {
  return valuation_census([&f](const std::vector<Int>& x) { return f.evaluate(x); }, f.n_vars(), p, depth, budget,
                          seed);
}

}  // namespace qdense
