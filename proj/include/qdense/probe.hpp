#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "qdense/form.hpp"
#include "qdense/linear_split.hpp"

namespace qdense {

inline constexpr std::uint64_t kDefaultProbeSeed = 0x9e3779b97f4a7c15ULL;

struct ProbeConfig {
  unsigned unit_depth = 1;              // j: units are classified mod p^j
  long window = 2;                      // W: quotient valuations in [-W, W]
  std::uint64_t budget = 200'000;       // total evaluated points
  std::uint64_t box_cap = 1'000'000;    // cap on the deterministic box part
  unsigned random_bits = 40;            // random coordinates in [-2^bits, 2^bits]
  std::uint64_t seed = kDefaultProbeSeed;
  unsigned threads = 1;
};

struct ProbeWitness {
  std::vector<Int> x;
  std::vector<Int> y;
};

/// Reachable (valuation, unit mod p^j) classes of quotients F(x)/F(y).
struct ProbeReport {
  Int p;
  unsigned unit_depth = 1;
  long window = 0;
  std::map<std::pair<long, Int>, ProbeWitness> reachable;
  double coverage = 0;
  std::uint64_t samples_used = 0;
  std::uint64_t seed = 0;
  std::set<long> value_valuations;  // valuations of the sampled non-zero values

  bool has_valuation(long v) const;
  std::set<long> quotient_valuations() const;
  /// Fraction of unit classes reached at quotient valuation v.
  double coverage_at(long v) const;
};

using Evaluator = std::function<Int(const std::vector<Int>&)>;

ProbeReport quotient_probe(const Evaluator& f, std::size_t n_vars, const Int& p, const ProbeConfig& config);
ProbeReport quotient_probe(const IntegralForm& f, const Int& p, const ProbeConfig& config);
ProbeReport quotient_probe(const UniPoly& f, const Int& p, const ProbeConfig& config);
ProbeReport quotient_probe(const LinearSplitForm& f, const Int& p, const ProbeConfig& config);

struct ValuationCensus {
  std::map<long, std::uint64_t> counts;
  bool exhaustive = true;
  std::uint64_t points = 0;
};

/// Valuations of F over x in [0, p^K)^n with F(x) != 0; samples when p^(Kn) exceeds the budget.
ValuationCensus valuation_census(const Evaluator& f, std::size_t n_vars, const Int& p, unsigned depth,
                                 std::uint64_t budget = 10'000'000, std::uint64_t seed = kDefaultProbeSeed);
ValuationCensus valuation_census(const IntegralForm& f, const Int& p, unsigned depth,
                                 std::uint64_t budget = 10'000'000, std::uint64_t seed = kDefaultProbeSeed);

}  // namespace qdense
