#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "qdense/linear_split.hpp"

namespace qdense {

/// {offset + stride * t : t >= 1}
struct SpectrumTail {
  long offset;
  long stride;

  friend auto operator<=>(const SpectrumTail&, const SpectrumTail&) = default;
};

/// Valuations attained on primitive inputs: finite values plus arithmetic tails.
///
/// free_stride generates the extra valuations contributed by scaling the input
/// (the degree for a binary form, together with the exponents of any monomial
/// cofactor); it is 0 for univariate polynomials, where no scaling is available.
struct ValuationSpectrum {
  Int q;
  std::set<long> finite_values;
  std::set<SpectrumTail> tails;
  unsigned exhaustive_depth = 0;
  long free_stride = 0;

  bool contains(long v) const;
  friend bool operator==(const ValuationSpectrum&, const ValuationSpectrum&) = default;
};

inline constexpr std::uint64_t kDefaultSpectrumBudget = 10'000'000;

/// Binary linear-split forms, optionally times monomials in further variables.
ValuationSpectrum valuation_spectrum(const LinearSplitForm& f, const Int& q,
                                     std::uint64_t budget = kDefaultSpectrumBudget);
/// Univariate polynomials with integer roots, over all inputs in Z_q.
ValuationSpectrum valuation_spectrum(const IntegerRootedPoly& f, const Int& q,
                                     std::uint64_t budget = kDefaultSpectrumBudget);

/// Whether 1 lies in S - S + free_stride*Z. When it does, returns a witnessing pair
/// of valuations (v, w) with v - w = 1 modulo free_stride.
std::optional<std::pair<long, long>> unit_difference(const ValuationSpectrum& s);

}  // namespace qdense
