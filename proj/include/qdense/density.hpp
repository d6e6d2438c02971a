#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdense/certificate.hpp"
#include "qdense/formlab.hpp"
#include "qdense/padic.hpp"
#include "qdense/probe.hpp"

namespace qdense {

enum class DensityStatus { Dense, NotDense, Unknown };

const char* to_string(DensityStatus s);

struct DecideConfig {
  std::uint64_t budget = 1'000'000;  // projective points / linear-factor candidates per stage
  unsigned precision = kDefaultPrecision;
  long sweep_radius = 5;
  std::size_t random_tuples = 100;
  long random_radius = 50;
  std::size_t sweep_cap = 20'000;  // specializations per free variable
  std::uint64_t seed = kDefaultProbeSeed;
  unsigned threads = 1;
  ProbeConfig probe{1, 2, 20'000, 20'000, 40, kDefaultProbeSeed, 1};
};

struct DensityVerdict {
  DensityStatus status = DensityStatus::Unknown;
  Int p;
  IntegralForm form{1, 0};  // primitive part of the analysed form
  std::optional<Certificate> certificate;
  std::optional<ProbeReport> evidence;
  std::vector<std::string> notes;
  DecideConfig config;
};

/// Runs the certificate pipeline for R(F) in Q_p. Every Dense/NotDense verdict has
/// passed verify_certificate; exhausted budgets end in Unknown.
DensityVerdict decide(const IntegralForm& f, const Int& p, const DecideConfig& config = {});

struct ScanEntry {
  Int p;
  DensityVerdict verdict;
  bool via_specialization;  // certified directly from a simple root of the specialization
};

/// Per-prime verdicts for p <= bound, driven by the specialization f = F(values, x_free).
/// Throws DegenerateSpecialization when f has zero discriminant.
std::vector<ScanEntry> scan_primes(const IntegralForm& f, std::size_t free_var, const std::vector<Int>& values,
                                   std::uint64_t bound, const DecideConfig& config = {});

/// Binary cubic criterion; never returns NotDense.
DensityVerdict cubic_verdict(const IntegralForm& f, const Int& p);

/// Binary quartic criterion for p > 3, a, b != 0, p | b; never returns NotDense.
DensityVerdict quartic_verdict(const IntegralForm& f, const Int& p);

/// A certificate iff the spectrum's difference set misses 1.
std::optional<ValuationObstruction> obstruction_from_spectrum(const ValuationSpectrum& spectrum,
                                                              const std::variant<LinearSplitForm, IntegerRootedPoly>& source);

/// A certificate iff f has no root mod p.
std::optional<UnivariateNonvanishing> univariate_nonvanishing_obstruction(const UniPoly& f, const Int& p);

}  // namespace qdense
