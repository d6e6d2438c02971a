#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdense/certificate.hpp"
#include "qdense/formlab.hpp"
#include "qdense/linear_split.hpp"
#include "qdense/probe.hpp"

namespace qdense {

/// Family id plus named integer parameters, written "id:key=value,key=value".
struct FamilySpec {
  std::string id;  // cyclotomic | composite | finitely_dense_f | finitely_dense_g2 | finitely_dense_gn
  std::map<std::string, Int> params;

  static FamilySpec parse(const std::string& text);
  std::string to_string() const;
  /// Throws InvalidParameters naming the violated condition.
  void validate() const;
  Int param(const std::string& name) const;
};

/// Norm of x0 + x1 t + ... + x_(q-2) t^(q-2) from Q(zeta_q); q <= 11.
IntegralForm cyclotomic_norm_form(const Int& q);

struct FamilyPrimeEntry {
  Int p;
  std::optional<FamilyObstruction> certificate;
  std::string note;
};

/// Primes p <= bound, p != q, q not dividing p - 1, each with a certificate when one exists.
std::vector<FamilyPrimeEntry> cyclotomic_not_dense_primes(const Int& q, std::uint64_t bound,
                                                          std::uint64_t budget = kDefaultEnumerationBudget,
                                                          unsigned threads = 1);

/// x0^(kq) + 2 (x1^k + ... + xm^k)^q
IntegralForm composite_counterexample(const Int& q, unsigned k, unsigned m);

/// Primes p <= bound with p not dividing kq at which 2 is not a q-th power.
std::vector<FamilyPrimeEntry> composite_not_dense_primes(const Int& q, unsigned k, unsigned m, std::uint64_t bound,
                                                         unsigned threads = 1);

struct FinitelyDenseParams {
  Int p;
  unsigned q1, q2, q3;

  /// Throws InvalidParameters unless q1 < q2 < q3 are primes coprime to p(p-1).
  void validate() const;
  static FinitelyDenseParams from_spec(const FamilySpec& spec);
};

IntegerRootedPoly finitely_dense_f(const FinitelyDenseParams& params);
/// g_2 for n = 2, and g_2 * (x3 ... xn)^(q1 q2 q3) beyond.
LinearSplitForm finitely_dense_g(std::size_t n, const FinitelyDenseParams& params);

struct FamilyQCheck {
  Int q;
  bool above_threshold = false;
  std::string status;  // certified | no obstruction | outside theorem range | budget exceeded
  std::optional<ValuationObstruction> certificate;
  std::optional<std::pair<long, long>> unit_difference;
};

struct FinitelyDenseReport {
  FamilySpec spec;
  Int threshold;  // every prime q above it is covered by the theorem
  ProbeReport probe;
  bool probe_reached_window = false;
  bool unit_equation_solvable = false;
  std::vector<FamilyQCheck> q_checks;
};

struct FinitelyDenseCheckConfig {
  long probe_window = 3;
  ProbeConfig probe;
  std::uint64_t q_bound = 200;
  std::size_t max_sampled_q = 12;
  std::vector<Int> extra_q;  // checked whatever their position relative to the threshold
  std::uint64_t spectrum_budget = kDefaultSpectrumBudget;
};

/// Probe evidence for denseness at p, the unit equation mod p, and spectrum obstructions at sampled q.
FinitelyDenseReport finitely_dense_checks(const FamilySpec& spec, const FinitelyDenseCheckConfig& config);

}  // namespace qdense
