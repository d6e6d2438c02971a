#include "qdense/spectrum.hpp"

#include <numeric>

#include "qdense/error.hpp"

namespace qdense {

namespace {

long val(const Int& x, const Int& q) { return valuation(x, q).value(); }

void check_content(const Int& content, const Int& q) {
  if (mod(content, q) == 0)
    throw Error(ErrorCode::ContentDivisible, "q = " + q.get_str() + " divides the content " + content.get_str());
}

std::uint64_t class_count(const Int& q, unsigned k, bool projective) {
  Int n = pow(q, k);
  if (projective) n += pow(q, k - 1);
  return fits_u64(n) ? to_u64(n) : UINT64_MAX;
}

// Classifies one residue class: if no factor vanishes mod q^K the valuation is
// finite; if exactly one does, the class yields a tail through that factor.
void classify(const std::vector<Int>& values, const std::vector<unsigned>& mults, const Int& qk,
              const Int& q, unsigned k, long base, ValuationSpectrum& out) {
  long acc = base;
  std::optional<std::size_t> open;
  for (std::size_t i = 0; i < values.size(); ++i) {
    Int r = mod(values[i], qk);
    if (r == 0) {
      if (open) throw Error(ErrorCode::Precondition, "two factors vanish on one class; depth too small");
      open = i;
      continue;
    }
    acc += static_cast<long>(mults[i]) * val(r, q);
  }
  if (!open) {
    out.finite_values.insert(acc);
  } else {
    const long e = mults[*open];
    out.tails.insert({acc + e * (static_cast<long>(k) - 1), e});
  }
}

// Smallest t >= 1 with c + e t = target (mod d), or exactly equal when d = 0.
std::optional<long> tail_hit(long c, long e, long target, long d) {
  const long diff = target - c;
  if (d == 0) {
    if (diff > 0 && diff % e == 0) return diff / e;
    return std::nullopt;
  }
  const long g = std::gcd(e, d);
  if (((diff % g) + g) % g != 0) return std::nullopt;
  const long m = d / g;
  if (m == 1) return 1;
  Int t0 = mod(Int(diff / g) * invmod(Int((e / g) % m), Int(m)), Int(m));
  long t = t0.get_si();
  return t == 0 ? m : t;
}

}  // namespace

bool ValuationSpectrum::contains(long v) const {
  if (finite_values.count(v)) return true;
  for (const auto& t : tails)
    if (v > t.offset && (v - t.offset) % t.stride == 0) return true;
  return false;
}

ValuationSpectrum valuation_spectrum(const LinearSplitForm& f, const Int& q, std::uint64_t budget) {
  require_prime(q, "spectrum prime");
  check_content(f.content(), q);
  const std::size_t n = f.n_vars();
  std::vector<std::pair<Int, Int>> core;  // (a, b) for a*x0 + b*x1
  std::vector<unsigned> mults;
  long stride = 0, core_degree = 0;
  for (const auto& lf : f.factors()) {
    bool binary = true;
    for (std::size_t i = 2; i < n; ++i) binary = binary && lf.coeffs[i] == 0;
    if (binary && n >= 2) {
      core.emplace_back(lf.coeffs[0], lf.coeffs[1]);
      mults.push_back(lf.multiplicity);
      core_degree += lf.multiplicity;
      continue;
    }
    if (n == 1) {
      core_degree += lf.multiplicity;
      continue;
    }
    // Must be a lone variable x_k with k >= 2.
    std::size_t nonzero = 0;
    for (const auto& c : lf.coeffs) nonzero += c != 0;
    if (nonzero != 1) throw Error(ErrorCode::Precondition, "spectrum needs a binary core times monomials");
    stride = std::gcd(stride, static_cast<long>(lf.multiplicity));
  }
  ValuationSpectrum out;
  out.q = q;
  out.free_stride = std::gcd(stride, core_degree);
  const long base = val(f.content(), q);
  if (n == 1) {
    out.finite_values.insert(base);
    out.exhaustive_depth = 1;
    return out;
  }
  long depth = 0;
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j) {
      Int det = core[i].first * core[j].second - core[i].second * core[j].first;
      if (det == 0) throw Error(ErrorCode::Precondition, "repeated linear factor in split form");
      depth = std::max(depth, val(det, q));
    }
  const unsigned k = static_cast<unsigned>(depth + 1);
  out.exhaustive_depth = k;
  if (class_count(q, k, true) > budget)
    throw Error(ErrorCode::BudgetExceeded, "spectrum depth " + std::to_string(k) + " exceeds budget");
  const Int qk = pow(q, k);
  std::vector<Int> values(core.size());
  for (Int y = 0; y < qk; ++y) {
    for (std::size_t i = 0; i < core.size(); ++i) values[i] = core[i].first + core[i].second * y;
    classify(values, mults, qk, q, k, base, out);
  }
  const Int qk1 = pow(q, k - 1);
  for (Int x = 0; x < qk1; ++x) {
    for (std::size_t i = 0; i < core.size(); ++i) values[i] = core[i].first * q * x + core[i].second;
    classify(values, mults, qk, q, k, base, out);
  }
  return out;
}

ValuationSpectrum valuation_spectrum(const IntegerRootedPoly& f, const Int& q, std::uint64_t budget) {
  require_prime(q, "spectrum prime");
  check_content(f.lead, q);
  long depth = 0;
  for (std::size_t i = 0; i < f.roots.size(); ++i)
    for (std::size_t j = i + 1; j < f.roots.size(); ++j) {
      Int diff = f.roots[i].first - f.roots[j].first;
      if (diff == 0) throw Error(ErrorCode::Precondition, "repeated root in rooted polynomial");
      depth = std::max(depth, val(diff, q));
    }
  const unsigned k = static_cast<unsigned>(depth + 1);
  if (class_count(q, k, false) > budget)
    throw Error(ErrorCode::BudgetExceeded, "spectrum depth " + std::to_string(k) + " exceeds budget");
  ValuationSpectrum out;
  out.q = q;
  out.exhaustive_depth = k;
  const Int qk = pow(q, k);
  const long base = val(f.lead, q);
  std::vector<Int> values(f.roots.size());
  std::vector<unsigned> mults;
  for (const auto& r : f.roots) mults.push_back(r.second);
  for (Int x = 0; x < qk; ++x) {
    for (std::size_t i = 0; i < f.roots.size(); ++i) values[i] = x - f.roots[i].first;
    classify(values, mults, qk, q, k, base, out);
  }
  return out;
}

std::optional<std::pair<long, long>> unit_difference(const ValuationSpectrum& s) {
  const long d = s.free_stride;
  for (long v : s.finite_values)
    for (long w : s.finite_values) {
      const long diff = v - w - 1;
      if (diff == 0 || (d != 0 && diff % d == 0)) return std::pair{v, w};
    }
  for (long a : s.finite_values)
    for (const auto& t : s.tails) {
      if (auto hit = tail_hit(t.offset, t.stride, a - 1, d)) return std::pair{a, t.offset + t.stride * *hit};
      if (auto hit = tail_hit(t.offset, t.stride, a + 1, d)) return std::pair{t.offset + t.stride * *hit, a};
    }
  for (const auto& t1 : s.tails)
    for (const auto& t2 : s.tails) {
      long g = std::gcd(std::gcd(t1.stride, t2.stride), d);
      long r = 1 - t1.offset + t2.offset;
      if (r % g != 0) continue;
      // Some t1-step reaches a value one above the second tail; a full period suffices.
      const long period = t2.stride * (d == 0 ? 1 : d) + t2.stride + 1;
      for (long i = 1; i <= period + std::abs(r); ++i) {
        const long v = t1.offset + t1.stride * i;
        if (auto hit = tail_hit(t2.offset, t2.stride, v - 1, d)) return std::pair{v, t2.offset + t2.stride * *hit};
      }
    }
  return std::nullopt;
}

}  // namespace qdense
