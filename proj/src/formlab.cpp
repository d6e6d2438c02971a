#include "qdense/formlab.hpp"

#include <functional>
#include <limits>
#include <random>
#include <set>

#include "qdense/error.hpp"
#include "qdense/fp_poly.hpp"

namespace qdense {

namespace {

using ZeroVisitor = std::function<bool(const std::vector<Int>&)>;

void check_budget(std::uint64_t needed, std::uint64_t budget, const char* what) {
  if (needed > budget)
    throw Error(ErrorCode::BudgetExceeded, std::string(what) + " needs " + std::to_string(needed) +
                                               " points, budget is " + std::to_string(budget));
}

IntegralForm reduced_nonzero(const IntegralForm& f, const Int& p) {
  require_prime(p, "finite field");
  IntegralForm r = f.reduce_mod(p);
  if (r.is_zero()) throw Error(ErrorCode::ZeroModP, "form vanishes identically mod " + p.get_str());
  return r;
}

// Advances a little-endian-in-reverse counter over [0, p)^len in lex order.
bool next_lex(std::vector<Int>& digits, const Int& p) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < p) return true;
    digits[i] = 0;
  }
  return false;
}

// Visits the projective zeros of f mod p in lex order of normalized representatives.
// Returns true if the visitor stopped early.
bool for_each_zero(const IntegralForm& f, const Int& p, const ZeroVisitor& visit) {
  const std::size_t n = f.n_vars();
  std::vector<Int> point(n);
  for (std::size_t j = n; j-- > 0;) {
    std::fill(point.begin(), point.end(), Int(0));
    point[j] = 1;
    if (j == n - 1) {
      if (f.evaluate(point, p) == 0 && visit(point)) return true;
      continue;
    }
    // Coordinates j+1 .. n-2 form the prefix; coordinate n-1 is the line parameter.
    std::vector<Int> prefix(n - j - 2, Int(0));
    do {
      std::vector<Int> values(n - 1);
      for (std::size_t i = 0; i + 1 < n; ++i) values[i] = i < j ? Int(0) : (i == j ? Int(1) : prefix[i - j - 1]);
      UniPoly line = f.specialize(n - 1, values).reduce(p);
      for (std::size_t i = 0; i + 1 < n; ++i) point[i] = values[i];
      if (line.is_zero()) {
        for (Int t = 0; t < p; ++t) {
          point[n - 1] = t;
          if (visit(point)) return true;
        }
      } else {
        for (const auto& [r, e] : roots_mod_p(line, p)) {
          point[n - 1] = r;
          if (visit(point)) return true;
        }
      }
    } while (next_lex(prefix, p));
  }
  return false;
}

unsigned rank_over_q(std::vector<std::vector<Int>> m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  Int prev = 1;
  unsigned rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t k = col + 1; k < cols; ++k) {
        Int v = m[rank][col] * m[i][k] - m[i][col] * m[rank][k];
        mpz_divexact(m[i][k].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

unsigned rank_mod_p(std::vector<std::vector<Int>> m, const Int& p) {
  for (auto& row : m)
    for (auto& v : row) v = mod(v, p);
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  unsigned rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    Int inv = invmod(m[rank][col], p);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      Int factor = mod(m[i][col] * inv, p);
      for (std::size_t k = col; k < cols; ++k) m[i][k] = mod(m[i][k] - factor * m[rank][k], p);
    }
    ++rank;
  }
  return rank;
}

std::size_t leading_index(const std::vector<Int>& l) {
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] != 0) return i;
  throw Error(ErrorCode::ZeroForm, "zero linear form");
}

}  // namespace

PartialsMatrix partials_matrix(const IntegralForm& f) {
  std::vector<IntegralForm> partials;
  std::set<Exponents, std::greater<>> support;
  for (std::size_t i = 0; i < f.n_vars(); ++i) {
    partials.push_back(f.partial_derivative(i));
    for (const auto& [e, c] : partials.back().terms()) support.insert(e);
  }
  PartialsMatrix out;
  out.monomials.assign(support.begin(), support.end());
  for (const auto& d : partials) {
    std::vector<Int> row;
    row.reserve(out.monomials.size());
    for (const auto& e : out.monomials) row.push_back(d.coefficient(e));
    out.rows.push_back(std::move(row));
  }
  return out;
}

unsigned order_of_form(const IntegralForm& f, const std::optional<Int>& p) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroForm, "order of the zero form");
  if (f.degree() == 0) throw Error(ErrorCode::Precondition, "order needs degree at least 1");
  auto m = partials_matrix(f);
  if (!p) return rank_over_q(std::move(m.rows));
  require_prime(*p, "order modulus");
  if (Int(f.degree()) % *p == 0)
    throw Error(ErrorCode::CharacteristicDividesDegree,
                "p = " + p->get_str() + " divides the degree " + std::to_string(f.degree()));
  if (f.reduce_mod(*p).is_zero()) throw Error(ErrorCode::ZeroModP, "form vanishes mod p");
  return rank_mod_p(std::move(m.rows), *p);
}

std::uint64_t projective_point_count(std::size_t n_vars, const Int& p) {
  Int count = (pow(p, n_vars) - 1) / (p - 1);
  if (!fits_u64(count)) return std::numeric_limits<std::uint64_t>::max();
  return to_u64(count);
}

AnisotropyReport is_anisotropic_mod_p(const IntegralForm& f, const Int& p, std::uint64_t budget) {
  IntegralForm r = reduced_nonzero(f, p);
  const std::uint64_t total = projective_point_count(f.n_vars(), p);
  check_budget(total, budget, "anisotropy enumeration");
  AnisotropyReport out{true, total, std::nullopt};
  for_each_zero(r, p, [&](const std::vector<Int>& x) {
    out.anisotropic = false;
    out.zero = x;
    return true;
  });
  return out;
}

std::optional<FpPointReport> smooth_point_mod_p(const IntegralForm& f, const Int& p, std::uint64_t budget) {
  IntegralForm r = reduced_nonzero(f, p);
  check_budget(projective_point_count(f.n_vars(), p), budget, "smooth point search");
  std::vector<IntegralForm> partials;
  for (std::size_t i = 0; i < r.n_vars(); ++i) partials.push_back(r.partial_derivative(i).reduce_mod(p));
  std::optional<FpPointReport> found;
  for_each_zero(r, p, [&](const std::vector<Int>& x) {
    for (std::size_t i = 0; i < partials.size(); ++i) {
      if (partials[i].evaluate(x, p) != 0) {
        found = FpPointReport{x, true, i};
        return true;
      }
    }
    return false;
  });
  return found;
}

unsigned linear_factor_multiplicity(const IntegralForm& f, const std::vector<Int>& l, const Int& p) {
  const std::size_t n = f.n_vars();
  if (l.size() != n) throw Error(ErrorCode::DimensionMismatch, "linear form has wrong length");
  const std::size_t j = leading_index(l);
  // New coordinates: y_j = L(x), y_k = x_k otherwise; so x_j = inv*(y_j - sum c_k y_k).
  const Int inv = invmod(l[j], p);
  std::vector<std::vector<Int>> columns(n, std::vector<Int>(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (i != j) {
      columns[i][i] = 1;
      continue;
    }
    columns[j][j] = inv;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) columns[j][k] = mod(-inv * l[k], p);
  }
  IntegralForm g = f.substitute(columns).reduce_mod(p);
  if (g.is_zero()) throw Error(ErrorCode::ZeroModP, "form vanishes mod p");
  unsigned e = std::numeric_limits<unsigned>::max();
  for (const auto& [ex, c] : g.terms()) e = std::min(e, ex[j]);
  return e;
}

std::vector<LinearFactorModP> linear_factors_mod_p(const IntegralForm& f, const Int& p, std::uint64_t budget) {
  IntegralForm r = reduced_nonzero(f, p);
  const std::size_t n = r.n_vars();
  std::mt19937_64 rng(0x11ea7f);
  std::vector<LinearFactorModP> out;
  for (std::size_t j = n; j-- > 0;) {
    // Candidate coefficients for each later variable from the (x_j, x_k) plane restriction.
    std::vector<std::vector<Int>> options;
    Int count = 1;
    for (std::size_t k = j + 1; k < n; ++k) {
      std::vector<std::vector<Int>> plane(n, std::vector<Int>(2, Int(0)));
      plane[j][0] = 1;
      plane[k][1] = 1;
      IntegralForm g = r.substitute(plane).reduce_mod(p);
      std::vector<Int> opts;
      if (g.is_zero()) {
        for (Int c = 0; c < p; ++c) opts.push_back(c);
      } else {
        // L restricted to the plane is x_j + c x_k, vanishing at (-c, 1).
        for (const auto& [root, e] : roots_mod_p(g.specialize(0, {Int(1)}), p)) opts.push_back(mod(-root, p));
        std::sort(opts.begin(), opts.end());
      }
      count *= opts.size();
      options.push_back(std::move(opts));
    }
    if (count == 0) continue;
    if (!fits_u64(count)) check_budget(std::numeric_limits<std::uint64_t>::max(), budget, "linear factor search");
    check_budget(to_u64(count), budget, "linear factor search");
    std::vector<std::size_t> idx(options.size(), 0);
    for (;;) {
      std::vector<Int> l(n, Int(0));
      l[j] = 1;
      for (std::size_t k = 0; k < options.size(); ++k) l[j + 1 + k] = options[k][idx[k]];
      // Cheap rejection: F must vanish on random points of the hyperplane.
      bool maybe = true;
      std::uniform_int_distribution<unsigned long> dist(0, p.fits_ulong_p() ? p.get_ui() - 1 : ~0UL);
      for (int trial = 0; trial < 4 && maybe; ++trial) {
        std::vector<Int> x(n);
        Int s = 0;
        for (std::size_t k = 0; k < n; ++k)
          if (k != j) {
            x[k] = mod(Int(dist(rng)), p);
            s += l[k] * x[k];
          }
        x[j] = mod(-s, p);
        if (r.evaluate(x, p) != 0) maybe = false;
      }
      if (maybe) {
        unsigned e = linear_factor_multiplicity(r, l, p);
        if (e > 0) out.push_back({l, e});
      }
      std::size_t k = options.size();
      while (k-- > 0) {
        if (++idx[k] < options[k].size()) break;
        idx[k] = 0;
      }
      if (k == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

std::optional<std::vector<Int>> cofactor_witness(const IntegralForm& f, const std::vector<Int>& l, const Int& p,
                                                 std::uint64_t budget) {
  const std::size_t n = f.n_vars();
  const std::size_t j = leading_index(l);
  IntegralForm d = f.partial_derivative(j).reduce_mod(p);
  if (n == 1) return std::nullopt;
  const Int inv = invmod(l[j], p);
  std::vector<Int> free(n - 1, Int(0));
  std::uint64_t steps = 0;
  while (next_lex(free, p)) {
    if (++steps > budget) return std::nullopt;
    std::vector<Int> x(n);
    Int s = 0;
    for (std::size_t k = 0, t = 0; k < n; ++k) {
      if (k == j) continue;
      x[k] = free[t++];
      s += l[k] * x[k];
    }
    x[j] = mod(-s * inv, p);
    if (d.evaluate(x, p) != 0) {
      Int lead = 0;
      for (const auto& c : x)
        if (c != 0) {
          lead = c;
          break;
        }
      Int li = invmod(lead, p);
      for (auto& c : x) c = mod(c * li, p);
      return x;
    }
  }
  return std::nullopt;
}

}  // namespace qdense
