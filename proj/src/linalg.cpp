#include "zagier/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace zagier {

namespace {

// A row num/den with integer numerators and a positive common denominator.
struct IntRow {
  std::vector<mpz_class> num;
  mpz_class den = 1;
};

void remove_content(IntRow& r) {
  if (r.den == 1) return;
  mpz_class g = r.den;
  for (const auto& x : r.num) {
    if (g == 1) return;
    if (sgn(x) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (g == 1) return;
  for (auto& x : r.num)
    if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(r.den.get_mpz_t(), r.den.get_mpz_t(), g.get_mpz_t());
}

// Makes the entry at column c equal to 1.
void normalize_pivot(IntRow& r, std::size_t c) {
  mpz_class p = r.num[c];
  if (p == r.den) return;
  // value = num/den; new value = num/p (den cancels)
  if (sgn(p) < 0) {
    p = -p;
    for (auto& x : r.num) x = -x;
  }
  r.den = p;
  remove_content(r);
}

// r <- r - r[c] * piv, where piv has entry 1 at c.
void eliminate(IntRow& r, const IntRow& piv, std::size_t c, std::size_t from) {
  if (sgn(r.num[c]) == 0) return;
  const mpz_class f = r.num[c];
  const std::size_t n = r.num.size();
  if (piv.den == 1) {
    for (std::size_t k = from; k < n; ++k) {
      if (sgn(piv.num[k]) != 0) mpz_submul(r.num[k].get_mpz_t(), f.get_mpz_t(), piv.num[k].get_mpz_t());
    }
  } else {
    for (std::size_t k = from; k < n; ++k) {
      r.num[k] *= piv.den;
      if (sgn(piv.num[k]) != 0) mpz_submul(r.num[k].get_mpz_t(), f.get_mpz_t(), piv.num[k].get_mpz_t());
    }
    for (std::size_t k = 0; k < from; ++k) r.num[k] *= piv.den;
    r.den *= piv.den;
    remove_content(r);
  }
}

struct Window {
  Exp lo = 0, hi = 0;
};

Window common_window(const std::vector<QSeries>& gens) {
  Window w;
  w.hi = kExact;
  w.lo = kExact;
  Exp maxend = -kExact;
  for (const auto& g : gens) {
    w.hi = std::min(w.hi, g.trunc());
    if (!g.is_zero()) {
      w.lo = std::min(w.lo, g.lead());
      maxend = std::max(maxend, g.stored_end());
    }
  }
  if (w.hi >= kExact) w.hi = maxend;  // all exact
  if (w.lo >= w.hi) w.lo = w.hi;
  return w;
}

}  // namespace

std::vector<QSeries> row_reduce(const std::vector<QSeries>& gens) {
  Window w = common_window(gens);
  const Exp t = [&] {
    Exp m = kExact;
    for (const auto& g : gens) m = std::min(m, g.trunc());
    return m;
  }();
  if (w.hi <= w.lo) return {};
  const auto ncols = static_cast<std::size_t>(w.hi - w.lo);
  std::vector<IntRow> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) {
    if (g.is_zero() || g.lead() >= w.hi) continue;
    IntRow r;
    r.num.assign(ncols, 0);
    mpz_class den = g.denominator_lcm();
    for (Exp n = g.lead(); n < std::min(w.hi, g.stored_end()); ++n) {
      const mpq_class& c = g.at(n);
      if (c == 0) continue;
      r.num[static_cast<std::size_t>(n - w.lo)] = c.get_num() * (den / c.get_den());
    }
    r.den = den;
    rows.push_back(std::move(r));
  }
  // Gauss-Jordan over columns in increasing exponent order.
  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (col, row)
  for (std::size_t c = 0; c < ncols && pivots.size() < rows.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || sgn(rows[i].num[c]) == 0) continue;
      if (best == rows.size() || mpz_sizeinbase(rows[i].den.get_mpz_t(), 2) <
                                     mpz_sizeinbase(rows[best].den.get_mpz_t(), 2)) {
        best = i;
      }
    }
    if (best == rows.size()) continue;
    used[best] = true;
    normalize_pivot(rows[best], c);
    const IntRow& piv = rows[best];
    const long nr = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic, 1) if (nr * static_cast<long>(ncols - c) > 4000)
    for (long i = 0; i < nr; ++i) {
      if (static_cast<std::size_t>(i) == best) continue;
      // The pivot row vanishes before column c.
      eliminate(rows[static_cast<std::size_t>(i)], piv, c, c);
    }
    pivots.emplace_back(c, best);
  }
  std::vector<QSeries> out;
  out.reserve(pivots.size());
  for (auto [c, i] : pivots) {
    IntRow& r = rows[i];
    std::vector<mpq_class> coeffs(ncols);
    for (std::size_t k = 0; k < ncols; ++k) {
      if (sgn(r.num[k]) == 0) continue;
      coeffs[k] = mpq_class(r.num[k], r.den);
      coeffs[k].canonicalize();
    }
    out.push_back(QSeries::from_coeffs(w.lo, std::move(coeffs), t));
  }
  return out;
}

std::vector<QSeries> row_reduce_reference(const std::vector<QSeries>& gens) {
  Window w = common_window(gens);
  Exp t = kExact;
  for (const auto& g : gens) t = std::min(t, g.trunc());
  if (w.hi <= w.lo) return {};
  const auto ncols = static_cast<std::size_t>(w.hi - w.lo);
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& g : gens) {
    if (g.is_zero() || g.lead() >= w.hi) continue;
    std::vector<mpq_class> r(ncols);
    for (Exp n = g.lead(); n < std::min(w.hi, g.stored_end()); ++n) r[static_cast<std::size_t>(n - w.lo)] = g.at(n);
    rows.push_back(std::move(r));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::vector<bool> used(rows.size(), false);
  for (std::size_t c = 0; c < ncols && pivots.size() < rows.size(); ++c) {
    std::size_t p = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!used[i] && rows[i][c] != 0) {
        p = i;
        break;
      }
    if (p == rows.size()) continue;
    used[p] = true;
    mpq_class inv = 1 / rows[p][c];
    for (auto& x : rows[p]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == p || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c];
      for (std::size_t k = 0; k < ncols; ++k)
        if (rows[p][k] != 0) rows[i][k] -= f * rows[p][k];
    }
    pivots.emplace_back(c, p);
  }
  std::vector<QSeries> out;
  for (auto [c, i] : pivots) out.push_back(QSeries::from_coeffs(w.lo, rows[i], t));
  return out;
}

// ---------------------------------------------------------------------------

IncrementalEchelon::IncrementalEchelon(Exp lo, Exp hi) : lo_(lo), hi_(hi) {
  if (hi < lo) throw std::invalid_argument("IncrementalEchelon: empty window");
}

std::vector<mpq_class> IncrementalEchelon::window(const QSeries& v) const {
  if (v.trunc() < hi_) {
    throw std::invalid_argument("IncrementalEchelon: series known only below " + std::to_string(v.trunc()) +
                                ", window needs " + std::to_string(hi_));
  }
  if (!v.is_zero() && v.lead() < lo_) throw std::invalid_argument("IncrementalEchelon: series starts below window");
  std::vector<mpq_class> w(static_cast<std::size_t>(hi_ - lo_));
  if (v.is_zero()) return w;
  for (Exp n = v.lead(); n < std::min(hi_, v.stored_end()); ++n) w[static_cast<std::size_t>(n - lo_)] = v.at(n);
  return w;
}

void IncrementalEchelon::reduce(std::vector<mpq_class>& w) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const mpq_class f = w[pivots_[r]];
    if (f == 0) continue;
    const auto& row = rows_[r];
    for (std::size_t k = pivots_[r]; k < w.size(); ++k)
      if (row[k] != 0) w[k] -= f * row[k];
  }
}

bool IncrementalEchelon::add(const QSeries& v) {
  auto w = window(v);
  reduce(w);
  std::size_t p = 0;
  while (p < w.size() && w[p] == 0) ++p;
  if (p == w.size()) return false;
  const mpq_class inv = 1 / w[p];
  for (std::size_t k = p; k < w.size(); ++k) w[k] *= inv;
  // keep rows fully reduced so reduce() works in any order
  for (auto& row : rows_) {
    const mpq_class f = row[p];
    if (f == 0) continue;
    for (std::size_t k = p; k < w.size(); ++k)
      if (w[k] != 0) row[k] -= f * w[k];
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  return true;
}

bool IncrementalEchelon::contains(const QSeries& v) const {
  auto w = window(v);
  reduce(w);
  return std::all_of(w.begin(), w.end(), [](const mpq_class& x) { return x == 0; });
}

std::optional<std::vector<mpq_class>> solve_unique(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b) {
  const std::size_t m = A.size();
  if (m == 0) return std::vector<mpq_class>{};
  const std::size_t n = A[0].size();
  if (b.size() != m) throw std::invalid_argument("solve_unique: dimension mismatch");
  std::size_t row = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && A[p][c] == 0) ++p;
    if (p == m) return std::nullopt;  // free variable
    std::swap(A[p], A[row]);
    std::swap(b[p], b[row]);
    const mpq_class inv = 1 / A[row][c];
    for (auto& x : A[row]) x *= inv;
    b[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || A[i][c] == 0) continue;
      const mpq_class f = A[i][c];
      for (std::size_t k = c; k < n; ++k) A[i][k] -= f * A[row][k];
      b[i] -= f * b[row];
    }
    pivcol.push_back(c);
    ++row;
  }
  if (pivcol.size() < n) return std::nullopt;
  for (std::size_t i = row; i < m; ++i)
    if (b[i] != 0) return std::nullopt;  // inconsistent
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[pivcol[i]] = b[i];
  return x;
}

}  // namespace zagier
