// Exact linear algebra on q-expansions: reduced echelon forms keyed by the
// leading exponent, incremental rank tracking, and small rational solves.
#pragma once

#include <optional>
#include <vector>

#include "zagier/qseries.hpp"

namespace zagier {

// Reduced echelon form of span(gens) on the common known window: every
// returned series has leading coefficient 1 and coefficient 0 at the leading
// exponent of every other returned series. Output is sorted by lead
// (most negative first); zero combinations are dropped. The result's
// truncation is the minimum truncation of the inputs.
std::vector<QSeries> row_reduce(const std::vector<QSeries>& gens);
// Same computation, single-threaded and in plain rational arithmetic;
// kept as a reference for tests and benchmarks.
std::vector<QSeries> row_reduce_reference(const std::vector<QSeries>& gens);

// Rank tracker over a fixed exponent window [lo, hi).
class IncrementalEchelon {
 public:
  IncrementalEchelon(Exp lo, Exp hi);
  // Adds v (restricted to the window) if it is independent of the rows so
  // far. Returns true when the rank grew. v must be known on the window.
  bool add(const QSeries& v);
  bool contains(const QSeries& v) const;
  std::size_t rank() const { return rows_.size(); }
  Exp lo() const { return lo_; }
  Exp hi() const { return hi_; }

 private:
  std::vector<mpq_class> window(const QSeries& v) const;
  void reduce(std::vector<mpq_class>& w) const;
  Exp lo_, hi_;
  std::vector<std::vector<mpq_class>> rows_;  // pivot entry 1
  std::vector<std::size_t> pivots_;
};

// Solves A x = b exactly for square or overdetermined consistent systems.
// Returns nullopt when the system has no unique solution.
std::optional<std::vector<mpq_class>> solve_unique(std::vector<std::vector<mpq_class>> A,
                                                   std::vector<mpq_class> b);

}  // namespace zagier
