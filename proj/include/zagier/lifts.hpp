// Zagier lifts of forms in M#_{2-2s}(p) to the plus space at level 4p, the
// twisted Shimura lift, and verifiers for duality, constant terms and
// integrality.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zagier/qseries.hpp"
#include "zagier/spaces.hpp"
#include "zagier/traces.hpp"

namespace zagier {

// m > 0 -> a(-m), the principal part of f.
using PrincipalPart = std::map<Exp, mpq_class>;
PrincipalPart principal_part_of(const QSeries& f);

// The canonical form in M#_{2-2s}(p) with the given principal part, known
// below trunc. Throws if some a(-m) != 0 has no basis element.
QSeries sharp_form(long p, int s, const PrincipalPart& pp, Exp trunc);

// sum_{m>0} a(-m) m^{s - s_hat} sum_{n | m} chi_D(n) n^{s_hat - 1} q^{-m^2 |D| / n^2}
QSeries zagier_principal_part(const PrincipalPart& pp, long D, int s, int s_hat);
QSeries zagier_principal_part(const QSeries& f, long D, int s, int s_hat);

struct LiftTerm {
  long level = 0;
  int weight2 = 0;
  Exp m = 0;
  mpq_class multiplier;
};

struct LiftResult {
  long level = 0;  // 4p
  int weight2 = 0;
  QSeries image;
  std::vector<LiftTerm> decomposition;
  // Holomorphic correction (positive-weight image only).
  std::optional<QSeries> correction;
  std::vector<Exp> matching_window;  // exponents whose traces pinned the correction
  Exp held_out = 0;                  // exponent used for the cross-check
  double held_out_error = 0;
};

// Image weight 3/2 - s, requires (-1)^s D > 0.
LiftResult zagier_lift_neg_weight_image(const QSeries& f, long p, int s, long D, Exp trunc);
// Image weight s + 1/2, requires (-1)^s D < 0.
LiftResult zagier_lift_pos_weight_image(const QSeries& f, long p, int s, long D, Exp trunc,
                                        unsigned precision_bits = 256);
// Dispatches on the sign of (-1)^s D.
LiftResult zagier_lift(const QSeries& f, long p, int s, long D, Exp trunc, unsigned precision_bits = 256);
// Re-sums the decomposition (plus correction) on the image's window.
QSeries resum_decomposition(const LiftResult& r);

// Tr*_{d,D} of the M#_{2-2s}(p) form with f's principal part, extending the
// expansion until the tail estimate meets the precision policy.
TraceResult trace_star_sharp(const QSeries& f, long p, int s, long D, long d, unsigned precision_bits = 256);

// Twisted Shimura lift of a plus-space cusp form of weight weight2/2 at
// level 4p; the image (weight weight2 - 1) is checked against S_{weight2-1}(p)
// up to the Sturm bound. Coefficients are known for n < n_out where
// (n_out - 1)^2 |D| < f.trunc().
QSeries shimura_lift(const QSeries& f, int weight2, long D, long p);

struct DualityReport {
  bool ok = true;
  long level = 0;
  int weight2_f = 0, weight2_g = 0;
  std::vector<Exp> ms, ls;
  std::size_t checked = 0;
  std::string first_failure;
};

// Checks a(m, l) = -b(l, m), where f_m = q^{-m} + sum a(m, l) q^l and
// g_l = q^{-l} + sum b(l, m) q^m, on the first `window` indices of each.
DualityReport duality_check_families(const BasisFamily& F, const BasisFamily& G, std::size_t window);
// Family pair for a level: f-family of weight2 with the g-family of weight2
// 4 - weight2 (levels p and 4p), or the f-family of weight2 4 - weight2 at
// level 4.
DualityReport duality_check(long level, int weight2, std::size_t window);

struct ConstantTermReport {
  mpq_class constant;
  bool vanishes = false;
};
// Constant term of (f g) | U_4.
ConstantTermReport constant_term_check(const QSeries& f, const QSeries& g, long p);

struct IntegralityReport {
  long level = 0;
  int weight2 = 0;
  long allowed_den = 1;
  std::size_t coefficients = 0;
  std::size_t half_integral = 0;  // coefficients with denominator exactly 2
  bool ok = true;
  std::string first_failure;
};
// Scans at least `sample` coefficients of the f- (and g-) family elements.
IntegralityReport integrality_check(long level, int weight2, std::size_t sample);

}  // namespace zagier
