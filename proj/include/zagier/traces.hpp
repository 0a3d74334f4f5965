// The weight-raising operator applied to weakly holomorphic forms of
// weight 2 - 2s, numerical evaluation at CM points, and twisted traces.
#pragma once

#include <stdexcept>
#include <vector>

#include "zagier/heegner.hpp"
#include "zagier/numeric.hpp"
#include "zagier/qseries.hpp"

namespace zagier {

// Raised when an expansion is too short for the requested accuracy; the
// message names the order that would be needed.
class InsufficientTruncation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (d^{s-1} f)(z) = sum_j parts[j](z) * (4 pi y)^{-j}, j = 0..s-1, where
// d^{s-1} = (-1)^{s-1} d_{-2} o d_{-4} o ... o d_{2-2s} and
// d_k = D - k / (4 pi y), D = q d/dq.
struct RaisedForm {
  int s = 2;
  std::vector<QSeries> parts;
};

RaisedForm raise(const QSeries& f, int s);

struct PointValue {
  Complex value;
  Real tail;       // estimated size of the omitted terms
  Exp terms = 0;   // exponents n < terms were summed
};

// Evaluates a raised form at tau using exponents below `terms` (0: all
// known exponents) at the given binary precision.
PointValue eval_point(const RaisedForm& rf, const CMPoint& tau, unsigned precision_bits, Exp terms = 0);

// s_hat = s if (-1)^s D > 0, else 1 - s.
int s_hat(int s, long D);

struct TraceSpec {
  long d = -4;  // d D < 0, d = 0, 1 mod 4
  long D = 1;   // fundamental discriminant
  int s = 2;
  long p = 5;
  int s_hat() const { return zagier::s_hat(s, D); }
  void validate() const;
};

struct TraceResult {
  long d = 0, D = 1;
  Real value;        // real part of the (starred) trace
  Real imag;         // residual imaginary part
  Real tail;         // accumulated tail estimate
  Real margin;       // distance from value to the nearest integer
  std::size_t classes_used = 0;  // classes with chi(Q) != 0
  Exp terms = 0;
  unsigned precision = 0;
};

// Tail bound demanded by the default precision policy (2^-40).
Real default_tail_target();

// Tr_{d,D}(d^{s-1} f) = sum_Q chi(Q) / w_Q * (d^{s-1} f)(tau_Q) over
// Gamma0(p)-classes of discriminant dD. Throws when the imaginary part or
// the tail estimate exceeds tolerance.
TraceResult trace(const QSeries& f, const TraceSpec& spec, unsigned precision_bits = 256);
// (-1)^{floor((s_hat-1)/2)} |d|^{-s_hat/2} |D|^{(s_hat-1)/2} Tr_{d,D}(d^{s-1} f).
TraceResult trace_star(const QSeries& f, const TraceSpec& spec, unsigned precision_bits = 256);
Real trace_star_prefactor(long d, long D, int s);

// Rounds x to the nearest multiple of 1/den; throws when the distance
// exceeds tol. margin receives the distance.
mpq_class round_to_class(const Real& x, long den, double tol, Real* margin = nullptr);

struct IdentityReport {
  long m = 1, D = 1, D_prime = -4;
  Real lhs, rhs, discrepancy;
};

// Numerical check of
//   Tr_{m^2 D', D}(f) = sum_{a | m} mu(a) chi_{D'}(a) sum_{b | m/a} chi_D(b) Tr_{(m/ab)^2 D, D'}(f)
// expressed in starred traces (each side scaled by its own prefactor).
IdentityReport trace_identity_check(const QSeries& f, int s, long p, long m, long D, long D_prime,
                                    unsigned precision_bits = 256);

}  // namespace zagier
