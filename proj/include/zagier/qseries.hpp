// Exact truncated Laurent series in q with rational coefficients.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace zagier {

using Exp = std::int64_t;

// Truncation order used for series that are known exactly (polynomials).
// Arithmetic saturates at this value, so exact inputs produce exact outputs.
inline constexpr Exp kExact = std::numeric_limits<Exp>::max() / 4;

// Overflow-checked exponent arithmetic; anything reaching kExact saturates.
Exp exp_add(Exp a, Exp b);
Exp exp_mul(Exp a, Exp b);

// A Laurent series sum_{n >= lead} c_n q^n whose coefficients are known for
// n < trunc. Coefficients between the last stored one and trunc are zero.
// Invariants: either the series is zero (lead == trunc, nothing stored) or
// the coefficient at lead is nonzero and lead < trunc.
class QSeries {
 public:
  QSeries();  // exact zero

  static QSeries zero(Exp trunc = kExact);
  static QSeries one();
  static QSeries constant(const mpq_class& c);
  static QSeries monomial(Exp e, const mpq_class& c = 1);
  // Builds a series from coefficients for exponents start, start+1, ...;
  // leading and trailing zeros are stripped.
  static QSeries from_coeffs(Exp start, std::vector<mpq_class> coeffs, Exp trunc);

  Exp lead() const { return lead_; }
  Exp trunc() const { return trunc_; }
  bool is_zero() const { return c_.empty(); }
  bool is_exact() const { return trunc_ >= kExact; }
  // One past the last stored (nonzero) exponent; equals lead for zero.
  Exp stored_end() const { return lead_ + static_cast<Exp>(c_.size()); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  // Coefficient at exponent n; throws std::out_of_range when n >= trunc.
  mpq_class coeff(Exp n) const;
  // Like coeff but returns a reference (zero for unstored exponents < trunc).
  const mpq_class& at(Exp n) const;
  const mpq_class& leading_coeff() const;

  QSeries truncated(Exp t) const;  // trunc := min(trunc, t)
  QSeries scaled(const mpq_class& c) const;
  QSeries shifted(Exp k) const;  // multiply by q^k
  QSeries negated() const { return scaled(-1); }

  bool all_integral() const;
  // Least common multiple of coefficient denominators.
  mpz_class denominator_lcm() const;

  // Exact equality of lead, trunc and coefficients.
  bool operator==(const QSeries& o) const;
  // Agreement on every exponent below min(trunc, o.trunc).
  bool agrees_with(const QSeries& o) const;

  std::string to_text() const;
  static QSeries from_text(const std::string& text);
  static QSeries read(std::istream& in);
  void write(std::ostream& out) const;

  std::string pretty(int max_terms = 12) const;

 private:
  Exp lead_;
  Exp trunc_;
  std::vector<mpq_class> c_;

  friend class QSeriesBuilder;
  void normalize();
};

QSeries add(const QSeries& a, const QSeries& b);
QSeries sub(const QSeries& a, const QSeries& b);
QSeries mul(const QSeries& a, const QSeries& b);
// Serial rational-arithmetic reference for mul (used by tests and benchmarks).
QSeries mul_reference(const QSeries& a, const QSeries& b);
QSeries invert(const QSeries& a);
QSeries divide(const QSeries& a, const QSeries& b);
QSeries u_op(const QSeries& a, Exp m);
QSeries v_op(const QSeries& a, Exp m);
QSeries d_op(const QSeries& a);
// Integer power (negative exponents invert first).
QSeries pow(const QSeries& a, long e);
// a^r for rational r = num/den, defined when the leading exponent of a is
// divisible by den; the leading coefficient must be 1.
QSeries pow_rational(const QSeries& a, long num, long den);

inline QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b); }
inline QSeries operator-(const QSeries& a, const QSeries& b) { return sub(a, b); }
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator*(const mpq_class& c, const QSeries& a) { return a.scaled(c); }
inline QSeries operator-(const QSeries& a) { return a.negated(); }

// Convenience: series with integer coefficients given as a list starting at
// exponent `start`, truncated at `trunc` (kExact by default).
QSeries series_from_ints(Exp start, const std::vector<long>& coeffs, Exp trunc = kExact);

// Low-level kernels on integer coefficient vectors. `conv_parallel` and
// `conv_serial` compute out[k] = sum_{i+j=k} a[i] b[j] for k < len.
void conv_serial(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                 std::vector<mpz_class>& out, std::size_t len);
void conv_parallel(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                   std::vector<mpz_class>& out, std::size_t len);

}  // namespace zagier
