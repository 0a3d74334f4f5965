// Arbitrary-precision real and complex helpers (MPFR through Boost).
#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace zagier {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision of newly created Real values on this thread
// for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_digits10_;
};

unsigned bits_to_digits10(unsigned bits);

struct Complex {
  Real re, im;
};

Complex operator+(const Complex& x, const Complex& y);
Complex operator-(const Complex& x, const Complex& y);
Complex operator*(const Complex& x, const Complex& y);
Complex operator*(const Real& r, const Complex& x);
Real abs(const Complex& x);

Real to_real(const mpq_class& q);
Real pi();
// Decimal rendering with `digits` significant digits.
std::string to_string(const Real& x, int digits = 30);

}  // namespace zagier
