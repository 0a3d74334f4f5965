#include "zagier/numeric.hpp"

#include <cmath>
#include <sstream>

namespace zagier {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_digits10_); }

Complex operator+(const Complex& x, const Complex& y) { return {x.re + y.re, x.im + y.im}; }
Complex operator-(const Complex& x, const Complex& y) { return {x.re - y.re, x.im - y.im}; }
Complex operator*(const Complex& x, const Complex& y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
Complex operator*(const Real& r, const Complex& x) { return {r * x.re, r * x.im}; }
Real abs(const Complex& x) { return sqrt(x.re * x.re + x.im * x.im); }

Real to_real(const mpq_class& q) {
  Real num, den;
  mpfr_set_z(num.backend().data(), q.get_num().get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(den.backend().data(), q.get_den().get_mpz_t(), MPFR_RNDN);
  return num / den;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

std::string to_string(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace zagier
