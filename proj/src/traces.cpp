#include "zagier/traces.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zagier/arith.hpp"

namespace zagier {

RaisedForm raise(const QSeries& f, int s) {
  if (s < 2) throw std::invalid_argument("raise: s must be at least 2");
  RaisedForm rf;
  rf.s = s;
  std::vector<QSeries> parts{f};
  // d_k (g w^j) = (D g) w^j + (j - k) g w^{j+1},  w = (4 pi y)^{-1}
  for (int k = 2 - 2 * s; k <= -2; k += 2) {
    std::vector<QSeries> next(parts.size() + 1, QSeries::zero(f.trunc()));
    for (std::size_t j = 0; j < parts.size(); ++j) {
      next[j] = add(next[j], d_op(parts[j]));
      next[j + 1] = add(next[j + 1], parts[j].scaled(static_cast<long>(j) - k));
    }
    parts = std::move(next);
  }
  const long sign = (s % 2 == 0) ? -1 : 1;  // (-1)^{s-1}
  for (auto& p : parts) p = p.scaled(sign);
  rf.parts = std::move(parts);
  return rf;
}

namespace {

// Evaluates sum_{lead <= n < T} c(n) q^n and estimates the omitted tail.
Complex eval_series(const QSeries& g, const Complex& q, const Complex& qinv, const Real& absq, Exp T, Real& tail) {
  Complex sum{Real(0), Real(0)};
  tail = 0;
  if (g.is_zero() || g.lead() >= T) return sum;
  // q^lead
  Complex qn{Real(1), Real(0)};
  const Exp lead = g.lead();
  if (lead >= 0) {
    for (Exp i = 0; i < lead; ++i) qn = qn * q;
  } else {
    for (Exp i = 0; i < -lead; ++i) qn = qn * qinv;
  }
  const Exp end = std::min(T, g.stored_end());
  for (Exp n = lead; n < end; ++n) {
    const mpq_class& c = g.at(n);
    if (c != 0) sum = sum + to_real(c) * qn;
    qn = qn * q;
  }
  if (g.is_exact() && g.stored_end() <= T) return sum;
  // Geometric tail: the largest coefficient magnitude in the last quarter of
  // the window, grown at the observed rate between the last two quarters.
  const Exp len = T - lead;
  const Exp L = std::max<Exp>(1, len / 4);
  Real M = 0, Mprev = 0;
  for (Exp n = std::max(lead, T - L); n < T; ++n) M = std::max(M, Real(abs(to_real(g.at(n)))));
  for (Exp n = std::max(lead, T - 2 * L); n < T - L; ++n) Mprev = std::max(Mprev, Real(abs(to_real(g.at(n)))));
  Real r = 1;
  if (Mprev > 0 && M > Mprev) r = pow(M / Mprev, Real(1) / Real(L));
  const Real rq = r * absq;
  if (rq >= 1) {
    tail = Real(1e300) * Real(1e300);
    return sum;
  }
  if (M == 0) M = 1;  // no information: assume unit-size coefficients
  tail = M * pow(r, Real(L)) * pow(absq, Real(T)) / (1 - rq);
  return sum;
}

}  // namespace

PointValue eval_point(const RaisedForm& rf, const CMPoint& tau, unsigned bits, Exp terms) {
  if (tau.a <= 0 || tau.delta >= 0) throw std::invalid_argument("eval_point: tau must lie in the upper half plane");
  PrecisionGuard guard(bits);
  Exp avail = kExact;
  for (const auto& p : rf.parts) avail = std::min(avail, p.trunc());
  Exp T = terms;
  if (T == 0) {
    if (avail >= kExact) {
      T = 0;
      for (const auto& p : rf.parts) T = std::max(T, p.stored_end());
    } else {
      T = avail;
    }
  } else if (T > avail) {
    throw InsufficientTruncation("eval_point: insufficient truncation: need order " + std::to_string(T) +
                             ", have " + std::to_string(avail));
  }
  const Real twopi = 2 * pi();
  const Real x = Real(-tau.b) / Real(2 * tau.a);
  const Real y = sqrt(Real(-tau.delta)) / Real(2 * tau.a);
  const Real absq = exp(-twopi * y);
  const Complex q{absq * cos(twopi * x), absq * sin(twopi * x)};
  const Real invabs = 1 / absq;
  const Complex qinv{invabs * cos(twopi * x), -invabs * sin(twopi * x)};
  const Real w = 1 / (2 * twopi * y);  // (4 pi y)^{-1}
  PointValue pv;
  pv.value = Complex{Real(0), Real(0)};
  pv.tail = 0;
  pv.terms = T;
  Real wj = 1;
  for (const auto& part : rf.parts) {
    Real tail;
    Complex v = eval_series(part, q, qinv, absq, T, tail);
    pv.value = pv.value + wj * v;
    pv.tail += wj * tail;
    wj *= w;
  }
  return pv;
}

int s_hat(int s, long D) {
  const long sgn = (s % 2 == 0) ? D : -D;
  return sgn > 0 ? s : 1 - s;
}

void TraceSpec::validate() const {
  if (s < 2) throw std::invalid_argument("trace: s must be at least 2");
  if (!is_fundamental_discriminant(D)) throw std::invalid_argument("trace: D must be a fundamental discriminant");
  if (d * D >= 0) throw std::invalid_argument("trace: d D must be negative");
  const long r = ((d % 4) + 4) % 4;
  if (r != 0 && r != 1) throw std::invalid_argument("trace: d must be 0 or 1 mod 4");
}

Real default_tail_target() { return pow(Real(2), Real(-40)); }

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

TraceResult trace_impl(const QSeries& f, const TraceSpec& spec, unsigned bits, bool starred) {
  spec.validate();
  if (bits < 64) throw std::invalid_argument("trace: precision must be at least 64 bits");
  PrecisionGuard guard(bits);
  TraceResult res;
  res.d = spec.d;
  res.D = spec.D;
  res.precision = bits;
  res.value = 0;
  res.imag = 0;
  res.tail = 0;
  const auto classes = enumerate_classes(spec.d * spec.D, spec.p, spec.D);
  const RaisedForm rf = raise(f, spec.s);
  Complex sum{Real(0), Real(0)};
  for (const auto& hc : classes) {
    if (hc.chi == 0) continue;
    ++res.classes_used;
    PointValue pv = eval_point(rf, hc.tau, bits);
    res.terms = pv.terms;
    const Real wt = Real(hc.chi) / Real(hc.w);
    sum = sum + wt * pv.value;
    res.tail += abs(wt) * pv.tail;
  }
  Real scale = 1;
  if (starred) scale = trace_star_prefactor(spec.d, spec.D, spec.s);
  res.value = scale * sum.re;
  res.imag = scale * sum.im;
  res.tail *= abs(scale);
  if (res.tail > default_tail_target()) {
    throw InsufficientTruncation("trace: insufficient truncation: tail estimate " + to_string(res.tail, 6) + " at order " +
                             std::to_string(res.terms) + " exceeds 2^-40; increase the expansion length");
  }
  const Real tol = Real(1e-10) * (1 + abs(res.value)) + 10 * res.tail;
  if (abs(res.imag) > tol) throw std::runtime_error("trace not real: increase precision/terms");
  res.margin = abs(res.value - round(res.value));
  return res;
}

}  // namespace

Real trace_star_prefactor(long d, long D, int s) {
  const int sh = s_hat(s, D);
  const long e = floor_div(sh - 1, 2);
  const Real sign = (e % 2 == 0) ? 1 : -1;
  return sign * pow(Real(std::labs(d)), Real(-sh) / 2) * pow(Real(std::labs(D)), Real(sh - 1) / 2);
}

TraceResult trace(const QSeries& f, const TraceSpec& spec, unsigned bits) { return trace_impl(f, spec, bits, false); }

TraceResult trace_star(const QSeries& f, const TraceSpec& spec, unsigned bits) {
  return trace_impl(f, spec, bits, true);
}

mpq_class round_to_class(const Real& x, long den, double tol, Real* margin) {
  const Real scaled = x * den;
  const Real r = round(scaled);
  const Real dist = abs(scaled - r) / den;
  if (margin) *margin = dist;
  if (dist >= Real(tol)) {
    throw std::runtime_error("rounding margin violated: " + to_string(x, 25) + " is " + to_string(dist, 6) +
                             " away from the nearest multiple of 1/" + std::to_string(den));
  }
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return mpq_class(n, den);
}

IdentityReport trace_identity_check(const QSeries& f, int s, long p, long m, long D, long Dp, unsigned bits) {
  if (m < 1) throw std::invalid_argument("trace_identity_check: m must be positive");
  if (D * Dp >= 0) throw std::invalid_argument("trace_identity_check: D D' must be negative");
  PrecisionGuard guard(bits);
  IdentityReport rep;
  rep.m = m;
  rep.D = D;
  rep.D_prime = Dp;
  const long dl = m * m * Dp;
  const Real pl = trace_star_prefactor(dl, D, s);
  rep.lhs = f.is_zero() ? Real(0) : trace_star(f, TraceSpec{dl, D, s, p}, bits).value;
  rep.rhs = 0;
  for (long a : divisors(m)) {
    const int mu = moebius(a);
    const int ca = kronecker(Dp, a);
    if (mu == 0 || ca == 0) continue;
    for (long b : divisors(m / a)) {
      const int cb = kronecker(D, b);
      if (cb == 0) continue;
      const long k = m / (a * b);
      const long dr = k * k * D;
      if (f.is_zero()) continue;
      const Real tr = trace_star(f, TraceSpec{dr, Dp, s, p}, bits).value;
      // Tr* = P(d, D) Tr, so each unstarred term is rescaled by P_lhs / P_term.
      rep.rhs += Real(mu * ca * cb) * pl / trace_star_prefactor(dr, Dp, s) * tr;
    }
  }
  rep.discrepancy = abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace zagier
