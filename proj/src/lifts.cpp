#include "zagier/lifts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zagier/arith.hpp"
#include "zagier/linalg.hpp"

namespace zagier {

namespace {

mpq_class qpow(long n, long e) {
  mpz_class b = n;
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
  if (e >= 0) return mpq_class(r);
  mpq_class q(1, 1);
  q /= mpq_class(r);
  return q;
}

void check_lift_args(long p, int s, long D) {
  if (!is_supported_prime(p)) throw std::invalid_argument("lift: unsupported level " + std::to_string(p));
  if (s < 2) throw std::invalid_argument("lift: s must be at least 2");
  if (!is_fundamental_discriminant(D)) {
    throw std::invalid_argument("lift: D = " + std::to_string(D) + " is not a fundamental discriminant");
  }
}

// Throws unless f agrees with the canonical form of its principal part.
void check_sharp_input(const QSeries& f, long p, int s, const PrincipalPart& pp) {
  if (f.trunc() <= 0 || (f.is_exact() && f.stored_end() <= 0)) {
    // Principal part only: the form must still exist (names the missing lead otherwise).
    (void)sharp_form(p, s, pp, 1);
    return;
  }
  if (f.is_exact()) {
    throw std::invalid_argument("lift: input has nonnegative exponents but no truncation order");
  }
  const QSeries F = sharp_form(p, s, pp, f.trunc());
  if (!F.agrees_with(f)) {
    throw std::invalid_argument("lift: input is not the weight " + std::to_string(2 - 2 * s) + " level " +
                                std::to_string(p) + " form with its principal part");
  }
}

// Computes starred traces of the M# form with a fixed principal part,
// lengthening its expansion when the tail policy demands it.
class SharpTracer {
 public:
  SharpTracer(long p, int s, PrincipalPart pp) : p_(p), s_(s), pp_(std::move(pp)) {}

  TraceResult star(long D, long d, unsigned bits) {
    for (;;) {
      if (!have_) {
        F_ = sharp_form(p_, s_, pp_, T_);
        have_ = true;
      }
      try {
        return trace_star(F_, TraceSpec{d, D, s_, p_}, bits);
      } catch (const InsufficientTruncation&) {
        if (T_ >= kMaxTrunc) throw;
        T_ *= 2;
        have_ = false;
      }
    }
  }

 private:
  static constexpr Exp kMaxTrunc = 12800;
  long p_;
  int s_;
  PrincipalPart pp_;
  Exp T_ = 200;
  bool have_ = false;
  QSeries F_;
};

struct Accumulator {
  std::map<std::pair<long, Exp>, mpq_class> terms;  // (level, m) -> multiplier
  void add(long level, Exp m, const mpq_class& c) {
    if (c == 0) return;
    terms[{level, m}] += c;
  }
};

// Sums the accumulated basis elements; fills the decomposition.
QSeries assemble_image(const Accumulator& acc, int weight2, Exp trunc, std::vector<LiftTerm>& dec) {
  std::map<long, Exp> need;
  for (const auto& [key, c] : acc.terms) {
    if (c == 0) continue;
    need[key.first] = std::max(need[key.first], key.second);
  }
  std::map<long, BasisFamily> fams;
  for (const auto& [level, mmax] : need) fams.emplace(level, basis_family(level, weight2, false, mmax, trunc));
  QSeries image = QSeries::zero(trunc);
  for (const auto& [key, c] : acc.terms) {
    if (c == 0) continue;
    dec.push_back(LiftTerm{key.first, weight2, key.second, c});
    image = add(image, fams.at(key.first).element(key.second).scaled(c));
  }
  return image;
}

bool admissible(Exp e, int weight2) {
  const int s = (weight2 - 1) / 2;
  const Exp r = ((e % 4) + 4) % 4;
  return r == 0 || r == ((s % 2 == 0) ? 1 : 3);
}

}  // namespace

PrincipalPart principal_part_of(const QSeries& f) {
  PrincipalPart pp;
  if (f.is_zero()) return pp;
  if (f.trunc() < 0) throw std::invalid_argument("principal part not fully known (truncation < 0)");
  for (Exp n = f.lead(); n < std::min<Exp>(0, f.stored_end()); ++n) {
    const mpq_class& c = f.at(n);
    if (c != 0) pp[-n] = c;
  }
  return pp;
}

QSeries sharp_form(long p, int s, const PrincipalPart& pp, Exp trunc) {
  if (pp.empty()) return QSeries::zero(trunc);
  const Exp mmax = pp.rbegin()->first;
  const BasisFamily fam = integer_basis(p, 4 - 4 * s, false, mmax, trunc);
  // Peel off basis elements from the most negative exponent upwards; the
  // elements' own pole terms feed into the residual.
  std::map<Exp, mpq_class> residual(pp.begin(), pp.end());
  QSeries F = QSeries::zero(trunc);
  while (!residual.empty()) {
    auto it = std::prev(residual.end());
    const Exp m = it->first;
    const mpq_class c = it->second;
    residual.erase(it);
    if (c == 0) continue;
    if (!fam.has_lead(m)) {
      throw std::invalid_argument("no form in M#_" + std::to_string(2 - 2 * s) + "(" + std::to_string(p) +
                                  ") has principal part with leading term q^" + std::to_string(-m));
    }
    const QSeries el = fam.element(m);
    for (Exp e = el.lead() + 1; e < 0; ++e) {
      const mpq_class& a = el.at(e);
      if (a != 0) residual[-e] -= c * a;
    }
    F = add(F, el.scaled(c));
  }
  return F;
}

QSeries zagier_principal_part(const PrincipalPart& pp, long D, int s, int sh) {
  std::map<Exp, mpq_class> out;
  for (const auto& [m, a] : pp) {
    const mpq_class mf = a * qpow(m, s - sh);
    for (long n : divisors(m)) {
      const int c = kronecker(D, n);
      if (c == 0) continue;
      const Exp e = -(m / n) * (m / n) * std::labs(D);
      out[e] += mf * c * qpow(n, sh - 1);
    }
  }
  if (out.empty()) return QSeries::zero();
  std::vector<mpq_class> coeffs(static_cast<std::size_t>(-out.begin()->first), 0);
  const Exp start = out.begin()->first;
  for (const auto& [e, c] : out) coeffs[static_cast<std::size_t>(e - start)] = c;
  return QSeries::from_coeffs(start, coeffs, kExact);
}

QSeries zagier_principal_part(const QSeries& f, long D, int s, int sh) {
  return zagier_principal_part(principal_part_of(f), D, s, sh);
}

LiftResult zagier_lift_neg_weight_image(const QSeries& f, long p, int s, long D, Exp trunc) {
  check_lift_args(p, s, D);
  if (s_hat(s, D) != s) throw std::invalid_argument("lift: this image needs (-1)^s D > 0");
  const PrincipalPart pp = principal_part_of(f);
  check_sharp_input(f, p, s, pp);
  LiftResult res;
  res.level = 4 * p;
  res.weight2 = 3 - 2 * s;
  Accumulator acc;
  for (const auto& [m, a] : pp) {
    for (long n : divisors(m)) {
      const int c = kronecker(D, n);
      if (c == 0) continue;
      const long N = 4 * p / std::gcd(n, p);
      const Exp M = (m / n) * (m / n) * std::labs(D);
      acc.add(N, M, a * c * qpow(n, s - 1));
    }
  }
  res.image = assemble_image(acc, res.weight2, trunc, res.decomposition);
  return res;
}

LiftResult zagier_lift_pos_weight_image(const QSeries& f, long p, int s, long D, Exp trunc, unsigned bits) {
  check_lift_args(p, s, D);
  if (s_hat(s, D) != 1 - s) throw std::invalid_argument("lift: this image needs (-1)^s D < 0");
  const PrincipalPart pp = principal_part_of(f);
  check_sharp_input(f, p, s, pp);
  LiftResult res;
  res.level = 4 * p;
  res.weight2 = 2 * s + 1;
  if (pp.empty()) {
    res.image = QSeries::zero(trunc);
    res.correction = QSeries::zero(trunc);
    return res;
  }
  Accumulator acc;
  for (const auto& [m, a] : pp) {
    const mpq_class am = a * qpow(m, 2 * s - 1);
    for (long n : divisors(m)) {
      const int c = kronecker(D, n);
      if (c == 0) continue;
      const long N = 4 * p / std::gcd(n, p);
      const Exp M = (m / n) * (m / n) * std::labs(D);
      acc.add(N, M, am * c * qpow(n, -s));
    }
  }
  // Admissible positive exponents: the first few pin the correction, the
  // next one is held out.
  const BasisFamily hol = plus_basis(p, res.weight2, false, 0, 2);
  std::vector<Exp> hol_ms;
  for (Exp m : hol.ms())
    if (m <= 0) hol_ms.push_back(m);
  const std::size_t dim = hol_ms.size();
  std::vector<Exp> exps;
  for (Exp e = 1; exps.size() < dim + 8; ++e)
    if (admissible(e, res.weight2)) exps.push_back(e);
  const Exp Tneed = std::max<Exp>(trunc, exps.back() + 1);
  QSeries base = assemble_image(acc, res.weight2, Tneed, res.decomposition);
  const BasisFamily H = plus_basis(p, res.weight2, false, 0, Tneed);
  const long den = integrality_denominator(4 * p, res.weight2);
  SharpTracer tracer(p, s, pp);
  auto image_coeff = [&](Exp e) -> mpq_class {
    Real margin;
    const long d = (D > 0) ? -e : e;
    const TraceResult tr = tracer.star(D, d, bits);
    return round_to_class(tr.value, den, 1e-6, &margin);
  };
  std::vector<mpq_class> targets;
  std::optional<std::vector<mpq_class>> sol;
  std::size_t used = 0;
  for (std::size_t k = dim; k <= exps.size() - 1 && !sol; ++k) {
    while (targets.size() < k) targets.push_back(image_coeff(exps[targets.size()]));
    std::vector<std::vector<mpq_class>> A(k, std::vector<mpq_class>(dim));
    std::vector<mpq_class> b(k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < dim; ++i) A[j][i] = H.element(hol_ms[i]).at(exps[j]);
      b[j] = targets[j] - base.at(exps[j]);
    }
    if (dim == 0) {
      sol = std::vector<mpq_class>{};
    } else {
      sol = solve_unique(A, b);
    }
    used = k;
  }
  if (!sol) throw std::runtime_error("lift: holomorphic correction system is singular");
  QSeries C = QSeries::zero(Tneed);
  for (std::size_t i = 0; i < dim; ++i) C = add(C, H.element(hol_ms[i]).scaled((*sol)[i]));
  res.correction = C.truncated(trunc);
  res.matching_window.assign(exps.begin(), exps.begin() + static_cast<std::ptrdiff_t>(used));
  QSeries image = add(base, C);
  // Held-out cross-check against an independently computed trace.
  res.held_out = exps[used];
  {
    PrecisionGuard guard(bits);
    const long d = (D > 0) ? -res.held_out : res.held_out;
    const TraceResult tr = tracer.star(D, d, bits);
    const Real err = abs(tr.value - to_real(image.at(res.held_out)));
    res.held_out_error = static_cast<double>(err);
    if (err > Real(1e-5)) {
      throw std::runtime_error("lift: held-out coefficient at q^" + std::to_string(res.held_out) +
                               " disagrees with its trace (error " + to_string(err, 6) + ")");
    }
  }
  res.image = image.truncated(trunc);
  return res;
}

LiftResult zagier_lift(const QSeries& f, long p, int s, long D, Exp trunc, unsigned bits) {
  check_lift_args(p, s, D);
  if (s_hat(s, D) == s) return zagier_lift_neg_weight_image(f, p, s, D, trunc);
  return zagier_lift_pos_weight_image(f, p, s, D, trunc, bits);
}

QSeries resum_decomposition(const LiftResult& r) {
  const Exp T = r.image.trunc();
  QSeries sum = r.correction ? r.correction->truncated(T) : QSeries::zero(T);
  std::map<long, Exp> need;
  for (const auto& t : r.decomposition) need[t.level] = std::max(need[t.level], t.m);
  std::map<long, BasisFamily> fams;
  for (const auto& [level, mmax] : need) fams.emplace(level, basis_family(level, r.weight2, false, mmax, T));
  for (const auto& t : r.decomposition) sum = add(sum, fams.at(t.level).element(t.m).scaled(t.multiplier));
  return sum;
}

TraceResult trace_star_sharp(const QSeries& f, long p, int s, long D, long d, unsigned bits) {
  check_lift_args(p, s, D);
  const PrincipalPart pp = principal_part_of(f);
  check_sharp_input(f, p, s, pp);
  SharpTracer tracer(p, s, pp);
  return tracer.star(D, d, bits);
}

QSeries shimura_lift(const QSeries& f, int weight2, long D, long p) {
  if (weight2 % 2 == 0 || weight2 < 3) throw std::invalid_argument("shimura_lift: weight2 must be odd and >= 3");
  if (!is_supported_prime(p)) throw std::invalid_argument("shimura_lift: unsupported level");
  if (!is_fundamental_discriminant(D)) throw std::invalid_argument("shimura_lift: D must be fundamental");
  const int s = (weight2 - 1) / 2;
  if (((s % 2 == 0) ? D : -D) <= 0) throw std::invalid_argument("shimura_lift: needs (-1)^s D > 0");
  if (!f.is_zero() && f.lead() < 1) throw std::invalid_argument("shimura_lift: input is not cuspidal");
  const long absD = std::labs(D);
  if (f.is_exact() && !f.is_zero()) throw std::invalid_argument("shimura_lift: input needs a truncation order");
  const Exp nout = (f.is_zero() ? 64 : isqrt((f.trunc() - 1) / absD)) + 1;
  std::vector<mpq_class> b(static_cast<std::size_t>(nout - 1));
  for (Exp n = 1; n < nout; ++n) {
    mpq_class sum = 0;
    for (long d : divisors(n)) {
      const int c = trivial_char(p, d) * kronecker(D, d);
      if (c == 0) continue;
      const Exp e = (n / d) * (n / d) * absD;
      sum += c * qpow(d, s - 1) * f.at(e);
    }
    b[static_cast<std::size_t>(n - 1)] = sum;
  }
  QSeries image = QSeries::from_coeffs(1, b, nout);
  const Exp S = sturm_bound(4 * s, p);
  if (nout < S) {
    throw std::invalid_argument("shimura_lift: input too short for the Sturm check (need " +
                                std::to_string((S - 1) * (S - 1) * absD + 1) + " terms)");
  }
  if (!in_cusp_forms(p, 2 * s, image.truncated(S))) {
    throw std::runtime_error("shimura_lift: image is not in S_" + std::to_string(2 * s) + "(" + std::to_string(p) +
                             "); the input was not a cuspidal plus-space form");
  }
  return image;
}

DualityReport duality_check_families(const BasisFamily& F, const BasisFamily& G, std::size_t window) {
  DualityReport rep;
  rep.level = F.meta.level;
  rep.weight2_f = F.meta.weight2;
  rep.weight2_g = G.meta.weight2;
  auto fm = F.ms(), gl = G.ms();
  fm.resize(std::min(fm.size(), window));
  gl.resize(std::min(gl.size(), window));
  rep.ms = fm;
  rep.ls = gl;
  if (fm.size() < window || gl.size() < window) {
    rep.ok = false;
    rep.first_failure = "window not covered by the constructed families";
    return rep;
  }
  for (Exp m : fm) {
    for (Exp l : gl) {
      std::ostringstream ctx;
      ctx << "level " << rep.level << ", weights " << F.meta.weight2 << "/2 and " << G.meta.weight2 << "/2, (m, l) = ("
          << m << ", " << l << ")";
      const QSeries fmq = F.element(m), glq = G.element(l);
      if (l >= fmq.trunc() || m >= glq.trunc()) {
        rep.ok = false;
        rep.first_failure = "coefficient outside the known window at " + ctx.str();
        return rep;
      }
      const mpq_class& a = fmq.at(l);
      const mpq_class& b = glq.at(m);
      ++rep.checked;
      if (a != -b && rep.ok) {
        rep.ok = false;
        rep.first_failure = ctx.str() + ": a(m, l) = " + a.get_str() + ", b(l, m) = " + b.get_str();
      }
    }
  }
  return rep;
}

DualityReport duality_check(long level, int weight2, std::size_t window) {
  const int w2g = 4 - weight2;
  Exp M = 4 * static_cast<Exp>(window) + 8;
  for (int attempt = 0; attempt < 6; ++attempt, M *= 2) {
    BasisFamily F, G;
    if (level == 4) {
      F = level4_basis(weight2, M, M + 1);
      G = level4_basis(w2g, M, M + 1);
    } else {
      F = basis_family(level, weight2, false, M, M + 1);
      G = basis_family(level, w2g, true, M, M + 1);
    }
    if (F.ms().size() >= window && G.ms().size() >= window) return duality_check_families(F, G, window);
  }
  DualityReport rep;
  rep.ok = false;
  rep.level = level;
  rep.first_failure = "could not construct a large enough window";
  return rep;
}

ConstantTermReport constant_term_check(const QSeries& f, const QSeries& g, long p) {
  if (!is_supported_prime(p)) throw std::invalid_argument("constant_term_check: unsupported p");
  const QSeries u = u_op(mul(f, g), 4);
  ConstantTermReport rep;
  rep.constant = u.coeff(0);
  rep.vanishes = rep.constant == 0;
  return rep;
}

IntegralityReport integrality_check(long level, int weight2, std::size_t sample) {
  IntegralityReport rep;
  rep.level = level;
  rep.weight2 = weight2;
  rep.allowed_den = integrality_denominator(level, weight2);
  const Exp M = 24;
  Exp T = 64;
  for (;;) {
    std::vector<BasisFamily> fams{basis_family(level, weight2, false, M, T)};
    if (level != 4 && weight2 % 2 != 0) fams.push_back(basis_family(level, weight2, true, M, T));
    std::size_t count = 0;
    for (const auto& fam : fams)
      for (const auto& [m, f] : fam.elements) count += static_cast<std::size_t>(T - f.lead());
    if (count < sample && T < 4096) {
      T *= 2;
      continue;
    }
    rep.coefficients = count;
    for (const auto& fam : fams) {
      const long den = integrality_denominator(level, weight2, fam.meta.vanishes_at_zero);
      for (const auto& [m, f] : fam.elements) {
        for (const auto& c : f.coeffs()) {
          if (c.get_den() == 1) continue;
          if (c.get_den() == 2) ++rep.half_integral;
          if (den % c.get_den() != 0 && rep.ok) {
            rep.ok = false;
            rep.first_failure = std::string(fam.meta.vanishes_at_zero ? "g" : "f") + "-family element m = " +
                                std::to_string(m) + " has coefficient " + c.get_str();
          }
        }
      }
    }
    return rep;
  }
}

}  // namespace zagier
