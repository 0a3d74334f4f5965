#include "zagier/modforms.hpp"

#include <stdexcept>

#include "zagier/arith.hpp"
#include "zagier/spaces.hpp"

namespace zagier {

void FormMeta::validate() const {
  if (level < 1) throw std::invalid_argument("level must be positive");
  if (plus && level % 4 != 0) throw std::invalid_argument("plus space requires 4 | level");
  if (weight2 % 2 != 0 && level % 4 != 0) throw std::invalid_argument("half-integral weight requires 4 | level");
}

long EtaQuotient::weight2() const {
  long s = 0;
  for (auto [d, e] : r) s += e;
  return s;
}

long EtaQuotient::order24() const {
  long s = 0;
  for (auto [d, e] : r) s += d * e;
  return s;
}

Exp EtaQuotient::lead() const {
  long o = order24();
  if (o % 24 != 0) throw std::invalid_argument("non-integral exponents");
  return o / 24;
}

void EtaQuotient::validate() const {
  if (level < 1) throw std::invalid_argument("eta quotient: level must be positive");
  for (auto [d, e] : r) {
    if (d < 1 || level % d != 0) throw std::invalid_argument("eta quotient: delta must divide the level");
  }
  (void)lead();
}

QSeries euler_product_power(long delta, long r, Exp trunc) {
  if (delta < 1) throw std::invalid_argument("euler_product_power: delta must be positive");
  if (trunc <= 0) return QSeries::zero(trunc);
  // Pentagonal number theorem: prod (1 - q^n) = sum_k (-1)^k q^{k(3k-1)/2}.
  std::vector<mpq_class> c(static_cast<std::size_t>(trunc));
  c[0] = 1;
  for (Exp k = 1;; ++k) {
    const Exp e1 = k * (3 * k - 1) / 2 * delta, e2 = k * (3 * k + 1) / 2 * delta;
    if (e1 >= trunc) break;
    const int sign = (k % 2 == 0) ? 1 : -1;
    c[static_cast<std::size_t>(e1)] = sign;
    if (e2 < trunc) c[static_cast<std::size_t>(e2)] = sign;
  }
  QSeries p = QSeries::from_coeffs(0, std::move(c), trunc);
  return pow(p, r);
}

QSeries eta_expand(const EtaQuotient& eq, Exp trunc) {
  eq.validate();
  const Exp L = eq.lead();
  const Exp rel = trunc - L;
  if (rel <= 0) return QSeries::zero(trunc);
  QSeries acc = QSeries::one().truncated(rel);
  for (auto [d, e] : eq.r) {
    if (e == 0) continue;
    acc = mul(acc, euler_product_power(d, e, rel));
  }
  return acc.shifted(L);
}

QSeries theta(Exp trunc) {
  if (trunc < 1) throw std::invalid_argument("theta: trunc must be >= 1");
  std::vector<mpq_class> c(static_cast<std::size_t>(trunc));
  c[0] = 1;
  for (Exp n = 1; n * n < trunc; ++n) c[static_cast<std::size_t>(n * n)] = 2;
  return QSeries::from_coeffs(0, std::move(c), trunc);
}

namespace {

// sum_{d | n} d^{k-1} for 1 <= n < trunc.
std::vector<mpz_class> divisor_sums(int km1, Exp trunc) {
  std::vector<mpz_class> s(static_cast<std::size_t>(std::max<Exp>(trunc, 1)));
  mpz_class dp;
  for (Exp d = 1; d < trunc; ++d) {
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(km1));
    for (Exp m = d; m < trunc; m += d) s[static_cast<std::size_t>(m)] += dp;
  }
  return s;
}

}  // namespace

QSeries eisenstein(int k, Exp trunc) {
  if (k < 2 || k % 2) throw std::invalid_argument("eisenstein: weight must be even and >= 2");
  if (trunc < 1) throw std::invalid_argument("eisenstein: trunc must be >= 1");
  const mpq_class factor = -mpq_class(2 * k) / bernoulli(static_cast<unsigned>(k));
  auto s = divisor_sums(k - 1, trunc);
  std::vector<mpq_class> c(static_cast<std::size_t>(trunc));
  c[0] = 1;
  for (Exp n = 1; n < trunc; ++n) c[static_cast<std::size_t>(n)] = factor * s[static_cast<std::size_t>(n)];
  return QSeries::from_coeffs(0, std::move(c), trunc);
}

QSeries eisenstein_e2(Exp trunc) { return eisenstein(2, trunc); }

bool is_supported_prime(long p) { return p == 3 || p == 5 || p == 7 || p == 13; }

namespace {
void require_supported(long p) {
  if (!is_supported_prime(p)) throw std::invalid_argument("unsupported p " + std::to_string(p) + " (expected 3, 5, 7 or 13)");
}
}  // namespace

QSeries eisenstein_e2_level(long p, Exp trunc) {
  require_supported(p);
  QSeries e2 = eisenstein_e2(trunc);
  QSeries e2p = v_op(eisenstein_e2((trunc + p - 1) / p), p).truncated(trunc);
  return sub(e2p.scaled(p), e2).scaled(mpq_class(1, p - 1));
}

QSeries eisenstein_char(int k, long D1, long D2, long t, Exp trunc) {
  if (k < 1) throw std::invalid_argument("eisenstein_char: weight must be positive");
  if (!is_fundamental_discriminant(D1) || !is_fundamental_discriminant(D2)) {
    throw std::invalid_argument("eisenstein_char: characters must be primitive quadratic");
  }
  if ((D1 * D2 < 0) != (k % 2 == 1)) throw std::invalid_argument("eisenstein_char: parity mismatch");
  if (k == 2 && D1 == 1 && D2 == 1) throw std::invalid_argument("eisenstein_char: E2 is not modular");
  if (t < 1) throw std::invalid_argument("eisenstein_char: t must be positive");
  mpq_class c0 = 0;
  if (D1 == 1) c0 = -generalized_bernoulli(static_cast<unsigned>(k), D2) / mpz_class(2 * k);
  else if (k == 1 && D2 == 1) c0 = -generalized_bernoulli(1, D1) / 2;
  const Exp M = (trunc + t - 1) / t;  // exponents m with t*m < trunc
  std::vector<mpz_class> a(static_cast<std::size_t>(std::max<Exp>(M, 1)));
  std::vector<int> chi1(static_cast<std::size_t>(std::labs(D1)) + 1), chi2(static_cast<std::size_t>(std::labs(D2)) + 1);
  for (long i = 0; i <= std::labs(D1); ++i) chi1[static_cast<std::size_t>(i)] = kronecker(D1, i == 0 ? std::labs(D1) : i);
  for (long i = 0; i <= std::labs(D2); ++i) chi2[static_cast<std::size_t>(i)] = kronecker(D2, i == 0 ? std::labs(D2) : i);
  if (D1 == 1) chi1.assign(2, 1);
  if (D2 == 1) chi2.assign(2, 1);
  const long f1 = std::labs(D1), f2 = std::labs(D2);
  mpz_class np;
  for (Exp n = 1; n < M; ++n) {
    const int c2 = chi2[static_cast<std::size_t>(n % f2)];
    if (c2 == 0) continue;
    mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k - 1));
    if (c2 < 0) np = -np;
    for (Exp q = 1; q * n < M; ++q) {
      const int c1 = chi1[static_cast<std::size_t>(q % f1)];
      if (c1 == 0) continue;
      if (c1 > 0) a[static_cast<std::size_t>(q * n)] += np;
      else a[static_cast<std::size_t>(q * n)] -= np;
    }
  }
  std::vector<mpq_class> c(static_cast<std::size_t>(std::max<Exp>(M, 1)));
  c[0] = c0;
  for (Exp m = 1; m < M; ++m) c[static_cast<std::size_t>(m)] = a[static_cast<std::size_t>(m)];
  QSeries s = QSeries::from_coeffs(0, std::move(c), M);
  return v_op(s, t).truncated(trunc);
}

QSeries delta_form(Exp trunc) {
  EtaQuotient d{1, {{1, 24}}};
  return eta_expand(d, trunc);
}

EtaQuotient hauptmodul_eta(long p) {
  require_supported(p);
  const long e = 24 / (p - 1);
  return EtaQuotient{p, {{1, -e}, {p, e}}};
}

QSeries hauptmodul(long p, Exp trunc) { return eta_expand(hauptmodul_eta(p), trunc); }

QSeries hauptmodul_inverse(long p, Exp trunc) {
  EtaQuotient e = hauptmodul_eta(p);
  for (auto& [d, r] : e.r) r = -r;
  return eta_expand(e, trunc);
}

EtaQuotient ladder_eta(long p) {
  switch (p) {
    case 3: return EtaQuotient{3, {{1, -6}, {3, 18}}};
    case 5: return EtaQuotient{5, {{1, -2}, {5, 10}}};
    case 7: return EtaQuotient{7, {{1, -2}, {7, 14}}};
    case 13: return EtaQuotient{13, {{1, -2}, {13, 26}}};
    default: require_supported(p);
  }
  throw std::logic_error("unreachable");
}

int ladder_weight2(long p) { return static_cast<int>(ladder_eta(p).weight2()); }

NamedForm parse_named_form(const std::string& tag) {
  if (tag == "C63") return NamedForm::C63;
  if (tag == "C45") return NamedForm::C45;
  if (tag == "C67") return NamedForm::C67;
  if (tag == "C613") return NamedForm::C613;
  if (tag == "H45") return NamedForm::H45;
  if (tag == "H67") return NamedForm::H67;
  throw std::invalid_argument("unknown named form '" + tag + "'");
}

QSeries named_form(NamedForm tag, Exp trunc) {
  switch (tag) {
    case NamedForm::C63: return eta_expand({3, {{1, 6}, {3, 6}}}, trunc);
    case NamedForm::C45: return eta_expand({5, {{1, 4}, {5, 4}}}, trunc);
    case NamedForm::C67: return eta_expand({7, {{1, 2}, {7, 10}}}, trunc);
    case NamedForm::H45: return eta_expand({5, {{1, -2}, {5, 10}}}, trunc);
    case NamedForm::H67: return eta_expand({7, {{1, -2}, {7, 14}}}, trunc);
    case NamedForm::C613: {
      for (const auto& f : cusp_form_basis(13, 6, trunc)) {
        if (f.lead() == 3) return f;
      }
      throw std::runtime_error("S_6(13) has no element with leading exponent 3");
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace zagier
