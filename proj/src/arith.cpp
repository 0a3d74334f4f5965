#include "zagier/arith.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace zagier {

int kronecker(long D, long n) {
  mpz_class d(D);
  return mpz_kronecker_si(d.get_mpz_t(), n);
}

bool is_discriminant(long D) {
  long r = ((D % 4) + 4) % 4;
  return D != 0 && (r == 0 || r == 1);
}

bool is_fundamental_discriminant(long D) {
  if (D == 1) return true;
  if (D == 0) return false;
  long r = ((D % 4) + 4) % 4;
  if (r == 1) return is_squarefree(std::labs(D));
  if (r == 0) {
    long m = D / 4;
    long rm = ((m % 4) + 4) % 4;
    return (rm == 2 || rm == 3) && is_squarefree(std::labs(m));
  }
  return false;
}

long fundamental_part(long D) {
  if (D == 0) throw std::invalid_argument("fundamental_part(0)");
  long sign = D < 0 ? -1 : 1;
  long core = 1;
  for (auto [p, e] : factorize(std::labs(D)))
    if (e % 2 == 1) core *= p;
  core *= sign;
  long r = ((core % 4) + 4) % 4;
  return r == 1 ? core : 4 * core;
}

int trivial_char(long p, long n) { return (n % p == 0) ? 0 : 1; }

std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  std::vector<std::pair<long, int>> f;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

bool is_squarefree(long n) {
  if (n < 1) return false;
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

int moebius(long n) {
  if (n < 1) throw std::invalid_argument("moebius: n must be >= 1");
  int m = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    m = -m;
  }
  return m;
}

std::vector<long> divisors(long n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be >= 1");
  std::vector<long> lo, hi;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

long ipow(long b, unsigned e) {
  long r = 1;
  while (e--) {
    if (__builtin_mul_overflow(r, b, &r)) throw std::overflow_error("ipow overflow");
  }
  return r;
}

mpz_class sigma_mpz(long n, int k) {
  mpz_class s = 0, t;
  for (long d : divisors(n)) {
    mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    s += t;
  }
  return s;
}

long sigma(long n, int k) {
  mpz_class s = sigma_mpz(n, k);
  if (!s.fits_slong_p()) throw std::overflow_error("sigma overflow");
  return s.get_si();
}

long level_of(long n, long p) {
  if (n < 1) throw std::invalid_argument("level_of: n must be >= 1");
  return 4 * p / std::gcd(n, p);
}

long isqrt(long n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(long n) {
  if (n < 0) return false;
  long r = isqrt(n);
  return r * r == n;
}

long gamma0_index(long N) {
  long idx = N;
  for (auto [p, e] : factorize(N)) idx = idx / p * (p + 1);
  return idx;
}

namespace {

long euler_phi(long n) {
  long r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

struct Gamma0Data {
  long mu, e2, e3, c;
  // 12 * genus, kept integral
  long twelve_g;
};

Gamma0Data gamma0_data(long N) {
  Gamma0Data d{};
  d.mu = gamma0_index(N);
  auto f = factorize(N);
  d.e2 = 1;
  d.e3 = 1;
  for (auto [p, e] : f) {
    if (p == 2 && e >= 2) d.e2 = 0;
    if (p == 3 && e >= 2) d.e3 = 0;
    d.e2 *= 1 + kronecker(-4, p);
    d.e3 *= 1 + kronecker(-3, p);
  }
  d.c = 0;
  for (long dd : divisors(N)) d.c += euler_phi(std::gcd(dd, N / dd));
  d.twelve_g = 12 + d.mu - 3 * d.e2 - 4 * d.e3 - 6 * d.c;
  return d;
}

}  // namespace

long dim_cusp_forms(long N, long k) {
  if (k % 2 != 0) throw std::invalid_argument("dim_cusp_forms: odd weight");
  if (k <= 0) return 0;
  auto d = gamma0_data(N);
  long g = d.twelve_g / 12;
  if (k == 2) return g;
  return (k - 1) * (g - 1) + (k / 2 - 1) * d.c + d.e2 * (k / 4) + d.e3 * (k / 3);
}

long dim_modular_forms(long N, long k) {
  if (k % 2 != 0) throw std::invalid_argument("dim_modular_forms: odd weight");
  if (k < 0) return 0;
  if (k == 0) return 1;
  auto d = gamma0_data(N);
  if (k == 2) return d.twelve_g / 12 + d.c - 1;
  return dim_cusp_forms(N, k) + d.c;
}

mpq_class bernoulli(unsigned k) {
  static std::mutex mu;
  static std::vector<mpq_class> cache{mpq_class(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= k) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    const unsigned m = static_cast<unsigned>(cache.size());
    mpq_class s = 0;
    mpz_class binom = 1;  // C(m+1, 0)
    for (unsigned j = 0; j < m; ++j) {
      s += binom * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-s / mpz_class(m + 1));
  }
  return cache[k];
}

mpq_class generalized_bernoulli(unsigned k, long D) {
  if (D == 1) return bernoulli(k);
  const long f = std::labs(D);
  mpq_class s = 0;
  for (long a = 1; a <= f; ++a) {
    int chi = kronecker(D, a);
    if (chi == 0) continue;
    // B_k(a/f) = sum_j C(k,j) B_j (a/f)^{k-j}
    mpq_class x(a, f);
    x.canonicalize();
    mpq_class bk = 0, xp = 1;
    mpz_class binom = 1;
    std::vector<mpq_class> xpow(k + 1);
    xpow[0] = 1;
    for (unsigned i = 1; i <= k; ++i) xpow[i] = xpow[i - 1] * x;
    for (unsigned j = 0; j <= k; ++j) {
      bk += binom * bernoulli(j) * xpow[k - j];
      binom = binom * (k - j) / (j + 1);
    }
    s += chi * bk;
  }
  mpz_class fk;
  mpz_ui_pow_ui(fk.get_mpz_t(), static_cast<unsigned long>(f), k - 1);
  return s * fk;
}

}  // namespace zagier
