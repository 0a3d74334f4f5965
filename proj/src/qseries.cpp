#include "zagier/qseries.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace zagier {

Exp exp_add(Exp a, Exp b) {
  if (a >= kExact || b >= kExact) return kExact;
  Exp r;
  if (__builtin_add_overflow(a, b, &r) || r <= -kExact) {
    throw std::overflow_error("exponent overflow");
  }
  return std::min(r, kExact);
}

Exp exp_mul(Exp a, Exp b) {
  if (a >= kExact) {
    if (b <= 0) throw std::overflow_error("exponent overflow");
    return kExact;
  }
  Exp r;
  if (__builtin_mul_overflow(a, b, &r) || r <= -kExact) {
    throw std::overflow_error("exponent overflow");
  }
  return std::min(r, kExact);
}

namespace {

const mpq_class& zero_q() {
  static const mpq_class z(0);
  return z;
}

Exp floor_div(Exp a, Exp m) {
  Exp q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

Exp ceil_div(Exp a, Exp m) { return -floor_div(-a, m); }

// Splits a series into integer numerators over a common denominator.
mpz_class integerize(const std::vector<mpq_class>& c, std::vector<mpz_class>& out) {
  mpz_class den = 1;
  for (const auto& x : c) {
    if (x.get_den() != 1) den = lcm(den, mpz_class(x.get_den()));
  }
  out.resize(c.size());
  if (den == 1) {
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].get_num();
  } else {
    for (std::size_t i = 0; i < c.size(); ++i) {
      mpz_class f = den / c[i].get_den();
      out[i] = c[i].get_num() * f;
    }
  }
  return den;
}

}  // namespace

QSeries::QSeries() : lead_(kExact), trunc_(kExact) {}

QSeries QSeries::zero(Exp trunc) {
  QSeries z;
  z.lead_ = trunc;
  z.trunc_ = trunc;
  return z;
}

QSeries QSeries::one() { return monomial(0, 1); }

QSeries QSeries::constant(const mpq_class& c) { return monomial(0, c); }

QSeries QSeries::monomial(Exp e, const mpq_class& c) {
  QSeries s;
  if (c == 0) return s;
  s.lead_ = e;
  s.trunc_ = kExact;
  s.c_.push_back(c);
  return s;
}

QSeries QSeries::from_coeffs(Exp start, std::vector<mpq_class> coeffs, Exp trunc) {
  QSeries s;
  s.lead_ = start;
  s.trunc_ = trunc;
  s.c_ = std::move(coeffs);
  for (auto& x : s.c_) x.canonicalize();
  s.normalize();
  return s;
}

void QSeries::normalize() {
  if (trunc_ > kExact) trunc_ = kExact;
  // drop anything at or beyond trunc
  if (lead_ >= trunc_) {
    c_.clear();
  } else if (static_cast<Exp>(c_.size()) > trunc_ - lead_) {
    c_.resize(static_cast<std::size_t>(trunc_ - lead_));
  }
  std::size_t first = 0;
  while (first < c_.size() && c_[first] == 0) ++first;
  if (first == c_.size()) {
    c_.clear();
    lead_ = trunc_;
    return;
  }
  if (first > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(first));
    lead_ += static_cast<Exp>(first);
  }
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class QSeries::coeff(Exp n) const { return at(n); }

const mpq_class& QSeries::at(Exp n) const {
  if (n >= trunc_) {
    throw std::out_of_range("coefficient at exponent " + std::to_string(n) +
                            " is beyond the truncation order " + std::to_string(trunc_));
  }
  if (n < lead_ || n >= stored_end()) return zero_q();
  return c_[static_cast<std::size_t>(n - lead_)];
}

const mpq_class& QSeries::leading_coeff() const {
  if (c_.empty()) throw std::domain_error("zero series has no leading coefficient");
  return c_.front();
}

QSeries QSeries::truncated(Exp t) const {
  if (t >= trunc_) return *this;
  QSeries s = *this;
  s.trunc_ = t;
  s.normalize();
  if (s.c_.empty()) s.lead_ = s.trunc_;
  return s;
}

QSeries QSeries::scaled(const mpq_class& c) const {
  if (c == 0) return zero(trunc_);
  QSeries s = *this;
  if (c == 1) return s;
  for (auto& x : s.c_) x *= c;
  return s;
}

QSeries QSeries::shifted(Exp k) const {
  QSeries s = *this;
  s.lead_ = exp_add(lead_, k);
  s.trunc_ = exp_add(trunc_, k);
  if (c_.empty()) s.lead_ = s.trunc_;
  return s;
}

bool QSeries::all_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x.get_den() == 1; });
}

mpz_class QSeries::denominator_lcm() const {
  mpz_class d = 1;
  for (const auto& x : c_) d = lcm(d, mpz_class(x.get_den()));
  return d;
}

bool QSeries::operator==(const QSeries& o) const {
  return lead_ == o.lead_ && trunc_ == o.trunc_ && c_ == o.c_;
}

bool QSeries::agrees_with(const QSeries& o) const {
  Exp t = std::min(trunc_, o.trunc_);
  Exp lo = std::min(lead_, o.lead_);
  Exp hi = std::min(t, std::max(stored_end(), o.stored_end()));
  for (Exp n = lo; n < hi; ++n) {
    if (at(n) != o.at(n)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format

void QSeries::write(std::ostream& out) const {
  Exp t = is_exact() ? (c_.empty() ? 0 : stored_end()) : trunc_;
  Exp l = c_.empty() ? t : lead_;
  out << "#qseries lead=" << l << " trunc=" << t << "\n";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    out << (lead_ + static_cast<Exp>(i)) << " " << c_[i].get_num().get_str() << "/"
        << c_[i].get_den().get_str() << "\n";
  }
}

std::string QSeries::to_text() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

namespace {

Exp parse_exp(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<Exp>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("qseries text: bad " + what + " '" + s + "'");
  }
}

bool parse_header_field(const std::string& tok, const std::string& key, Exp& out) {
  if (tok.rfind(key + "=", 0) != 0) return false;
  out = parse_exp(tok.substr(key.size() + 1), key);
  return true;
}

}  // namespace

QSeries QSeries::read(std::istream& in) {
  std::string line;
  bool have_header = false;
  Exp lead = 0, trunc = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("#qseries", 0) == 0) {
      std::istringstream hs(line.substr(8));
      std::string tok;
      bool got_lead = false, got_trunc = false;
      while (hs >> tok) {
        if (parse_header_field(tok, "lead", lead)) got_lead = true;
        else if (parse_header_field(tok, "trunc", trunc)) got_trunc = true;
        else throw std::invalid_argument("qseries text: unknown header field '" + tok + "'");
      }
      if (!got_lead || !got_trunc) throw std::invalid_argument("qseries text: incomplete header");
      have_header = true;
      break;
    }
    if (line[0] == '#') continue;  // other metadata lines
    throw std::invalid_argument("qseries text: expected '#qseries' header");
  }
  if (!have_header) throw std::invalid_argument("qseries text: missing '#qseries' header");
  if (trunc < lead) throw std::invalid_argument("qseries text: trunc < lead");
  if (trunc >= kExact || lead <= -kExact) throw std::invalid_argument("qseries text: exponent out of range");

  std::vector<mpq_class> c;
  Exp prev = lead - 1;
  Exp first_nonzero = trunc;
  while (in.peek() != EOF && in.peek() != '#') {
    if (!std::getline(in, line)) break;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string es, qs, extra;
    if (!(ls >> es >> qs) || (ls >> extra)) {
      throw std::invalid_argument("qseries text: malformed line '" + line + "'");
    }
    Exp e = parse_exp(es, "exponent");
    if (e <= prev) throw std::invalid_argument("qseries text: exponents not strictly increasing");
    if (e < lead || e >= trunc) throw std::invalid_argument("qseries text: exponent outside [lead, trunc)");
    auto slash = qs.find('/');
    if (slash == std::string::npos) throw std::invalid_argument("qseries text: coefficient must be num/den");
    mpz_class num, den;
    if (num.set_str(qs.substr(0, slash), 10) != 0 || den.set_str(qs.substr(slash + 1), 10) != 0) {
      throw std::invalid_argument("qseries text: bad rational '" + qs + "'");
    }
    if (den < 1) throw std::invalid_argument("qseries text: denominator must be >= 1");
    if (gcd(num, den) != 1 && num != 0) throw std::invalid_argument("qseries text: rational not reduced");
    if (num == 0 && den != 1) throw std::invalid_argument("qseries text: rational not reduced");
    c.resize(static_cast<std::size_t>(e - lead + 1));
    c.back() = mpq_class(num, den);
    if (num != 0 && first_nonzero == trunc) first_nonzero = e;
    prev = e;
  }
  if (first_nonzero != trunc && first_nonzero != lead) {
    throw std::invalid_argument("qseries text: header lead does not match first nonzero coefficient");
  }
  if (first_nonzero == trunc && lead != trunc) {
    throw std::invalid_argument("qseries text: zero series must have lead == trunc");
  }
  return from_coeffs(lead, std::move(c), trunc);
}

QSeries QSeries::from_text(const std::string& text) {
  std::istringstream is(text);
  return read(is);
}

std::string QSeries::pretty(int max_terms) const {
  std::ostringstream os;
  int shown = 0;
  bool first = true;
  for (std::size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
    const mpq_class& x = c_[i];
    if (x == 0) continue;
    Exp e = lead_ + static_cast<Exp>(i);
    mpq_class ax = abs(x);
    if (first) {
      if (x < 0) os << "-";
    } else {
      os << (x < 0 ? " - " : " + ");
    }
    bool unit = (ax == 1);
    if (!unit || e == 0) os << ax.get_str();
    if (e != 0) {
      os << "q";
      if (e != 1) os << "^" << e;
    }
    first = false;
    ++shown;
  }
  if (first) os << "0";
  if (!is_exact()) os << " + O(q^" << trunc_ << ")";
  else if (shown < static_cast<int>(std::count_if(c_.begin(), c_.end(), [](const mpq_class& v) { return v != 0; })))
    os << " + ...";
  return os.str();
}

// ---------------------------------------------------------------------------
// Ring operations

QSeries add(const QSeries& a, const QSeries& b) {
  Exp t = std::min(a.trunc(), b.trunc());
  if (a.is_zero()) return b.truncated(t);
  if (b.is_zero()) return a.truncated(t);
  Exp lo = std::min(a.lead(), b.lead());
  Exp hi = std::min(t, std::max(a.stored_end(), b.stored_end()));
  if (hi <= lo) return QSeries::zero(t);
  std::vector<mpq_class> c(static_cast<std::size_t>(hi - lo));
  for (Exp n = std::max(lo, a.lead()); n < std::min(hi, a.stored_end()); ++n) {
    c[static_cast<std::size_t>(n - lo)] = a.coeffs()[static_cast<std::size_t>(n - a.lead())];
  }
  for (Exp n = std::max(lo, b.lead()); n < std::min(hi, b.stored_end()); ++n) {
    c[static_cast<std::size_t>(n - lo)] += b.coeffs()[static_cast<std::size_t>(n - b.lead())];
  }
  return QSeries::from_coeffs(lo, std::move(c), t);
}

QSeries sub(const QSeries& a, const QSeries& b) { return add(a, b.negated()); }

void conv_serial(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                 std::vector<mpz_class>& out, std::size_t len) {
  out.assign(len, 0);
  const std::size_t na = a.size(), nb = b.size();
  for (std::size_t i = 0; i < na && i < len; ++i) {
    if (sgn(a[i]) == 0) continue;
    const std::size_t jmax = std::min(nb, len - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
}

void conv_parallel(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                   std::vector<mpz_class>& out, std::size_t len) {
  out.assign(len, 0);
  const long na = static_cast<long>(a.size()), nb = static_cast<long>(b.size());
  const long n = static_cast<long>(len);
  if (n * std::min(na, nb) < 20000) {
    conv_serial(a, b, out, len);
    return;
  }
#pragma omp parallel for schedule(dynamic, 16)
  for (long k = 0; k < n; ++k) {
    mpz_ptr acc = out[static_cast<std::size_t>(k)].get_mpz_t();
    const long ilo = std::max(0L, k - nb + 1), ihi = std::min(k, na - 1);
    for (long i = ilo; i <= ihi; ++i) {
      mpz_srcptr ai = a[static_cast<std::size_t>(i)].get_mpz_t();
      if (mpz_sgn(ai) == 0) continue;
      mpz_addmul(acc, ai, b[static_cast<std::size_t>(k - i)].get_mpz_t());
    }
  }
}

namespace {

struct ProductShape {
  Exp start;
  Exp trunc;
  std::size_t len;
};

ProductShape product_shape(const QSeries& a, const QSeries& b) {
  ProductShape s{};
  s.trunc = std::min(exp_add(a.lead(), b.trunc()), exp_add(b.lead(), a.trunc()));
  if (a.is_zero() || b.is_zero()) return s;
  s.start = exp_add(a.lead(), b.lead());
  const Exp full = static_cast<Exp>(a.coeffs().size() + b.coeffs().size() - 1);
  const Exp window = s.trunc - s.start;
  s.len = static_cast<std::size_t>(std::max<Exp>(0, std::min(full, window)));
  return s;
}

}  // namespace

QSeries mul(const QSeries& a, const QSeries& b) {
  ProductShape sh = product_shape(a, b);
  if (a.is_zero() || b.is_zero() || sh.len == 0) return QSeries::zero(sh.trunc);
  std::vector<mpz_class> ia, ib, out;
  const std::size_t la = std::min(a.coeffs().size(), sh.len);
  const std::size_t lb = std::min(b.coeffs().size(), sh.len);
  std::vector<mpq_class> ca(a.coeffs().begin(), a.coeffs().begin() + static_cast<std::ptrdiff_t>(la));
  std::vector<mpq_class> cb(b.coeffs().begin(), b.coeffs().begin() + static_cast<std::ptrdiff_t>(lb));
  mpz_class da = integerize(ca, ia);
  mpz_class db = integerize(cb, ib);
  conv_parallel(ia, ib, out, sh.len);
  mpz_class den = da * db;
  std::vector<mpq_class> c(sh.len);
  for (std::size_t k = 0; k < sh.len; ++k) {
    if (den == 1) {
      c[k] = mpq_class(out[k]);
    } else {
      c[k] = mpq_class(out[k], den);
      c[k].canonicalize();
    }
  }
  return QSeries::from_coeffs(sh.start, std::move(c), sh.trunc);
}

QSeries mul_reference(const QSeries& a, const QSeries& b) {
  ProductShape sh = product_shape(a, b);
  if (a.is_zero() || b.is_zero() || sh.len == 0) return QSeries::zero(sh.trunc);
  std::vector<mpq_class> c(sh.len);
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size() && i < sh.len; ++i) {
    for (std::size_t j = 0; j < cb.size() && i + j < sh.len; ++j) c[i + j] += ca[i] * cb[j];
  }
  return QSeries::from_coeffs(sh.start, std::move(c), sh.trunc);
}

QSeries invert(const QSeries& a) {
  if (a.is_zero()) throw std::domain_error("not invertible as Laurent series");
  const Exp L = a.lead();
  if (a.is_exact()) {
    if (a.coeffs().size() == 1) return QSeries::monomial(-L, 1 / a.leading_coeff());
    throw std::domain_error("exact series with several terms has an infinite inverse; truncate it first");
  }
  const Exp R = a.trunc() - L;  // relative precision
  const auto n = static_cast<std::size_t>(R);
  const auto& ca = a.coeffs();
  const std::size_t na = std::min(ca.size(), n);
  std::vector<mpq_class> out(n);
  const mpq_class& a0 = ca[0];
  const bool integral_unit = a.all_integral() && (a0 == 1 || a0 == -1);
  if (integral_unit) {
    std::vector<mpz_class> A(na), B(n);
    for (std::size_t i = 0; i < na; ++i) A[i] = ca[i].get_num();
    const int s0 = sgn(A[0]);
    B[0] = s0;
    mpz_class acc;
    for (std::size_t k = 1; k < n; ++k) {
      acc = 0;
      const std::size_t imax = std::min(k, na - 1);
      for (std::size_t i = 1; i <= imax; ++i) {
        if (sgn(A[i]) == 0) continue;
        mpz_addmul(acc.get_mpz_t(), A[i].get_mpz_t(), B[k - i].get_mpz_t());
      }
      B[k] = (s0 > 0) ? mpz_class(-acc) : acc;
    }
    for (std::size_t k = 0; k < n; ++k) out[k] = mpq_class(B[k]);
  } else {
    mpq_class inv0 = 1 / a0;
    out[0] = inv0;
    mpq_class acc;
    for (std::size_t k = 1; k < n; ++k) {
      acc = 0;
      const std::size_t imax = std::min(k, na - 1);
      for (std::size_t i = 1; i <= imax; ++i) {
        if (ca[i] == 0) continue;
        acc += ca[i] * out[k - i];
      }
      out[k] = -acc * inv0;
    }
  }
  return QSeries::from_coeffs(-L, std::move(out), -L + R);
}

QSeries divide(const QSeries& a, const QSeries& b) {
  if (b.is_exact() && b.coeffs().size() == 1) {
    return a.shifted(-b.lead()).scaled(1 / b.leading_coeff());
  }
  return mul(a, invert(b));
}

QSeries u_op(const QSeries& a, Exp m) {
  if (m < 1) throw std::invalid_argument("u_op: m must be >= 1");
  if (m == 1) return a;
  const Exp t = a.is_exact() ? kExact : ceil_div(a.trunc(), m);
  if (a.is_zero()) return QSeries::zero(t);
  const Exp lo = ceil_div(a.lead(), m);
  const Exp hi = std::min(t, ceil_div(a.stored_end(), m));
  std::vector<mpq_class> c;
  if (hi > lo) {
    c.resize(static_cast<std::size_t>(hi - lo));
    for (Exp n = lo; n < hi; ++n) c[static_cast<std::size_t>(n - lo)] = a.at(n * m);
  }
  return QSeries::from_coeffs(lo, std::move(c), t);
}

QSeries v_op(const QSeries& a, Exp m) {
  if (m < 1) throw std::invalid_argument("v_op: m must be >= 1");
  if (m == 1) return a;
  const Exp t = exp_mul(a.trunc(), m);
  if (a.is_zero()) return QSeries::zero(t);
  const Exp lo = exp_mul(a.lead(), m);
  const auto& ca = a.coeffs();
  std::vector<mpq_class> c((ca.size() - 1) * static_cast<std::size_t>(m) + 1);
  for (std::size_t i = 0; i < ca.size(); ++i) c[i * static_cast<std::size_t>(m)] = ca[i];
  return QSeries::from_coeffs(lo, std::move(c), t);
}

QSeries d_op(const QSeries& a) {
  if (a.is_zero()) return a;
  std::vector<mpq_class> c(a.coeffs());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= mpz_class(static_cast<long>(a.lead() + static_cast<Exp>(i)));
  return QSeries::from_coeffs(a.lead(), std::move(c), a.trunc());
}

namespace {

// Power of a series g = f^r with f_0 != 0, via the recurrence
//   n f_0 g_n = sum_{k=1}^{n} (k (r+1) - n) f_k g_{n-k},  r = num/den,
// producing `len` coefficients. Uses integer arithmetic when possible.
std::vector<mpq_class> power_coeffs(const std::vector<mpq_class>& f, long num, long den,
                                    std::size_t len, const mpq_class& g0) {
  std::vector<mpq_class> g(len);
  if (len == 0) return g;
  g[0] = g0;
  const std::size_t nf = f.size();
  std::vector<std::size_t> nz;
  for (std::size_t k = 1; k < nf; ++k)
    if (f[k] != 0) nz.push_back(k);
  bool integral = (den == 1) && (f[0] == 1);
  for (const auto& x : f) integral = integral && x.get_den() == 1;
  if (integral && g0.get_den() == 1) {
    std::vector<mpz_class> F(nf), G(len);
    for (std::size_t k = 0; k < nf; ++k) F[k] = f[k].get_num();
    G[0] = g0.get_num();
    mpz_class acc, w;
    for (std::size_t n = 1; n < len; ++n) {
      acc = 0;
      for (std::size_t k : nz) {
        if (k > n) break;
        w = static_cast<long>(k) * (num + 1) - static_cast<long>(n);
        w *= F[k];
        mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), G[n - k].get_mpz_t());
      }
      mpz_divexact_ui(G[n].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n));
    }
    for (std::size_t n = 0; n < len; ++n) g[n] = mpq_class(G[n]);
    return g;
  }
  const mpq_class inv_f0 = 1 / f[0];
  mpq_class acc;
  for (std::size_t n = 1; n < len; ++n) {
    acc = 0;
    for (std::size_t k : nz) {
      if (k > n) break;
      mpq_class w(static_cast<long>(k) * (num + den) - static_cast<long>(n) * den, den);
      acc += w * f[k] * g[n - k];
    }
    g[n] = acc * inv_f0 / static_cast<long>(n);
  }
  return g;
}

}  // namespace

QSeries pow(const QSeries& a, long e) {
  if (e == 0) {
    if (a.is_zero()) throw std::domain_error("0^0");
    return QSeries::one();
  }
  if (a.is_zero()) {
    if (e < 0) throw std::domain_error("not invertible as Laurent series");
    return QSeries::zero(exp_mul(a.trunc(), e));
  }
  const Exp L = a.lead();
  if (a.is_exact() && a.coeffs().size() == 1) {
    mpq_class c = 1;
    mpq_class base = a.leading_coeff();
    if (e < 0) base = 1 / base;
    for (long i = 0; i < std::labs(e); ++i) c *= base;
    return QSeries::monomial(exp_mul(L, e), c);
  }
  if (a.is_exact() && e < 0) {
    throw std::domain_error("exact series with several terms has an infinite inverse; truncate it first");
  }
  mpq_class g0 = 1;
  {
    mpq_class base = a.leading_coeff();
    if (e < 0) base = 1 / base;
    for (long i = 0; i < std::labs(e); ++i) g0 *= base;
  }
  std::size_t len;
  Exp t;
  if (a.is_exact()) {
    len = (a.coeffs().size() - 1) * static_cast<std::size_t>(e) + 1;
    t = kExact;
  } else {
    const Exp R = a.trunc() - L;
    len = static_cast<std::size_t>(R);
    t = exp_add(exp_mul(L, e), R);
  }
  auto g = power_coeffs(a.coeffs(), e, 1, len, g0);
  return QSeries::from_coeffs(exp_mul(L, e), std::move(g), t);
}

QSeries pow_rational(const QSeries& a, long num, long den) {
  if (den <= 0) throw std::invalid_argument("pow_rational: den must be positive");
  long g = std::gcd(num, den);
  num /= g;
  den /= g;
  if (den == 1) return pow(a, num);
  if (a.is_zero()) throw std::domain_error("pow_rational of zero");
  if (a.leading_coeff() != 1) throw std::domain_error("pow_rational needs leading coefficient 1");
  if (a.lead() % den != 0) throw std::domain_error("pow_rational: leading exponent not divisible");
  if (a.is_exact() && a.coeffs().size() > 1) {
    throw std::domain_error("exact series has an infinite rational power; truncate it first");
  }
  const Exp L = a.lead();
  const Exp R = a.is_exact() ? 1 : a.trunc() - L;
  auto c = power_coeffs(a.coeffs(), num, den, static_cast<std::size_t>(R), mpq_class(1));
  const Exp lead = L / den * num;
  return QSeries::from_coeffs(lead, std::move(c), a.is_exact() ? kExact : lead + R);
}

QSeries series_from_ints(Exp start, const std::vector<long>& coeffs, Exp trunc) {
  std::vector<mpq_class> c(coeffs.begin(), coeffs.end());
  return QSeries::from_coeffs(start, std::move(c), trunc);
}

}  // namespace zagier
