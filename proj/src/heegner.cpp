#include "zagier/heegner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "zagier/arith.hpp"

namespace zagier {

std::string QuadForm::str() const {
  return "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "]";
}

QuadForm act(const QuadForm& Q, const Mat2& M) {
  const long al = M[0], be = M[1], ga = M[2], de = M[3];
  QuadForm R;
  R.a = Q.a * al * al + Q.b * al * ga + Q.c * ga * ga;
  R.c = Q.a * be * be + Q.b * be * de + Q.c * de * de;
  R.b = 2 * Q.a * al * be + Q.b * (al * de + be * ga) + 2 * Q.c * ga * de;
  return R;
}

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Translate b into (-a, a] by Q o [[1, k], [0, 1]].
QuadForm normalize_b(const QuadForm& Q) {
  // b + 2ak in (-a, a]  <=>  k = floor((a - b) / (2a))
  const long k = floor_div(Q.a - Q.b, 2 * Q.a);
  return act(Q, Mat2{1, k, 0, 1});
}

long value(const QuadForm& Q, long x, long y) { return Q.a * x * x + Q.b * x * y + Q.c * y * y; }

long mod(long x, long n) { return ((x % n) + n) % n; }

// Canonical representative of (c : d) in P^1(Z/N).
std::pair<long, long> p1_canonical(long c, long d, long N) {
  c = mod(c, N);
  d = mod(d, N);
  std::pair<long, long> best{N, N};
  for (long u = 1; u < N || (N == 1 && u == 1); ++u) {
    if (std::gcd(u, N) != 1) continue;
    std::pair<long, long> cand{(u * c) % N, (u * d) % N};
    if (N == 1) cand = {0, 0};
    best = std::min(best, cand);
    if (N == 1) break;
  }
  return best;
}

std::vector<std::pair<long, long>> p1_points(long N) {
  std::set<std::pair<long, long>> pts;
  for (long c = 0; c < N; ++c)
    for (long d = 0; d < N; ++d)
      if (std::gcd(std::gcd(c, d), N) == 1) pts.insert(p1_canonical(c, d, N));
  if (N == 1) pts.insert({0, 0});
  return {pts.begin(), pts.end()};
}

std::vector<Mat2> sl2_stabilizer(const QuadForm& Q) {
  std::vector<Mat2> out;
  const long B = 2;
  for (long a = -B; a <= B; ++a)
    for (long b = -B; b <= B; ++b)
      for (long c = -B; c <= B; ++c)
        for (long d = -B; d <= B; ++d) {
          if (a * d - b * c != 1) continue;
          const Mat2 M{a, b, c, d};
          if (act(Q, M) == Q) out.push_back(M);
        }
  return out;
}

// x u' - y u = 1 completion: returns (u, v) with x v - u y = 1.
std::pair<long, long> complete_column(long x, long y) {
  // extended gcd on (x, y)
  long old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  // old_s x + old_t y = old_r = +-1
  if (old_r == -1) {
    old_s = -old_s;
    old_t = -old_t;
  }
  // x * old_s + y * old_t = 1  =>  x v - u y = 1 with v = old_s, u = -old_t
  return {-old_t, old_s};
}

}  // namespace

QuadForm reduce_form(const QuadForm& Q0) {
  if (Q0.a <= 0 || Q0.disc() >= 0) throw std::invalid_argument("reduce_form: positive definite form expected");
  QuadForm Q = normalize_b(Q0);
  while (Q.a > Q.c) {
    Q = QuadForm{Q.c, -Q.b, Q.a};
    Q = normalize_b(Q);
  }
  if (Q.a == Q.c && Q.b < 0) Q.b = -Q.b;
  return Q;
}

std::vector<QuadForm> reduced_forms(long delta) {
  if (delta >= 0 || !(mod(delta, 4) == 0 || mod(delta, 4) == 1)) {
    throw std::invalid_argument("reduced_forms: negative discriminant = 0,1 mod 4 expected");
  }
  std::vector<QuadForm> out;
  const long D = -delta;
  for (long a = 1; 3 * a * a <= D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b - delta;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

int stabilizer_order(const QuadForm& Q) {
  return static_cast<int>(sl2_stabilizer(reduce_form(Q)).size() / 2);
}

int genus_char(const QuadForm& Q, long D) {
  if (Q.a <= 0 || Q.disc() >= 0) throw std::invalid_argument("genus_char: positive definite form expected");
  const long g = std::gcd(std::gcd(std::gcd(std::labs(Q.a), std::labs(Q.b)), std::labs(Q.c)), std::labs(D));
  if (g > 1) return 0;
  if (D == 1) return 1;
  const long cap = 200;
  for (long B = 1; B <= cap; ++B) {
    for (long x = -B; x <= B; ++x) {
      for (long y = -B; y <= B; ++y) {
        if (std::max(std::labs(x), std::labs(y)) != B) continue;
        const long r = value(Q, x, y);
        if (std::gcd(r, std::labs(D)) == 1) return kronecker(D, r);
      }
    }
  }
  throw std::logic_error("genus_char: no represented value coprime to D found for " + Q.str());
}

ClassKey class_key(const QuadForm& Q, long N) {
  if (Q.a % N != 0) throw std::invalid_argument("class_key: N must divide a");
  const long content = std::gcd(std::gcd(Q.a / N, Q.b), Q.c * N);
  return {reduce_form(Q), mod(Q.b, 2 * N), std::labs(content)};
}

bool equivalent_under_gamma0(const QuadForm& Q1, const QuadForm& Q2, long N, long B) {
  if (Q1.disc() != Q2.disc()) return false;
  for (long g = -B; g <= B; ++g) {
    if (g % N != 0) continue;
    for (long a = -B; a <= B; ++a)
      for (long d = -B; d <= B; ++d) {
        // b = (a d - 1) / g, or any b when g == 0 and a d == 1
        if (g == 0) {
          if (a * d != 1) continue;
          for (long b = -B; b <= B; ++b)
            if (act(Q1, Mat2{a, b, g, d}) == Q2) return true;
        } else {
          if ((a * d - 1) % g != 0) continue;
          const long b = (a * d - 1) / g;
          if (std::labs(b) > B) continue;
          if (act(Q1, Mat2{a, b, g, d}) == Q2) return true;
        }
      }
  }
  return false;
}

std::vector<HeegnerClass> enumerate_classes(long delta, long N, long D) {
  if (N < 1) throw std::invalid_argument("enumerate_classes: level must be positive");
  std::vector<HeegnerClass> out;
  const auto pts = p1_points(N);
  for (const QuadForm& Q0 : reduced_forms(delta)) {
    const auto stab = sl2_stabilizer(Q0);
    // Points of P^1(Z/N) whose lifts give N | a, grouped into Stab(Q0)-orbits.
    std::set<std::pair<long, long>> todo;
    for (auto [c, d] : pts)
      if (N == 1 || mod(value(Q0, c, d), N) == 0) todo.insert({c, d});
    while (!todo.empty()) {
      const auto v = *todo.begin();
      std::set<std::pair<long, long>> orbit;
      std::vector<std::pair<long, long>> stack{v};
      while (!stack.empty()) {
        auto [c, d] = stack.back();
        stack.pop_back();
        if (!orbit.insert({c, d}).second) continue;
        for (const auto& M : stab) stack.push_back(p1_canonical(M[0] * c + M[1] * d, M[2] * c + M[3] * d, N));
      }
      for (const auto& o : orbit) todo.erase(o);
      // Lift with the smallest value of Q0 (largest Im tau).
      const long B = 2 * N + 2;
      long best_a = 0, bx = 0, by = 0;
      for (long x = -B; x <= B; ++x)
        for (long y = -B; y <= B; ++y) {
          if (std::gcd(std::labs(x), std::labs(y)) != 1) continue;
          if (!orbit.count(p1_canonical(x, y, N))) continue;
          const long a = value(Q0, x, y);
          if (best_a == 0 || a < best_a) {
            best_a = a;
            bx = x;
            by = y;
          }
        }
      if (best_a == 0) throw std::logic_error("enumerate_classes: no lift found");
      auto [u, w] = complete_column(bx, by);
      QuadForm Q = normalize_b(act(Q0, Mat2{bx, u, by, w}));
      if (Q.a % N != 0) throw std::logic_error("enumerate_classes: lift does not satisfy N | a");
      HeegnerClass hc;
      hc.rep = Q;
      hc.w = static_cast<int>(stab.size() / 2);
      hc.chi = genus_char(Q, D);
      hc.tau = CMPoint{Q.b, Q.a, delta};
      out.push_back(hc);
    }
  }
  std::sort(out.begin(), out.end(), [](const HeegnerClass& x, const HeegnerClass& y) { return x.rep < y.rep; });
  return out;
}

std::vector<HeegnerClass> enumerate_classes(long delta, long N) { return enumerate_classes(delta, N, 1); }

}  // namespace zagier
