// Positive definite binary quadratic forms [a, b, c] = aX^2 + bXY + cY^2 with
// N | a, their Gamma0(N)-classes, stabilizer orders, genus characters and
// CM points tau_Q = (-b + sqrt(b^2 - 4ac)) / (2a).
#pragma once

#include <array>
#include <string>
#include <vector>

namespace zagier {

struct QuadForm {
  long a = 0, b = 0, c = 0;
  long disc() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm&) const = default;
  auto operator<=>(const QuadForm&) const = default;
  std::string str() const;
};

// 2x2 integer matrix [[m[0], m[1]], [m[2], m[3]]].
using Mat2 = std::array<long, 4>;

// (Q o M)(X, Y) = Q(m0 X + m1 Y, m2 X + m3 Y).
QuadForm act(const QuadForm& Q, const Mat2& M);
// SL2(Z)-reduced representative: |b| <= a <= c, b >= 0 if |b| = a or a = c.
QuadForm reduce_form(const QuadForm& Q);
// All SL2(Z)-reduced forms of discriminant delta < 0 (imprimitive included).
std::vector<QuadForm> reduced_forms(long delta);
// Number of elements of PSL2(Z) fixing Q.
int stabilizer_order(const QuadForm& Q);

// Exact CM point: tau = (-b + i sqrt(|delta|)) / (2a).
struct CMPoint {
  long b = 0, a = 1, delta = -4;
};

struct HeegnerClass {
  QuadForm rep;
  int w = 1;
  int chi = 1;
  CMPoint tau;
};

// One representative per Gamma0(N)-class of forms of discriminant delta with
// N | a. Representatives are chosen with the smallest available a (largest
// Im tau) and -a < b <= a. Characters are computed for D = 1.
std::vector<HeegnerClass> enumerate_classes(long delta, long N);
// Same, with genus characters for the fundamental discriminant D.
std::vector<HeegnerClass> enumerate_classes(long delta, long N, long D);

// Genus character chi_D(Q): 0 if gcd(a, b, c, D) > 1, else (D / r) for an
// integer r represented by Q with gcd(r, D) = 1.
int genus_char(const QuadForm& Q, long D);

// Bounded search for M in Gamma0(N) with entries at most search_bound in
// absolute value and Q1 o M = Q2. False negatives are possible.
bool equivalent_under_gamma0(const QuadForm& Q1, const QuadForm& Q2, long N, long search_bound);

// Gamma0(N)-invariants of a form with N | a: its SL2(Z)-reduced form, b mod
// 2N and gcd(a/N, b, cN). Equal keys are necessary for equivalence; they
// are sufficient when gcd(a/N, b, cN) = 1.
struct ClassKey {
  QuadForm reduced;
  long b_mod_2N = 0;
  long level_content = 1;
  auto operator<=>(const ClassKey&) const = default;
};
ClassKey class_key(const QuadForm& Q, long N);

}  // namespace zagier
