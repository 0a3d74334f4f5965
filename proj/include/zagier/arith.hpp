// Elementary number theory used throughout: Kronecker symbols, fundamental
// discriminants, Moebius function, divisors and small helpers.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace zagier {

// Complete Kronecker symbol (D / n), including n <= 0 and the 2-adic rules.
// For n < 0 the factor (D / -1) is sign(D).
int kronecker(long D, long n);

bool is_discriminant(long D);               // D == 0, 1 mod 4 and D != 0
bool is_fundamental_discriminant(long D);   // 1 counts as fundamental
// Fundamental discriminant of the quadratic field Q(sqrt(D)), for D != 0.
long fundamental_part(long D);

// Trivial character mod p: 0 if p | n, else 1.
int trivial_char(long p, long n);

int moebius(long n);                         // n >= 1
std::vector<long> divisors(long n);          // sorted ascending, n >= 1
std::vector<std::pair<long, int>> factorize(long n);  // n >= 1
bool is_squarefree(long n);
bool is_prime(long n);
long sigma(long n, int k);                   // sum of d^k over d | n (small values)
mpz_class sigma_mpz(long n, int k);

// N(n) = 4p / gcd(n, p).
long level_of(long n, long p);

long ipow(long b, unsigned e);
long isqrt(long n);                          // floor sqrt for n >= 0
bool is_square(long n);

// Index of Gamma0(N) in SL2(Z).
long gamma0_index(long N);
// dim M_k(Gamma0(N)) and dim S_k(Gamma0(N)) for even k (trivial character).
long dim_modular_forms(long N, long k);
long dim_cusp_forms(long N, long k);

// Exact Bernoulli numbers (B_1 = -1/2) and generalized Bernoulli numbers
// B_{k,chi} for the primitive quadratic character of discriminant D.
mpq_class bernoulli(unsigned k);
mpq_class generalized_bernoulli(unsigned k, long D);

}  // namespace zagier
