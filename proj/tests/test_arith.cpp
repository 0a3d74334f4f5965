#include <numeric>

#include "doctest.h"
#include "zagier/arith.hpp"

using namespace zagier;

TEST_CASE("kronecker agrees with GMP") {
  for (long D = -60; D <= 60; ++D) {
    for (long n = -40; n <= 40; ++n) {
      mpz_class a(D), b(n);
      CHECK_MESSAGE(kronecker(D, n) == mpz_kronecker(a.get_mpz_t(), b.get_mpz_t()), "D=" << D << " n=" << n);
    }
  }
}

TEST_CASE("kronecker is a character for fundamental D") {
  for (long D : {-3L, -4L, -7L, -8L, 5L, 8L, 12L, -15L, 13L}) {
    for (long m = 1; m < 30; ++m)
      for (long n = 1; n < 30; ++n) CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
    // periodic with period |D|
    for (long n = 1; n < 40; ++n) CHECK(kronecker(D, n) == kronecker(D, n + std::labs(D)));
  }
}

TEST_CASE("fundamental discriminants") {
  const std::vector<long> fund{1, -3, -4, 5, -7, -8, 8, -11, 12, 13, -15, -19, -20, 21, -23, -24, 24};
  for (long D : fund) CHECK_MESSAGE(is_fundamental_discriminant(D), D);
  for (long D : {0L, -1L, 2L, 4L, -12L, -16L, 9L, 16L, 20L, -27L, 25L}) CHECK_MESSAGE(!is_fundamental_discriminant(D), D);
  CHECK(fundamental_part(-12) == -3);
  CHECK(fundamental_part(-16) == -4);
  CHECK(fundamental_part(20) == 5);
  CHECK(fundamental_part(-36) == -4);
  CHECK(fundamental_part(9) == 1);
  CHECK(is_discriminant(-3));
  CHECK(!is_discriminant(-5));
}

TEST_CASE("moebius, divisors, factorization") {
  for (long n = 1; n < 300; ++n) {
    auto ds = divisors(n);
    long brute = 0;
    for (long d = 1; d <= n; ++d) brute += (n % d == 0);
    CHECK(static_cast<long>(ds.size()) == brute);
    CHECK(std::is_sorted(ds.begin(), ds.end()));
    long s = 0;
    for (long d : ds) s += moebius(d);
    CHECK(s == (n == 1 ? 1 : 0));
    long prod = 1;
    for (auto [q, e] : factorize(n)) prod *= ipow(q, static_cast<unsigned>(e));
    CHECK(prod == n);
    CHECK(sigma(n, 1) == std::accumulate(ds.begin(), ds.end(), 0L));
  }
  CHECK(moebius(30) == -1);
  CHECK(moebius(12) == 0);
  CHECK(trivial_char(5, 10) == 0);
  CHECK(trivial_char(5, 11) == 1);
  CHECK(level_of(3, 7) == 28);
  CHECK(level_of(7, 7) == 4);
  CHECK(isqrt(99) == 9);
  CHECK(is_square(144));
  CHECK(sigma_mpz(12, 11) == mpz_class("743375541244"));
}

TEST_CASE("dimension formulas") {
  CHECK(dim_modular_forms(1, 12) == 2);
  CHECK(dim_cusp_forms(1, 12) == 1);
  CHECK(dim_modular_forms(11, 2) == 2);
  CHECK(dim_cusp_forms(11, 2) == 1);
  CHECK(dim_cusp_forms(5, 4) == 1);
  CHECK(dim_modular_forms(5, 2) == 1);
  CHECK(dim_cusp_forms(28, 2) == 2);
  CHECK(dim_modular_forms(4, 2) == 2);
  CHECK(gamma0_index(28) == 48);
}

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(1) == mpq_class(-1, 2));
  CHECK(bernoulli(12) == mpq_class(-691, 2730));
  CHECK(bernoulli(3) == 0);
  CHECK(generalized_bernoulli(1, -4) == mpq_class(-1, 2));
  CHECK(generalized_bernoulli(1, -3) == mpq_class(-1, 3));
  CHECK(generalized_bernoulli(2, 5) == mpq_class(4, 5));
  CHECK(generalized_bernoulli(2, 1) == mpq_class(1, 6));
}
