#include <random>
#include <set>

#include "doctest.h"
#include "zagier/arith.hpp"
#include "zagier/heegner.hpp"

using namespace zagier;

TEST_CASE("reduced forms give the class numbers") {
  const std::vector<std::pair<long, std::size_t>> h{{-3, 1}, {-4, 1}, {-23, 3}, {-47, 5}, {-71, 7},
                                                   {-56, 4}, {-84, 4}, {-15, 2}, {-20, 2}};
  for (auto [d, n] : h) CHECK_MESSAGE(reduced_forms(d).size() == n, d);
  // Imprimitive forms are included: discriminant -12 has [1,0,3] and [2,2,2].
  CHECK(reduced_forms(-12).size() == 2);
  CHECK(reduce_form({5, 8, 4}) == QuadForm{1, 0, 4});
  CHECK(stabilizer_order({1, 1, 1}) == 3);
  CHECK(stabilizer_order({1, 0, 1}) == 2);
  CHECK(stabilizer_order({2, 2, 2}) == 3);
  CHECK(stabilizer_order({1, 1, 6}) == 1);
}

TEST_CASE("examples of Gamma0(N) classes") {
  auto c4 = enumerate_classes(-4, 5);
  REQUIRE(c4.size() == 2);
  std::set<QuadForm> reps;
  for (const auto& c : c4) {
    reps.insert(c.rep);
    CHECK(c.w == 2);
    CHECK(c.chi == 1);
  }
  CHECK(reps == std::set<QuadForm>{{5, -4, 1}, {5, 4, 1}});
  auto c15 = enumerate_classes(-15, 5);
  reps.clear();
  for (const auto& c : c15) reps.insert(c.rep);
  CHECK(reps == std::set<QuadForm>{{5, 5, 2}, {10, 5, 1}});
}

TEST_CASE("class counts for fundamental discriminants") {
  for (long p : {3L, 5L, 7L, 13L}) {
    for (long d = -3; d > -200; --d) {
      if (!is_fundamental_discriminant(d)) continue;
      const std::size_t h = reduced_forms(d).size();
      const long k = kronecker(d, p);
      const auto cls = enumerate_classes(d, p);
      CHECK_MESSAGE(static_cast<long>(cls.size()) == (1 + k) * static_cast<long>(h), "d=" << d << " p=" << p);
      for (const auto& c : cls) {
        CHECK(c.rep.a % p == 0);
        CHECK(c.rep.disc() == d);
        CHECK(-c.rep.a < c.rep.b);
        CHECK(c.rep.b <= c.rep.a);
        CHECK(c.tau.a == c.rep.a);
        CHECK(c.tau.b == c.rep.b);
      }
    }
  }
}

TEST_CASE("classes are invariant and distinct under Gamma0(N)") {
  std::mt19937 rng(3);
  for (long N : {5L, 7L, 20L, 28L}) {
    for (long delta : {-20L, -23L, -36L, -39L, -60L}) {
      const auto cls = enumerate_classes(delta, N);
      std::set<ClassKey> keys;
      for (const auto& c : cls) keys.insert(class_key(c.rep, N));
      CHECK(keys.size() == cls.size());
      for (const auto& c : cls) {
        for (int t = 0; t < 5; ++t) {
          // random element of Gamma0(N): [[a, b], [N c, d]] with ad - Nbc = 1
          long a, b, c2, d;
          for (;;) {
            c2 = static_cast<long>(rng() % 7) - 3;
            d = static_cast<long>(rng() % 9) - 4;
            if (std::gcd(N * c2, d) != 1) continue;
            // solve a d - b N c2 = 1
            long g = 0, x = 0, y = 0;
            {
              long r0 = d, r1 = N * c2, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
              while (r1 != 0) {
                long q = r0 / r1;
                long tmp = r0 - q * r1; r0 = r1; r1 = tmp;
                tmp = s0 - q * s1; s0 = s1; s1 = tmp;
                tmp = t0 - q * t1; t0 = t1; t1 = tmp;
              }
              g = r0; x = s0; y = t0;
            }
            if (g == -1) { x = -x; y = -y; }
            a = x;
            b = -y;
            break;
          }
          const Mat2 M{a, b, N * c2, d};
          REQUIRE(a * d - b * N * c2 == 1);
          const QuadForm Q2 = act(c.rep, M);
          CHECK(class_key(Q2, N) == class_key(c.rep, N));
          CHECK(equivalent_under_gamma0(c.rep, Q2, N, 200));
        }
      }
    }
  }
}

TEST_CASE("genus characters") {
  CHECK(genus_char({1, 0, 5}, -4) == 1);
  CHECK(genus_char({2, 2, 3}, -4) == -1);
  CHECK(genus_char({2, 0, 2}, -4) == 0);  // gcd(a, b, c, D) > 1
  CHECK(genus_char({5, 4, 1}, 1) == 1);
  // chi_D and chi_{delta/D} agree on forms of discriminant delta
  for (const auto& c : enumerate_classes(-84, 7, -3)) {
    CHECK(genus_char(c.rep, -3) == c.chi);
    CHECK(genus_char(c.rep, 28) == c.chi);
  }
  // For delta = d D with D fundamental, sum of chi over SL2 classes vanishes
  // unless D = 1 (chi is a nontrivial genus character).
  long total = 0;
  for (const auto& c : enumerate_classes(-4 * 5, 1, 5)) total += c.chi;
  CHECK(total == 0);
}
