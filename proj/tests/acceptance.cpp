// Acceptance suite: reproduction of the printed examples and property-based
// checks of duality, integrality, constant terms and trace identities, each
// with its runtime budget.

#include <chrono>
#include <random>

#include "doctest.h"
#include "zagier/lifts.hpp"
#include "zagier/modforms.hpp"
#include "zagier/spaces.hpp"
#include "zagier/traces.hpp"

using namespace zagier;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

QSeries poly(const std::vector<std::pair<Exp, long>>& terms, Exp trunc) {
  QSeries s = QSeries::zero(trunc);
  for (auto [e, c] : terms) s = add(s, QSeries::monomial(e, c));
  return s;
}

const QSeries kF5 = poly({{-2, 1}, {-1, 4}}, 0);
const QSeries kG7 = poly({{-4, 1}, {-3, 2}, {-2, 3}, {-1, -10}}, 0);

}  // namespace

TEST_CASE("1. expansions of E2^(5)/H_{4,5} and E2^(7)/H_{6,7}") {
  clear_space_caches();
  Stopwatch sw;
  const QSeries f = divide(eisenstein_e2_level(5, 12), named_form(NamedForm::H45, 12));
  CHECK(f.truncated(6) == poly({{-2, 1}, {-1, 4}, {0, 5}, {1, -16}, {2, -11}, {3, -48}, {4, 134}, {5, 80}}, 6));
  const QSeries g = divide(eisenstein_e2_level(7, 16), named_form(NamedForm::H67, 16));
  CHECK(g.truncated(6) ==
        poly({{-4, 1}, {-3, 2}, {-2, 3}, {-1, -10}, {0, -7}, {1, -18}, {2, 22}, {3, -14}, {4, 114}, {5, 104}}, 6));
  // The same forms are the canonical basis elements f_{-2,2}(5) and f_{-4,4}(7).
  CHECK(integer_basis(5, -4, false, 2, 6).element(2) == f.truncated(6));
  CHECK(integer_basis(7, -8, false, 4, 6).element(4) == g.truncated(6));
  CHECK(sw.seconds() < 1.0);
}

TEST_CASE("2. the Zagier lifts z_1 f and z_{-3} g") {
  clear_space_caches();
  Stopwatch sw;
  const LiftResult a = zagier_lift(kF5, 5, 2, 1, 16);
  CHECK(a.image == poly({{-4, 1}, {-1, 6}, {0, 5}, {4, -1}, {11, -16}, {15, 10}}, 16));
  const LiftResult b = zagier_lift(kG7, 7, 3, -3, 9);
  CHECK(b.image == poly({{-48, 1}, {-27, 2}, {-12, -1}, {-3, -6}, {0, -266}, {1, 426}, {4, -2661}, {8, 19542}}, 9));
  CHECK(sw.seconds() < 30.0);
}

TEST_CASE("3. traces -1, -16, 10") {
  clear_space_caches();
  Stopwatch sw;
  const std::vector<std::pair<long, long>> expect{{-4, -1}, {-11, -16}, {-15, 10}};
  for (auto [d, v] : expect) {
    const TraceResult t = trace_star_sharp(kF5, 5, 2, 1, d, 256);
    CHECK_MESSAGE(abs(t.value - v) < Real(1e-6), "d = " << d);
  }
  CHECK(sw.seconds() < 10.0);
}

TEST_CASE("4. the weight -7/2 level 28 element with lead q^-12") {
  clear_space_caches();
  const QSeries f = plus_basis(7, -7, false, 12, 9).element(12);
  const std::vector<std::pair<Exp, mpq_class>> expect{
      {-12, 1}, {-11, mpq_class(1, 2)}, {-8, mpq_class(-3, 2)}, {-7, 2}, {-4, mpq_class(1, 2)}, {-3, -4},
      {0, mpq_class(5, 2)}, {1, -2}, {4, -7}, {5, mpq_class(-5, 2)}, {8, -2}};
  QSeries ref = QSeries::zero(9);
  for (auto [e, c] : expect) ref = add(ref, QSeries::monomial(e, c));
  CHECK(f == ref);
}

TEST_CASE("5. duality for p = 3, 5, 7, 13 (integer and half-integral pairs)") {
  clear_space_caches();
  Stopwatch sw;
  for (long p : {3L, 5L, 7L, 13L}) {
    const DualityReport i = duality_check(p, p == 13 ? -4 : -8, 12);
    CHECK_MESSAGE(i.ok, i.first_failure);
    CHECK(i.checked >= 144);
    const DualityReport h = duality_check(4 * p, 5, 12);
    CHECK_MESSAGE(h.ok, h.first_failure);
    CHECK(h.checked >= 144);
  }
  CHECK(sw.seconds() < 300.0);
}

TEST_CASE("6. integrality on a 1000-coefficient sample") {
  for (long p : {3L, 5L, 7L, 13L}) {
    for (int w : {5, -1, 17, -7}) {
      const IntegralityReport r = integrality_check(4 * p, w, 1000);
      CHECK_MESSAGE(r.ok, r.first_failure);
      CHECK(r.coefficients >= 1000);
      const BasisFamily F = plus_basis(p, w, false, 24, 64);
      bool half = false, non_integral = false;
      for (const auto& [m, f] : F.elements) {
        for (const auto& c : f.coeffs()) {
          half = half || c.get_den() == 2;
          non_integral = non_integral || c.get_den() != 1;
        }
      }
      const bool exceptional = (p == 7) && (((w - 5) % 12) + 12) % 12 == 0;
      if (exceptional) CHECK_MESSAGE(half, "expected a genuine denominator 2 for weight2 " << w);
      else CHECK_MESSAGE(!non_integral, "p = " << p << " weight2 " << w);
    }
  }
}

TEST_CASE("7. constant terms of f g vanish; f f' is a negative control") {
  std::mt19937 rng(2024);
  std::size_t zero = 0;
  const std::vector<std::pair<long, int>> spaces{{20, 5}, {28, 5}, {12, -1}, {52, 5}, {5, -4}, {7, 0}};
  while (zero < 50) {
    const auto [level, w] = spaces[rng() % spaces.size()];
    const long p = level % 4 == 0 ? level / 4 : level;
    const BasisFamily F = basis_family(level, w, false, 12, 20);
    const BasisFamily G = basis_family(level, 4 - w, true, 12, 20);
    const auto fm = F.ms(), gl = G.ms();
    const Exp m = fm[rng() % fm.size()], l = gl[rng() % gl.size()];
    const ConstantTermReport r = constant_term_check(F.element(m), G.element(l), p);
    CHECK_MESSAGE(r.vanishes, "level " << level << " (m, l) = (" << m << ", " << l << ")");
    ++zero;
  }
  // Negative control: the g-family replaced by the full f-family.
  const BasisFamily F = plus_basis(5, 5, false, 8, 20), F2 = plus_basis(5, -1, false, 8, 20);
  const ConstantTermReport c = constant_term_check(F.element(-1), F2.element(4), 5);
  CHECK(!c.vanishes);
}

TEST_CASE("8. the trace identity for m = 1, 2, 3 with (D, D') = (1, -4)") {
  const QSeries f = sharp_form(5, 2, principal_part_of(kF5), 400);
  for (long m : {1L, 2L, 3L}) {
    const IdentityReport r = trace_identity_check(f, 2, 5, m, 1, -4, 256);
    CHECK_MESSAGE(r.discrepancy < Real(1e-5), "m = " << m);
  }
}

TEST_CASE("9. traces match lift coefficients for ten further d") {
  const LiftResult lift = zagier_lift(kF5, 5, 2, 1, 64);
  std::size_t nonzero = 0;
  for (long d : {-16L, -19L, -20L, -24L, -35L, -36L, -39L, -40L, -44L, -51L}) {
    const TraceResult t = trace_star_sharp(kF5, 5, 2, 1, d, 256);
    const mpq_class& c = lift.image.coeff(-d);
    nonzero += (c != 0);
    CHECK_MESSAGE(abs(t.value - to_real(c)) < Real(1e-5), "d = " << d << ": coefficient " << c.get_str());
  }
  CHECK(nonzero >= 8);
  // The same consistency for z_{-3} g (D < 0, d > 0).
  const LiftResult lg = zagier_lift(kG7, 7, 3, -3, 13);
  for (long d : {1L, 4L, 5L, 8L, 12L}) {
    const TraceResult t = trace_star_sharp(kG7, 7, 3, -3, d, 256);
    CHECK_MESSAGE(abs(t.value - to_real(lg.image.coeff(d))) < Real(1e-5), "d = " << d);
  }
}
