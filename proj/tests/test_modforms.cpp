#include "doctest.h"
#include "zagier/arith.hpp"
#include "zagier/modforms.hpp"
#include "zagier/spaces.hpp"

using namespace zagier;

TEST_CASE("eta products and Delta") {
  QSeries d = delta_form(12);
  const long tau[] = {0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612};
  for (Exp n = 0; n < 12; ++n) CHECK(d.coeff(n) == tau[n]);
  QSeries e = eta_expand({1, {{1, 24}}}, 12);
  CHECK(e == d);
  CHECK_THROWS(EtaQuotient({5, {{1, 1}}}).lead());  // order 1/24 at infinity
  CHECK_THROWS(EtaQuotient({6, {{4, 2}}}).validate());
}

TEST_CASE("theta counts representations as squares") {
  QSeries t = theta(50);
  for (Exp n = 0; n < 50; ++n) {
    const bool sq = is_square(n);
    CHECK(t.coeff(n) == (n == 0 ? 1 : (sq ? 2 : 0)));
  }
  // Jacobi: r_4(n) = 8 sigma(n) - 32 sigma(n / 4)
  QSeries t4 = pow(theta(40), 4);
  for (Exp n = 1; n < 40; ++n) {
    long r4 = 8 * sigma(n, 1) - (n % 4 == 0 ? 32 * sigma(n / 4, 1) : 0);
    CHECK(t4.coeff(n) == r4);
  }
  CHECK(in_modular_forms(4, 2, t4));
}

TEST_CASE("Eisenstein series") {
  QSeries e4 = eisenstein(4, 10), e6 = eisenstein(6, 10);
  CHECK(e4.coeff(1) == 240);
  CHECK(e4.coeff(2) == 2160);
  CHECK(e6.coeff(1) == -504);
  CHECK(eisenstein_e2(5).coeff(1) == -24);
  // E4^3 - E6^2 = 1728 Delta
  CHECK(sub(pow(e4, 3), pow(e6, 2)) == delta_form(10).scaled(1728));
  // E2^(p) is holomorphic of weight 2 on Gamma0(p)
  for (long p : {3L, 5L, 7L, 13L}) {
    QSeries e = eisenstein_e2_level(p, 30);
    CHECK(e.coeff(0) == 1);
    CHECK(in_modular_forms(p, 2, e));
  }
  // theta^2 = 4 E_1^{1, chi_-4}
  QSeries e1 = eisenstein_char(1, 1, -4, 1, 30);
  CHECK(e1.coeff(0) == mpq_class(1, 4));
  CHECK(pow(theta(30), 2) == e1.scaled(4));
  CHECK_THROWS(eisenstein_char(2, 1, 1, 1, 10));
}

TEST_CASE("Hauptmoduln and ladders") {
  for (long p : {3L, 5L, 7L, 13L}) {
    QSeries phi = hauptmodul(p, 20), psi = hauptmodul_inverse(p, 20);
    CHECK(phi.lead() == 1);
    CHECK(psi.lead() == -1);
    QSeries one = mul(phi, psi);
    CHECK(one.agrees_with(QSeries::one()));
    CHECK(ladder_eta(p).lead() >= 1);
  }
  CHECK_THROWS(hauptmodul(11, 10));
  CHECK(ladder_weight2(5) == 8);
}

TEST_CASE("named forms and the introductory examples") {
  // f = E2^(5) / H_{4,5}: weight -2 on Gamma0(5)
  QSeries f = divide(eisenstein_e2_level(5, 12), named_form(NamedForm::H45, 12));
  const long fc[] = {1, 4, 5, -16, -11, -48, 134, 80};
  for (int i = 0; i < 8; ++i) CHECK(f.coeff(i - 2) == fc[i]);
  // g = E2^(7) / H_{6,7}: weight -4 on Gamma0(7)
  QSeries g = divide(eisenstein_e2_level(7, 12), named_form(NamedForm::H67, 12));
  const long gc[] = {1, 2, 3, -10, -7, -18, 22};
  for (int i = 0; i < 7; ++i) CHECK(g.coeff(i - 4) == gc[i]);
  CHECK(named_form(parse_named_form("C45"), 5).lead() == 1);
  CHECK_THROWS(parse_named_form("C11"));
  QSeries c63 = named_form(NamedForm::C63, 30);
  CHECK(in_cusp_forms(3, 6, c63));
}

TEST_CASE("form metadata invariants") {
  CHECK_NOTHROW(FormMeta{5, 20, true, false}.validate());
  CHECK_THROWS(FormMeta{5, 5, false, false}.validate());
  CHECK_THROWS(FormMeta{4, 6, true, false}.validate());
  CHECK_THROWS(FormMeta{4, 0, false, false}.validate());
}

TEST_CASE("holomorphic spaces match the dimension formulas") {
  for (long N : {3L, 5L, 7L, 13L, 12L, 20L, 28L}) {
    for (int k : {2, 4, 6}) {
      CHECK(static_cast<long>(modular_forms_basis(N, k, 40).size()) == dim_modular_forms(N, k));
    }
  }
  for (long p : {3L, 5L, 7L, 13L}) CHECK(static_cast<long>(cusp_form_basis(p, 8, 40).size()) == dim_cusp_forms(p, 8));
  CHECK(sturm_bound(24, 1) == 2);
  CHECK(sturm_bound(4, 28) == 9);
}
