#include <random>
#include <sstream>

#include "doctest.h"
#include "zagier/qseries.hpp"

using namespace zagier;

namespace {

QSeries random_series(std::mt19937& rng, Exp lead, Exp trunc) {
  std::uniform_int_distribution<int> c(-50, 50), d(1, 6);
  std::vector<mpq_class> v;
  for (Exp n = lead; n < trunc; ++n) v.emplace_back(c(rng), d(rng));
  v.front() = 1;
  return QSeries::from_coeffs(lead, v, trunc);
}

}  // namespace

TEST_CASE("basic construction and invariants") {
  QSeries z;
  CHECK(z.is_zero());
  CHECK(z.is_exact());
  QSeries f = series_from_ints(-2, {0, 3, 0, 5}, 10);
  CHECK(f.lead() == -1);
  CHECK(f.trunc() == 10);
  CHECK(f.coeff(-1) == 3);
  CHECK(f.coeff(0) == 0);
  CHECK(f.coeff(1) == 5);
  CHECK(f.coeff(7) == 0);
  CHECK_THROWS_AS(f.coeff(10), std::out_of_range);
}

TEST_CASE("ring arithmetic respects truncation") {
  QSeries a = series_from_ints(-1, {1, 2, 3}, 5);
  QSeries b = series_from_ints(0, {1, -1}, kExact);
  QSeries s = add(a, b);
  CHECK(s.trunc() == 5);
  CHECK(s.coeff(0) == 3);
  CHECK(s.coeff(1) == 2);
  QSeries p = mul(a, b);
  CHECK(p.trunc() == 5);
  CHECK(p.coeff(-1) == 1);
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(1) == 1);
  CHECK(p.coeff(2) == -3);
  // A leading pole shortens the known window of the product.
  QSeries c = series_from_ints(-3, {1}, kExact);
  CHECK(mul(a, c).trunc() == 2);
}

TEST_CASE("inversion and division") {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    QSeries f = random_series(rng, -3 + t % 5, 20);
    QSeries g = invert(f);
    QSeries one = mul(f, g);
    CHECK(one.agrees_with(QSeries::one().truncated(one.trunc())));
    CHECK(one.trunc() == 20 - f.lead());
  }
  CHECK_THROWS(invert(QSeries::zero(10)));
  CHECK_THROWS(invert(series_from_ints(0, {1, 1})));  // exact, infinite inverse
  QSeries geo = invert(series_from_ints(0, {1, -1}, 8));
  for (Exp n = 0; n < 8; ++n) CHECK(geo.coeff(n) == 1);
}

TEST_CASE("mul matches the serial reference and the kernels agree") {
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    QSeries a = random_series(rng, -5, 60), b = random_series(rng, 2, 70);
    CHECK(mul(a, b) == mul_reference(a, b));
  }
  std::vector<mpz_class> x(300), y(300), o1, o2;
  for (int i = 0; i < 300; ++i) {
    x[i] = static_cast<long>(rng() % 1000) - 500;
    y[i] = static_cast<long>(rng() % 1000) - 500;
  }
  conv_serial(x, y, o1, 300);
  conv_parallel(x, y, o2, 300);
  CHECK(o1 == o2);
}

TEST_CASE("U, V and D operators") {
  QSeries f = series_from_ints(-4, {1, 2, 3, 4, 5, 6, 7, 8, 9}, 5);
  QSeries u = u_op(f, 2);
  CHECK(u.lead() == -2);
  CHECK(u.coeff(-2) == 1);
  CHECK(u.coeff(-1) == 3);
  CHECK(u.coeff(0) == 5);
  CHECK(u.trunc() == 3);
  QSeries v = v_op(f, 3);
  CHECK(v.lead() == -12);
  CHECK(v.coeff(-9) == 2);
  CHECK(v.coeff(-8) == 0);
  CHECK(v.trunc() == 15);
  QSeries d = d_op(f);
  CHECK(d.coeff(-4) == -4);
  CHECK(d.coeff(0) == 0);
  CHECK(d.coeff(3) == 24);
  CHECK(u_op(v_op(f, 4), 4) == f);
}

TEST_CASE("powers") {
  QSeries f = series_from_ints(2, {1, 1}, 12);
  QSeries sq = pow_rational(pow(f, 2), 1, 2);
  CHECK(sq.agrees_with(f));
  CHECK(pow(f, -1).agrees_with(invert(f)));
  CHECK(pow(f, 0) == QSeries::one());
}

TEST_CASE("text format is bit-exact") {
  QSeries f = QSeries::from_coeffs(-2, {mpq_class(1), mpq_class(0), mpq_class(-3, 2), mpq_class(7)}, 9);
  const std::string text = f.to_text();
  CHECK(text == "#qseries lead=-2 trunc=9\n-2 1/1\n0 -3/2\n1 7/1\n");
  CHECK(QSeries::from_text(text) == f);
  CHECK(QSeries::zero(4).to_text() == "#qseries lead=4 trunc=4\n");
  CHECK(QSeries::from_text("#qseries lead=4 trunc=4\n").is_zero());
}

TEST_CASE("text format rejects malformed input") {
  CHECK_THROWS(QSeries::from_text("qseries lead=0 trunc=2\n0 1/1\n"));
  CHECK_THROWS(QSeries::from_text("#qseries lead=0 trunc=2\n0 2/4\n"));     // not reduced
  CHECK_THROWS(QSeries::from_text("#qseries lead=0 trunc=2\n1 1/1\n0 1/1\n"));  // not increasing
  CHECK_THROWS(QSeries::from_text("#qseries lead=0 trunc=2\n0 1/0\n"));
  CHECK_THROWS(QSeries::from_text("#qseries lead=0 trunc=2\n5 1/1\n"));     // beyond trunc
  CHECK_THROWS(QSeries::from_text("#qseries lead=0 trunc=2\n0 1/-1\n"));
  CHECK_THROWS(QSeries::from_text("#qseries lead=1 trunc=4\n2 1/1\n"));     // lead mismatch
}
