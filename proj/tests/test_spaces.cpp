#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "zagier/arith.hpp"
#include "zagier/linalg.hpp"
#include "zagier/modforms.hpp"
#include "zagier/spaces.hpp"

using namespace zagier;
namespace fs = std::filesystem;

namespace {

QSeries read_seed(const fs::path& path) {
  std::ifstream in(path);
  std::string meta;
  std::getline(in, meta);
  return QSeries::read(in);
}

QSeries with_coeff(const QSeries& f, Exp n, const mpq_class& c) {
  std::vector<mpq_class> v;
  for (Exp e = f.lead(); e < f.trunc(); ++e) v.push_back(e == n ? c : f.at(e));
  return QSeries::from_coeffs(f.lead(), v, f.trunc());
}

// Reduces f against the family by leading terms; the result is zero iff f
// lies in the span on the common window.
QSeries reduce_by(QSeries f, const BasisFamily& fam) {
  while (!f.is_zero() && f.lead() < fam.trunc) {
    const Exp m = -f.lead();
    if (!fam.has_lead(m)) break;
    f = sub(f, fam.element(m).scaled(f.leading_coeff()));
  }
  return f;
}

fs::path temp_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("zagier_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("integer-weight families: leads, gap and the introductory examples") {
  BasisFamily F = integer_basis(5, -4, false, 8, 12);
  CHECK(F.has_lead(2));
  CHECK(!F.has_lead(1));
  CHECK(F.element(1).is_zero());  // missing lead: canonical zero
  CHECK_THROWS_AS(F.element(40), std::out_of_range);
  const QSeries f = F.element(2);
  const long fc[] = {1, 4, 5, -16, -11, -48, 134, 80};
  for (int i = 0; i < 8; ++i) CHECK(f.coeff(i - 2) == fc[i]);
  // Reduced form: no element has a term at another element's lead.
  for (Exp m : F.ms())
    for (Exp l : F.ms())
      if (l != m) CHECK(F.element(m).at(-l) == 0);
  BasisFamily G = integer_basis(7, -8, false, 8, 6);
  const long gc[] = {1, 2, 3, -10, -7, -18, 22};
  for (int i = 0; i < 7; ++i) CHECK(G.element(4).coeff(i - 4) == gc[i]);
}

TEST_CASE("integer-weight g-family consists of f-family combinations") {
  for (long p : {3L, 5L, 7L, 13L}) {
    BasisFamily F = integer_basis(p, 0, false, 20, 30), G = integer_basis(p, 0, true, 16, 30);
    for (Exp l : G.ms()) CHECK(reduce_by(G.element(l), F).is_zero());
    CHECK(G.top_lead() < F.top_lead());
  }
}

TEST_CASE("plus-space families: support, integrality, remark element") {
  BasisFamily F = plus_basis(7, -7, false, 12, 9);
  const QSeries f = F.element(12);
  // q^-12 + 1/2 q^-11 - 3/2 q^-8 + 2 q^-7 + 1/2 q^-4 - 4 q^-3 + 5/2 - 2 q - 7 q^4 - 5/2 q^5 - 2 q^8
  const std::vector<std::pair<Exp, mpq_class>> expect{
      {-12, 1}, {-11, mpq_class(1, 2)}, {-8, mpq_class(-3, 2)}, {-7, 2}, {-4, mpq_class(1, 2)}, {-3, -4},
      {0, mpq_class(5, 2)}, {1, -2}, {4, -7}, {5, mpq_class(-5, 2)}, {8, -2}};
  QSeries ref = QSeries::zero(9);
  for (auto [e, c] : expect) ref = add(ref, QSeries::monomial(e, c));
  CHECK(f == ref);
  for (long p : {3L, 5L, 13L}) {
    BasisFamily P = plus_basis(p, 5, false, 12, 40);
    for (const auto& [m, g] : P.elements) {
      CHECK(g.all_integral());
      for (Exp n = g.lead(); n < g.stored_end(); ++n) {
        if (g.at(n) == 0) continue;
        const Exp r = ((n % 4) + 4) % 4;
        CHECK((r == 0 || r == 1));  // weight 5/2: (-1)^s n = 0, 1 mod 4 with s = 2
      }
    }
  }
}

TEST_CASE("level 4: the weight 1/2 and 3/2 generating functions") {
  BasisFamily F = level4_basis(1, 8, 6);
  const QSeries f0 = F.element(0);
  CHECK(f0.agrees_with(theta(6)));
  const QSeries f3 = F.element(3);
  CHECK(f3.coeff(-3) == 1);
  CHECK(f3.coeff(0) == 0);
  CHECK(f3.coeff(1) == -248);
  CHECK(f3.coeff(4) == 26752);
  BasisFamily G = level4_basis(3, 4, 6);
  const QSeries g1 = G.element(1);
  CHECK(g1.coeff(-1) == 1);
  CHECK(g1.coeff(0) == -2);
  CHECK(g1.coeff(3) == 248);
  CHECK(g1.coeff(4) == -492);
  CHECK_THROWS(basis_family(4, 1, true, 4, 6));
}

TEST_CASE("vanishing-at-zero plus-space family contains the Psi_p(4z) products") {
  for (long p : {3L, 5L, 7L}) {
    BasisFamily G = plus_basis(p, -1, true, 32, 40);
    BasisFamily P = plus_psi_products(p, -1, 24, 40);
    BasisFamily F = plus_basis(p, -1, false, 32, 40);
    for (Exp l : P.ms()) CHECK(reduce_by(P.element(l), G).is_zero());
    for (Exp l : G.ms()) CHECK(reduce_by(G.element(l), F).is_zero());
    // Exactly one lead of the full family is missing from the vanishing one.
    std::size_t missing = 0;
    for (Exp m : F.ms())
      if (m <= 24 && !G.has_lead(m)) ++missing;
    CHECK(missing == 1);
  }
}

TEST_CASE("integrality class") {
  CHECK(integrality_denominator(28, 5) == 2);
  CHECK(integrality_denominator(28, 17) == 2);
  CHECK(integrality_denominator(28, -7) == 2);
  CHECK(integrality_denominator(28, -1) == 1);
  CHECK(integrality_denominator(28, -1, true) == 2);
  CHECK(integrality_denominator(20, 5) == 1);
}

TEST_CASE("seed validation rejects each failure mode") {
  const fs::path seed = fs::path(ZAGIER_DEFAULT_SEED_DIR) / "20" / "11" / "0.qs";
  const QSeries f = read_seed(seed);
  CHECK(validate_seed(f, 11, 20).accepted);
  // weight 11/2, s = 5: support n = 0, 3 mod 4
  SeedReport r1 = validate_seed(with_coeff(f, 6, 1), 11, 20);
  CHECK(!r1.accepted);
  CHECK(r1.reason.find("plus-space") != std::string::npos);
  SeedReport r2 = validate_seed(with_coeff(f, 11, mpq_class(1, 3)), 11, 20);
  CHECK(!r2.accepted);
  CHECK(r2.reason.find("integrality") != std::string::npos);
  SeedReport r3 = validate_seed(with_coeff(f, 12, f.at(12) + 1), 11, 20);
  CHECK(!r3.accepted);
  CHECK(r3.reason.find("not modular") != std::string::npos);
}

TEST_CASE("seed ingestion checks completeness") {
  const fs::path dir = temp_dir("seeds");
  const fs::path src = fs::path(ZAGIER_DEFAULT_SEED_DIR) / "20" / "11";
  fs::create_directories(dir / "20" / "11");
  fs::copy_file(src / "0.qs", dir / "20" / "11" / "0.qs");
  CHECK_THROWS(ingest_seeds(dir.string(), 20));
  for (const auto& e : fs::directory_iterator(src)) {
    if (e.path().filename() != "0.qs") fs::copy_file(e.path(), dir / "20" / "11" / e.path().filename());
  }
  SeedSet s = ingest_seeds(dir.string(), 20);
  CHECK(s.by_weight2.at(11).size() == static_cast<std::size_t>(dim_modular_forms(5, 10)));
  fs::remove_all(dir);
}

TEST_CASE("disk cache round trip") {
  const fs::path dir = temp_dir("cache");
  const SpacesConfig saved = spaces_config();
  set_spaces_config({saved.seed_dir, dir.string()});
  clear_space_caches();
  BasisFamily a = plus_basis(5, 5, false, 12, 30);
  CHECK(fs::exists(dir / "20" / "5" / "f" / "family.meta"));
  clear_space_caches();
  BasisFamily b = plus_basis(5, 5, false, 12, 30);
  CHECK(a.ms() == b.ms());
  for (Exp m : a.ms()) CHECK(a.element(m) == b.element(m));
  CHECK(a.gap_start == b.gap_start);
  set_spaces_config(saved);
  clear_space_caches();
  fs::remove_all(dir);
}

TEST_CASE("unsupported requests") {
  CHECK_THROWS(basis_family(11, -4, false, 4, 10));
  CHECK_THROWS(integer_basis(5, -2, false, 4, 10));  // odd integer weight
  CHECK_THROWS(plus_basis(5, 4, false, 4, 10));
  CHECK_THROWS(basis_family(44, 5, false, 4, 10));
}
