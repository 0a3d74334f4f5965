// Canonical row-reduced bases of weakly holomorphic modular forms.
//
// Integer weight, level p in {3,5,7,13}: M#_k(p) = forms holomorphic on H
// and at the cusp 0, poles allowed at infinity. The f-family is the full
// space, the g-family the subspace vanishing at 0.
// Half-integral weight, level 4p: the Kohnen plus space analogue, built from
// holomorphic seed forms; level 4 families are built the same way.
#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "zagier/modforms.hpp"
#include "zagier/qseries.hpp"

namespace zagier {

// ceil(k * [SL2(Z):Gamma0(N)] / 12) + 1 with k = weight2 / 2 (weight2 >= 0).
long sturm_bound(int weight2, long level);

// ---------------------------------------------------------------------------
// Holomorphic integer-weight forms with trivial character.

// Reduced echelon basis of M_k(Gamma0(N)), known below trunc. Built from
// Eisenstein series with quadratic characters and their pairwise products,
// with the rank checked against the dimension formula.
std::vector<QSeries> modular_forms_basis(long N, int k, Exp trunc);
// Reduced echelon basis of S_k(Gamma0(p)) for p in {3,5,7,13}.
std::vector<QSeries> cusp_form_basis(long p, int k, Exp trunc);
// Sturm-bound membership test in M_k(Gamma0(N)) (resp. S_k(Gamma0(p))).
bool in_modular_forms(long N, int k, const QSeries& f);
bool in_cusp_forms(long p, int k, const QSeries& f);

// ---------------------------------------------------------------------------
// Basis families.

struct BasisFamily {
  FormMeta meta;
  // m -> element with leading term q^{-m}; holomorphic elements have m <= 0.
  std::map<Exp, QSeries> elements;
  Exp gap_start = 0;  // first non-leading exponent above the top lead
  Exp m_max = 0;      // every lead -m with m <= m_max is present
  Exp trunc = 0;      // common truncation order of all elements

  bool has_lead(Exp m) const { return elements.count(m) != 0; }
  // The basis element f_{k,m}. Leading exponents that do not occur in the
  // space give the zero series (the canonical convention f_{k,m} = 0);
  // m beyond the constructed range is an error.
  QSeries element(Exp m) const;
  std::vector<Exp> ms() const;  // ascending
  Exp top_lead() const;         // largest leading exponent (= -min m)
};

// The integrality class of a family: 2 when coefficients may carry a single
// factor 2 in the denominator (level 28, weight = 5/2 mod 6, or the
// vanishing-at-zero family dual to such a weight), else 1.
long integrality_denominator(long level, int weight2, bool vanish_at_zero = false);

struct SeedReport {
  bool accepted = false;
  std::string reason;
  long level = 0;
  int weight2 = 0;
  Exp verified_lo = 0, verified_hi = 0;  // exponent range checked
};

struct SeedSet {
  long level = 0;
  std::map<int, std::vector<QSeries>> by_weight2;  // reduced echelon seeds
  std::string provenance;
};

// Validates one seed: plus-space support, theta-multiplied Sturm membership
// in M_{s+1}(level) or M_{s+2}(level), and the integrality class.
SeedReport validate_seed(const QSeries& f, int weight2, long level);
// Reads <dir>/<level>/<weight2>/<index>.qs (with '#meta' headers) and
// validates every seed; throws std::runtime_error on the first rejection.
SeedSet ingest_seeds(const std::string& dir, long level);

struct SpacesConfig {
  std::string seed_dir;   // default: the repository's data/seeds
  std::string cache_dir;  // empty: no disk cache
};
void set_spaces_config(const SpacesConfig& cfg);
SpacesConfig spaces_config();

// f^{(p)}_{k,m} (vanish_at_zero = false) or g^{(p)}_{k,m} (true) for even k.
BasisFamily integer_basis(long p, int weight2, bool vanish_at_zero, Exp m_max, Exp trunc);
// Plus-space families at level 4p of weight weight2/2 (weight2 odd).
BasisFamily plus_basis(long p, int weight2, bool vanish_at_zero, Exp m_max, Exp trunc);
// Plus-space families at level 4.
BasisFamily level4_basis(int weight2, Exp m_max, Exp trunc);
// Dispatch on level: p, 4p or 4.
BasisFamily basis_family(long level, int weight2, bool vanish_at_zero, Exp m_max, Exp trunc);

// Products of plus-space forms with Psi_p(4z): a subspace of the
// vanishing-at-zero family (used as an independent cross-check).
BasisFamily plus_psi_products(long p, int weight2, Exp m_max, Exp trunc);

// Drops all in-memory family and seed caches (tests).
void clear_space_caches();

}  // namespace zagier
