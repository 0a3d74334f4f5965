// Holomorphic integer-weight spaces M_k(Gamma0(N)) with trivial character.
//
// Spanning set: Eisenstein series E_w^{psi,phi}(tz) with primitive quadratic
// characters psi, phi whose conductors satisfy cond(psi) cond(phi) t | N,
// the weight-2 combinations E2(z) - d E2(dz) for d | N, and all pairwise
// products of these whose weights add to k and whose characters cancel.
// Candidates are added greedily while tracking rank on the Sturm window;
// the final rank must equal the dimension formula.
#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "zagier/arith.hpp"
#include "zagier/linalg.hpp"
#include "zagier/modforms.hpp"
#include "zagier/spaces.hpp"

namespace zagier {

long sturm_bound(int weight2, long level) {
  if (weight2 < 0) throw std::invalid_argument("sturm_bound: weight must be non-negative");
  if (level < 1) throw std::invalid_argument("sturm_bound: level must be positive");
  // ceil(weight2 * index / 24) + 1
  const long num = static_cast<long>(weight2) * gamma0_index(level);
  return (num + 23) / 24 + 1;
}

namespace {

struct Atom {
  int w = 0;
  long chi = 1;  // discriminant of the character
  bool e2diff = false;
  long D1 = 1, D2 = 1, t = 1, d = 1;

  QSeries expand(Exp trunc) const {
    if (e2diff) {
      QSeries e2 = eisenstein_e2(trunc);
      QSeries e2d = v_op(eisenstein_e2((trunc + d - 1) / d), d).truncated(trunc);
      return sub(e2, e2d.scaled(d));
    }
    return eisenstein_char(w, D1, D2, t, trunc);
  }
};

std::vector<long> fundamental_discs_dividing(long N) {
  std::vector<long> out;
  for (long D = -4 * N; D <= 4 * N; ++D) {
    if (D == 0) continue;
    if (is_fundamental_discriminant(D) && N % std::labs(D) == 0) out.push_back(D);
  }
  return out;
}

std::vector<Atom> atoms_for(long N, int kmax) {
  std::vector<Atom> atoms;
  const auto Ds = fundamental_discs_dividing(N);
  for (int w = 1; w <= kmax; ++w) {
    for (long D1 : Ds) {
      for (long D2 : Ds) {
        const long cond = std::labs(D1) * std::labs(D2);
        if (N % cond != 0) continue;
        if ((D1 * D2 < 0) != (w % 2 == 1)) continue;
        if (w == 2 && D1 == 1 && D2 == 1) continue;
        // E_1^{psi,1} = E_1^{1,psi}: keep one of them.
        if (w == 1 && D2 == 1) continue;
        for (long t : divisors(N / cond)) {
          Atom a;
          a.w = w;
          a.chi = fundamental_part(D1 * D2);
          a.D1 = D1;
          a.D2 = D2;
          a.t = t;
          atoms.push_back(a);
        }
      }
    }
  }
  if (kmax >= 2) {
    for (long d : divisors(N)) {
      if (d == 1) continue;
      Atom a;
      a.w = 2;
      a.e2diff = true;
      a.d = d;
      atoms.push_back(a);
    }
  }
  return atoms;
}

struct HoloSpace {
  long N = 1;
  int k = 0;
  std::vector<Atom> atoms;
  std::vector<std::pair<int, int>> recipes;  // atom indices; second -1 if single
  std::vector<QSeries> echelon;              // cached reduced basis
  Exp echelon_trunc = 0;
};

std::mutex& holo_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::pair<long, int>, HoloSpace>& holo_cache() {
  static std::map<std::pair<long, int>, HoloSpace> c;
  return c;
}

QSeries expand_recipe(const HoloSpace& sp, std::pair<int, int> r, std::map<int, QSeries>& memo, Exp trunc) {
  auto get = [&](int i) -> const QSeries& {
    auto it = memo.find(i);
    if (it == memo.end()) it = memo.emplace(i, sp.atoms[static_cast<std::size_t>(i)].expand(trunc)).first;
    return it->second;
  };
  if (r.second < 0) return get(r.first);
  return mul(get(r.first), get(r.second));
}

HoloSpace build_space(long N, int k) {
  HoloSpace sp;
  sp.N = N;
  sp.k = k;
  const long dim = dim_modular_forms(N, k);
  if (k == 0 || dim == 0) return sp;
  sp.atoms = atoms_for(N, k);
  const Exp S = sturm_bound(2 * k, N);
  IncrementalEchelon ech(0, S);
  std::map<int, QSeries> memo;
  auto try_add = [&](std::pair<int, int> r) {
    if (static_cast<long>(ech.rank()) >= dim) return;
    if (ech.add(expand_recipe(sp, r, memo, S))) sp.recipes.push_back(r);
  };
  const int na = static_cast<int>(sp.atoms.size());
  for (int i = 0; i < na; ++i) {
    const Atom& a = sp.atoms[static_cast<std::size_t>(i)];
    if (a.w == k && a.chi == 1) try_add({i, -1});
  }
  for (int i = 0; i < na; ++i) {
    for (int j = i; j < na; ++j) {
      const Atom& a = sp.atoms[static_cast<std::size_t>(i)];
      const Atom& b = sp.atoms[static_cast<std::size_t>(j)];
      if (a.w + b.w != k) continue;
      if (fundamental_part(a.chi * b.chi) != 1) continue;
      try_add({i, j});
    }
  }
  if (static_cast<long>(ech.rank()) != dim) {
    throw std::runtime_error("spanning set for M_" + std::to_string(k) + "(Gamma0(" + std::to_string(N) +
                             ")) reaches rank " + std::to_string(ech.rank()) + " of " + std::to_string(dim));
  }
  return sp;
}

HoloSpace& holo_space(long N, int k) {
  auto& cache = holo_cache();
  auto it = cache.find({N, k});
  if (it == cache.end()) it = cache.emplace(std::make_pair(N, k), build_space(N, k)).first;
  return it->second;
}

}  // namespace

std::vector<QSeries> modular_forms_basis(long N, int k, Exp trunc) {
  if (k < 0) return {};
  if (k % 2 != 0) throw std::invalid_argument("modular_forms_basis: odd weight");
  if (k == 0) return {QSeries::one().truncated(trunc)};
  std::lock_guard<std::mutex> lock(holo_mutex());
  HoloSpace& sp = holo_space(N, k);
  if (sp.echelon_trunc < trunc || sp.echelon.size() != sp.recipes.size()) {
    // The echelon is computed at least on the Sturm window so that it is
    // a basis; shorter requests are truncated copies.
    const Exp T = std::max<Exp>(trunc, sturm_bound(2 * k, N));
    std::map<int, QSeries> memo;
    std::vector<QSeries> gens;
    for (auto r : sp.recipes) gens.push_back(expand_recipe(sp, r, memo, T));
    sp.echelon = row_reduce(gens);
    sp.echelon_trunc = T;
    if (sp.echelon.size() != sp.recipes.size()) throw std::logic_error("modular_forms_basis: rank dropped");
  }
  std::vector<QSeries> out;
  for (const auto& f : sp.echelon) out.push_back(f.truncated(trunc));
  return out;
}

std::vector<QSeries> cusp_form_basis(long p, int k, Exp trunc) {
  if (!is_prime(p)) throw std::invalid_argument("cusp_form_basis: prime level expected");
  if (k < 2) return {};
  // f vanishes at the cusp 0 iff f * Phi_p is holomorphic there, so
  // S_k(p) = Psi_p * { F in M_k(p) : ord_inf F >= 2 }.
  auto basis = modular_forms_basis(p, k, trunc + 1);
  QSeries psi = hauptmodul_inverse(p, trunc + 1);
  std::vector<QSeries> gens;
  for (const auto& F : basis)
    if (F.lead() >= 2) gens.push_back(mul(F, psi).truncated(trunc));
  auto out = row_reduce(gens);
  if (static_cast<long>(out.size()) != dim_cusp_forms(p, k)) {
    throw std::runtime_error("cusp_form_basis: dimension mismatch for S_" + std::to_string(k) + "(" +
                             std::to_string(p) + ")");
  }
  return out;
}

bool in_modular_forms(long N, int k, const QSeries& f) {
  if (f.is_zero()) return true;
  if (f.lead() < 0) return false;
  const Exp S = sturm_bound(2 * std::max(k, 0), N);
  if (f.trunc() < S) throw std::invalid_argument("in_modular_forms: series shorter than the Sturm bound");
  auto basis = modular_forms_basis(N, k, S);
  IncrementalEchelon ech(0, S);
  for (const auto& b : basis) ech.add(b);
  return ech.contains(f.truncated(S));
}

bool in_cusp_forms(long p, int k, const QSeries& f) {
  if (f.is_zero()) return true;
  if (f.lead() < 1) return false;
  const Exp S = sturm_bound(2 * std::max(k, 0), p);
  if (f.trunc() < S) throw std::invalid_argument("in_cusp_forms: series shorter than the Sturm bound");
  auto basis = cusp_form_basis(p, k, S);
  IncrementalEchelon ech(0, S);
  for (const auto& b : basis) ech.add(b);
  return ech.contains(f.truncated(S));
}

}  // namespace zagier
