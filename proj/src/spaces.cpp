#include "zagier/spaces.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "zagier/arith.hpp"
#include "zagier/linalg.hpp"
#include "zagier/modforms.hpp"

namespace fs = std::filesystem;

namespace zagier {

namespace {

std::mutex& config_mutex() {
  static std::mutex m;
  return m;
}

SpacesConfig& config_ref() {
  static SpacesConfig c{ZAGIER_DEFAULT_SEED_DIR, ""};
  return c;
}

// Residues mod 4 allowed in the plus space of weight weight2/2.
std::pair<int, int> plus_residues(int weight2) {
  const int s = (weight2 - 1) / 2;  // exact: weight2 is odd
  return {0, (s % 2 == 0) ? 1 : 3};  // (-1)^s mod 4
}

bool in_plus_support(Exp n, int weight2) {
  auto [a, b] = plus_residues(weight2);
  const Exp r = ((n % 4) + 4) % 4;
  return r == a || r == b;
}

// Indices of stored exponents violating the plus-space condition.
bool plus_support_ok(const QSeries& f, int weight2) {
  for (Exp n = f.lead(); n < f.stored_end(); ++n) {
    if (f.at(n) != 0 && !in_plus_support(n, weight2)) return false;
  }
  return true;
}

bool integral_up_to(const QSeries& f, long den) {
  for (const auto& c : f.coeffs()) {
    if (c.get_den() == 1) continue;
    if (den % c.get_den() != 0) return false;
  }
  return true;
}

// theta^e * f is a holomorphic integer-weight form of weight k with trivial
// character. The extra theta^4 (weight 2, trivial character on Gamma0(4)) is
// used when the spanning set does not reach the smaller weight.
struct ThetaMultiplier {
  int e = 1;
  int k = 0;
};

bool holomorphic_space_available(long level, int k) {
  static std::mutex m;
  static std::map<std::pair<long, int>, bool> memo;
  std::lock_guard<std::mutex> lock(m);
  auto it = memo.find({level, k});
  if (it != memo.end()) return it->second;
  bool ok = true;
  try {
    (void)modular_forms_basis(level, k, 1);
  } catch (const std::runtime_error&) {
    ok = false;
  }
  memo[{level, k}] = ok;
  return ok;
}

ThetaMultiplier theta_multiplier(int weight2, long level) {
  const int s = (weight2 - 1) / 2;
  ThetaMultiplier t{(s % 2 == 1) ? 1 : 3, (s % 2 == 1) ? s + 1 : s + 2};
  if (!holomorphic_space_available(level, t.k)) {
    t.e += 4;
    t.k += 2;
  }
  return t;
}

}  // namespace

void set_spaces_config(const SpacesConfig& cfg) {
  std::lock_guard<std::mutex> lock(config_mutex());
  config_ref() = cfg;
}

SpacesConfig spaces_config() {
  std::lock_guard<std::mutex> lock(config_mutex());
  return config_ref();
}

long integrality_denominator(long level, int weight2, bool vanish_at_zero) {
  // The g-family is dual to the f-family of weight2 4 - weight2.
  const int w = vanish_at_zero ? 4 - weight2 : weight2;
  if (level == 28 && w % 2 != 0 && (((w - 5) % 12) + 12) % 12 == 0) return 2;
  return 1;
}

// ---------------------------------------------------------------------------
// BasisFamily

QSeries BasisFamily::element(Exp m) const {
  if (m > m_max) {
    throw std::out_of_range("basis element with leading exponent " + std::to_string(-m) + " (level " +
                            std::to_string(meta.level) + ", weight2 " + std::to_string(meta.weight2) +
                            ") is outside the constructed range m <= " + std::to_string(m_max));
  }
  auto it = elements.find(m);
  if (it == elements.end()) return QSeries::zero(trunc);
  return it->second;
}

std::vector<Exp> BasisFamily::ms() const {
  std::vector<Exp> v;
  for (const auto& [m, f] : elements) v.push_back(m);
  return v;
}

Exp BasisFamily::top_lead() const {
  if (elements.empty()) throw std::logic_error("empty basis family");
  return -elements.begin()->first;
}

// ---------------------------------------------------------------------------
// Seeds

SeedReport validate_seed(const QSeries& f, int weight2, long level) {
  SeedReport rep;
  rep.level = level;
  rep.weight2 = weight2;
  if (weight2 % 2 == 0 || weight2 < 1 || level % 4 != 0) {
    rep.reason = "seed rejected: not modular of claimed type (weight/level)";
    return rep;
  }
  if (!f.is_zero() && f.lead() < 0) {
    rep.reason = "seed rejected: not modular of claimed type (pole at infinity)";
    return rep;
  }
  if (!plus_support_ok(f, weight2)) {
    rep.reason = "seed rejected: plus-space";
    return rep;
  }
  if (!integral_up_to(f, integrality_denominator(level, weight2))) {
    rep.reason = "seed rejected: integrality";
    return rep;
  }
  const auto [e, k] = theta_multiplier(weight2, level);
  const Exp S = sturm_bound(2 * k, level);
  if (f.trunc() < S) {
    rep.reason = "seed rejected: not modular of claimed type (shorter than Sturm bound " + std::to_string(S) + ")";
    return rep;
  }
  QSeries th = theta(S);
  QSeries F = mul(pow(th, e), f);
  if (!in_modular_forms(level, k, F.truncated(S))) {
    rep.reason = "seed rejected: not modular of claimed type";
    return rep;
  }
  rep.accepted = true;
  rep.verified_lo = 0;
  rep.verified_hi = S;
  return rep;
}

namespace {

struct SeedFile {
  int weight2 = 0;
  long level = 0;
  bool plus = false;
  QSeries f;
};

SeedFile read_seed_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open seed file " + path.string());
  SeedFile sf;
  std::string line;
  std::streampos pos = in.tellg();
  bool have_meta = false;
  while (std::getline(in, line)) {
    if (line.rfind("#meta", 0) == 0) {
      std::istringstream ms(line.substr(5));
      std::string tok;
      while (ms >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad #meta field in " + path.string());
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "weight2") sf.weight2 = std::stoi(val);
        else if (key == "level") sf.level = std::stol(val);
        else if (key == "plus") sf.plus = (val == "1");
        else throw std::runtime_error("unknown #meta field '" + key + "' in " + path.string());
      }
      have_meta = true;
      pos = in.tellg();
      continue;
    }
    break;
  }
  if (!have_meta) throw std::runtime_error("seed file without #meta header: " + path.string());
  in.clear();
  in.seekg(pos);
  sf.f = QSeries::read(in);
  return sf;
}

std::mutex& seed_mutex() {
  static std::mutex m;
  return m;
}

std::map<long, SeedSet>& seed_cache() {
  static std::map<long, SeedSet> c;
  return c;
}

}  // namespace

SeedSet ingest_seeds(const std::string& dir, long level) {
  SeedSet set;
  set.level = level;
  const fs::path base = fs::path(dir) / std::to_string(level);
  if (!fs::is_directory(base)) throw std::runtime_error("seeds missing: no directory " + base.string());
  std::ifstream prov(fs::path(dir) / "PROVENANCE.md");
  if (prov) {
    std::ostringstream os;
    os << prov.rdbuf();
    set.provenance = os.str();
  }
  for (const auto& wdir : fs::directory_iterator(base)) {
    if (!wdir.is_directory()) continue;
    const int weight2 = std::stoi(wdir.path().filename().string());
    std::vector<std::pair<int, fs::path>> files;
    for (const auto& fe : fs::directory_iterator(wdir.path())) {
      if (fe.path().extension() != ".qs") continue;
      files.emplace_back(std::stoi(fe.path().stem().string()), fe.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<QSeries> seeds;
    for (const auto& [idx, path] : files) {
      SeedFile sf = read_seed_file(path);
      if (sf.weight2 != weight2 || sf.level != level || !sf.plus) {
        throw std::runtime_error("seed rejected: metadata mismatch in " + path.string());
      }
      SeedReport rep = validate_seed(sf.f, weight2, level);
      if (!rep.accepted) throw std::runtime_error(rep.reason + " (" + path.string() + ")");
      seeds.push_back(sf.f);
    }
    // Seeds must form a reduced echelon basis of the plus space.
    auto red = row_reduce(seeds);
    if (red.size() != seeds.size()) throw std::runtime_error("seed rejected: linearly dependent seeds at weight2 " + std::to_string(weight2));
    const long p = level / 4;
    const long expect = dim_modular_forms(p, weight2 - 1);
    if (static_cast<long>(seeds.size()) != expect) {
      throw std::runtime_error("seed rejected: level " + std::to_string(level) + " weight2 " + std::to_string(weight2) +
                               " has " + std::to_string(seeds.size()) + " seeds, expected " + std::to_string(expect));
    }
    set.by_weight2[weight2] = std::move(red);
  }
  if (set.by_weight2.empty()) throw std::runtime_error("seeds missing for level " + std::to_string(level));
  return set;
}

namespace {

const SeedSet& seeds_for(long level) {
  std::lock_guard<std::mutex> lock(seed_mutex());
  auto& cache = seed_cache();
  auto it = cache.find(level);
  if (it == cache.end()) it = cache.emplace(level, ingest_seeds(spaces_config().seed_dir, level)).first;
  return it->second;
}

// Extends a validated holomorphic seed beyond its stored length: theta^e * f
// is an integer-weight form, so it is recovered exactly from the integer
// weight basis and divided by theta^e again.
QSeries extend_seed(const QSeries& f, int weight2, long level, Exp trunc) {
  if (f.trunc() >= trunc) return f.truncated(trunc);
  const auto [e, k] = theta_multiplier(weight2, level);
  QSeries th = pow(theta(f.trunc()), e);
  QSeries F = mul(th, f);
  auto basis = modular_forms_basis(level, k, trunc);
  QSeries G = QSeries::zero(trunc);
  for (const auto& b : basis) {
    const mpq_class& c = F.at(b.lead());
    if (c != 0) G = add(G, b.scaled(c));
  }
  if (!G.truncated(F.trunc()).agrees_with(F)) {
    throw std::runtime_error("seed extension failed: theta-multiplied seed is not in the integer-weight span");
  }
  QSeries ext = mul(G, invert(pow(theta(trunc), e)));
  return ext.truncated(trunc);
}

// ---------------------------------------------------------------------------
// Family assembly

Exp compute_gap_start(const BasisFamily& fam) {
  if (fam.elements.empty()) return 0;
  Exp e = fam.top_lead() + 1;
  while (true) {
    const bool allowed = !fam.meta.plus || in_plus_support(e, fam.meta.weight2);
    if (allowed && !fam.has_lead(-e)) return e;
    ++e;
  }
}

BasisFamily assemble(const FormMeta& meta, const std::vector<QSeries>& gens, Exp m_max, Exp trunc) {
  BasisFamily fam;
  fam.meta = meta;
  fam.m_max = m_max;
  fam.trunc = trunc;
  auto red = row_reduce(gens);
  const long den = integrality_denominator(meta.level, meta.weight2, meta.vanishes_at_zero);
  for (auto& f : red) {
    const Exp m = -f.lead();
    if (m > m_max) continue;
    if (f.trunc() < trunc) {
      throw std::logic_error("basis construction lost precision: have " + std::to_string(f.trunc()) + ", need " +
                             std::to_string(trunc));
    }
    QSeries g = f.truncated(trunc);
    if (meta.plus && !plus_support_ok(g, meta.weight2)) {
      throw std::runtime_error("basis element violates the plus-space condition (level " + std::to_string(meta.level) +
                               ", weight2 " + std::to_string(meta.weight2) + ", m " + std::to_string(m) + ")");
    }
    if (!integral_up_to(g, den)) {
      throw std::runtime_error("basis element has coefficients outside the declared integrality class (level " +
                               std::to_string(meta.level) + ", weight2 " + std::to_string(meta.weight2) + ", m " +
                               std::to_string(m) + ")");
    }
    fam.elements.emplace(m, std::move(g));
  }
  fam.gap_start = compute_gap_start(fam);
  return fam;
}

BasisFamily restrict_family(const BasisFamily& fam, Exp m_max, Exp trunc) {
  BasisFamily out;
  out.meta = fam.meta;
  out.m_max = m_max;
  out.trunc = trunc;
  for (const auto& [m, f] : fam.elements)
    if (m <= m_max) out.elements.emplace(m, f.truncated(trunc));
  out.gap_start = fam.gap_start;
  return out;
}

BasisFamily build_integer(long p, int weight2, bool vanish, Exp m_max, Exp trunc) {
  if (!is_supported_prime(p)) throw std::invalid_argument("unsupported level " + std::to_string(p));
  if (weight2 % 4 != 0) throw std::invalid_argument("integer-weight families need even weight (weight2 divisible by 4)");
  const int k = weight2 / 2;
  const int w = ladder_weight2(p) / 2;
  const EtaQuotient L = ladder_eta(p);
  const Exp nL = L.lead();
  int i = 0;
  while (k + i * w < 0) ++i;
  const int K = k + i * w;
  const Exp shift = static_cast<Exp>(i) * nL;  // lead lost by dividing by L^i
  const Exp extra = vanish ? 1 : 0;
  const Exp J = std::max<Exp>(0, m_max - shift - extra);
  const Exp T0 = trunc + shift + J + extra + 2;
  auto B = modular_forms_basis(p, K, T0);
  const QSeries* hc = nullptr;
  for (const auto& b : B)
    if (b.lead() == 0) hc = &b;
  if (!hc) throw std::logic_error("no weight-" + std::to_string(K) + " form with nonzero constant term");
  const QSeries psi = hauptmodul_inverse(p, T0);
  std::vector<QSeries> pre;  // before division by L^i
  if (!vanish) {
    pre = B;
  } else {
    for (const auto& b : B) pre.push_back(mul(b, psi));
  }
  QSeries P = vanish ? mul(*hc, psi) : *hc;
  for (Exp j = 1; j <= J; ++j) {
    P = mul(P, psi);
    pre.push_back(P);
  }
  std::vector<QSeries> gens;
  if (i == 0) {
    gens = std::move(pre);
  } else {
    EtaQuotient Linv = L;
    for (auto& [d, r] : Linv.r) r = -r * i;
    const QSeries linv = eta_expand(Linv, trunc + J + extra + 2);
    for (const auto& g : pre) gens.push_back(mul(g, linv));
  }
  FormMeta meta{weight2, p, false, vanish};
  return assemble(meta, gens, m_max, trunc);
}

struct HalfLadder {
  long level = 0;
  int ladder_weight2 = 0;  // weight2 of the ladder form L(4z)
  std::function<QSeries(Exp)> ladder_inv_pow;  // L(4z)^{-i} (i bound by caller)
  Exp ladder_lead = 0;                         // lead of L(4z)
  std::function<QSeries(Exp)> lowering;        // function with a pole at infinity, lead -4
};

BasisFamily build_half(long level, int weight2, bool vanish, Exp m_max, Exp trunc) {
  if (weight2 % 2 == 0) throw std::invalid_argument("plus-space families need odd weight2");
  const long p = level / 4;
  if (level != 4 && (level % 4 != 0 || !is_supported_prime(p))) {
    throw std::invalid_argument("unsupported level " + std::to_string(level));
  }
  if (level == 4 && vanish) throw std::invalid_argument("level 4 has no vanishing-at-zero family");
  const SeedSet& seeds = seeds_for(level);
  // Ladder: L_p(4z) (or Delta(4z) at level 4); lowering: Psi_p(4z) (or j(4z)).
  EtaQuotient L = (level == 4) ? EtaQuotient{1, {{1, 24}}} : ladder_eta(p);
  const int wL2 = static_cast<int>(L.weight2());  // = 2 * weight
  const Exp nL4 = 4 * L.lead();
  auto [r0, r1] = plus_residues(weight2);
  // Choose the seed weight: smallest i >= 0 with seeds at weight2 + i*wL2
  // whose leads meet both residue classes.
  int i = 0;
  const int max_seed = seeds.by_weight2.rbegin()->first;
  const std::vector<QSeries>* S = nullptr;
  for (;; ++i) {
    const int K2 = weight2 + i * wL2;
    if (K2 > max_seed) break;
    auto it = seeds.by_weight2.find(K2);
    if (it == seeds.by_weight2.end()) continue;
    bool has0 = false, has1 = false;
    for (const auto& f : it->second) {
      const Exp r = ((f.lead() % 4) + 4) % 4;
      has0 = has0 || r == r0;
      has1 = has1 || r == r1;
    }
    if (has0 && has1) {
      S = &it->second;
      break;
    }
  }
  if (!S) {
    throw std::runtime_error("seeds missing: no seed weight reaches weight2 " + std::to_string(weight2) + " at level " +
                             std::to_string(level));
  }
  const int K2 = weight2 + i * wL2;
  const Exp shift = static_cast<Exp>(i) * nL4;
  const QSeries* h0 = nullptr;
  const QSeries* h1 = nullptr;
  for (const auto& f : *S) {
    const Exp r = ((f.lead() % 4) + 4) % 4;
    if (r == r0 && (!h0 || f.lead() > h0->lead())) h0 = &f;
    if (r == r1 && (!h1 || f.lead() > h1->lead())) h1 = &f;
  }
  const Exp extra = vanish ? 4 : 0;
  auto jmax = [&](const QSeries* h) -> Exp {
    const Exp room = h->lead() + shift + m_max - extra;
    return room < 0 ? 0 : room / 4;
  };
  const Exp J = std::max(jmax(h0), jmax(h1));
  const Exp T0 = trunc + shift + 4 * J + extra + 8;
  // Seeds at the required precision (extended through the integer-weight
  // span when the stored expansion is too short).
  std::vector<QSeries> base;
  for (const auto& f : *S) base.push_back(extend_seed(f, K2, level, T0));
  const Exp Tq = (T0 + 3) / 4 + 2;
  QSeries low = (level == 4)
                    ? v_op(divide(pow(eisenstein(4, Tq + 1), 3), delta_form(Tq + 1)), 4)
                    : v_op(hauptmodul_inverse(p, Tq), 4);
  low = low.truncated(T0);
  auto find_base = [&](const QSeries* h) -> const QSeries& {
    return base[static_cast<std::size_t>(h - S->data())];
  };
  std::vector<QSeries> pre;
  for (const auto& b : base) pre.push_back(vanish ? mul(b, low) : b);
  for (const QSeries* h : {h0, h1}) {
    QSeries P = vanish ? mul(find_base(h), low) : find_base(h);
    for (Exp j = 1; j <= jmax(h); ++j) {
      P = mul(P, low);
      pre.push_back(P);
    }
  }
  std::vector<QSeries> gens;
  if (i == 0) {
    gens = std::move(pre);
  } else {
    EtaQuotient Linv = L;
    for (auto& [d, r] : Linv.r) r = -r * i;
    const Exp need = trunc + 4 * J + extra + 16 + shift;  // covers the most negative generator lead
    const QSeries linv = v_op(eta_expand(Linv, (need + 3) / 4 + 1), 4).truncated(need);
    for (const auto& g : pre) gens.push_back(mul(g, linv));
  }
  FormMeta meta{weight2, level, true, vanish};
  return assemble(meta, gens, m_max, trunc);
}

struct FamilyKey {
  long level;
  int weight2;
  bool vanish;
  auto operator<=>(const FamilyKey&) const = default;
};

std::recursive_mutex& family_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::map<FamilyKey, BasisFamily>& family_cache() {
  static std::map<FamilyKey, BasisFamily> c;
  return c;
}

fs::path family_dir(const std::string& cache_dir, const FamilyKey& key) {
  return fs::path(cache_dir) / std::to_string(key.level) / std::to_string(key.weight2) / (key.vanish ? "g" : "f");
}

void save_family(const std::string& cache_dir, const FamilyKey& key, const BasisFamily& fam) {
  const fs::path dir = family_dir(cache_dir, key);
  std::error_code ec;
  fs::remove_all(dir, ec);
  fs::create_directories(dir);
  {
    std::ofstream meta(dir / "family.meta");
    meta << "#family level=" << key.level << " weight2=" << key.weight2 << " vanish=" << (key.vanish ? 1 : 0)
         << " m_max=" << fam.m_max << " trunc=" << fam.trunc << " gap_start=" << fam.gap_start << "\n";
  }
  for (const auto& [m, f] : fam.elements) {
    std::ofstream out(dir / (std::to_string(m) + ".qs"));
    out << "#meta weight2=" << key.weight2 << " level=" << key.level << " plus=" << (fam.meta.plus ? 1 : 0) << "\n";
    f.write(out);
  }
}

std::optional<BasisFamily> load_family(const std::string& cache_dir, const FamilyKey& key, Exp m_max, Exp trunc) {
  const fs::path dir = family_dir(cache_dir, key);
  std::ifstream meta(dir / "family.meta");
  if (!meta) return std::nullopt;
  std::string tag;
  meta >> tag;
  std::map<std::string, long long> fields;
  std::string tok;
  while (meta >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) return std::nullopt;
    fields[tok.substr(0, eq)] = std::stoll(tok.substr(eq + 1));
  }
  if (fields["m_max"] < m_max || fields["trunc"] < trunc) return std::nullopt;
  BasisFamily fam;
  fam.meta = FormMeta{key.weight2, key.level, key.weight2 % 2 != 0, key.vanish};
  fam.m_max = fields["m_max"];
  fam.trunc = fields["trunc"];
  fam.gap_start = fields["gap_start"];
  for (const auto& fe : fs::directory_iterator(dir)) {
    if (fe.path().extension() != ".qs") continue;
    SeedFile sf = read_seed_file(fe.path());
    const Exp m = std::stoll(fe.path().stem().string());
    fam.elements.emplace(m, sf.f);
  }
  return restrict_family(fam, m_max, trunc);
}

BasisFamily cached_family(const FamilyKey& key, Exp m_max, Exp trunc);

// The subspace of the plus-space family vanishing at the cusp 0 (and the
// cusps tied to it). Its value there is proportional to the constant term of
// h * g for any h of complementary weight that is non-zero at 0, so the
// family is the kernel of that pairing for the first reference form h that
// detects it.
BasisFamily build_half_vanishing(long level, int weight2, Exp m_max, Exp trunc) {
  if (level == 4) throw std::invalid_argument("level 4 has no vanishing-at-zero family");
  auto pairing = [](const QSeries& h, const QSeries& g) {
    mpq_class ct = 0;
    for (Exp n = h.lead(); n <= -g.lead(); ++n) {
      if (n >= h.trunc() || -n >= g.trunc()) throw std::logic_error("vanishing family: pairing window too short");
      const mpq_class& a = h.at(n);
      if (a != 0) ct += a * g.at(-n);
    }
    return ct;
  };
  Exp searched = std::numeric_limits<Exp>::min();
  for (Exp m_ref = 24; m_ref <= 384; m_ref *= 2) {
    const BasisFamily F = cached_family({level, weight2, false}, m_max, std::max(trunc, m_ref + 1));
    const BasisFamily H = cached_family({level, 4 - weight2, false}, m_ref, m_max + 1);
    for (const auto& [mh, h] : H.elements) {
      if (mh <= searched) continue;
      std::map<Exp, mpq_class> phi;
      const QSeries* pivot = nullptr;
      mpq_class phi_pivot;
      for (const auto& [m, f] : F.elements) {
        phi[m] = pairing(h, f);
        if (!pivot && phi[m] != 0) {
          pivot = &f;
          phi_pivot = phi[m];
        }
      }
      if (!pivot) continue;
      std::vector<QSeries> gens;
      for (const auto& [m, f] : F.elements) {
        if (&f == pivot) continue;
        QSeries g = phi[m] == 0 ? f : add(f, pivot->scaled(mpq_class(-phi[m] / phi_pivot)));
        gens.push_back(g.truncated(trunc));
      }
      FormMeta meta{weight2, level, true, true};
      return assemble(meta, gens, m_max, trunc);
    }
    searched = m_ref;
  }
  throw std::runtime_error("vanishing family: no reference form detects the cusp at 0 at level " +
                           std::to_string(level) + ", weight2 " + std::to_string(weight2));
}

BasisFamily cached_family(const FamilyKey& key, Exp m_max, Exp trunc) {
  std::lock_guard<std::recursive_mutex> lock(family_mutex());
  auto& cache = family_cache();
  auto it = cache.find(key);
  if (it != cache.end() && it->second.m_max >= m_max && it->second.trunc >= trunc) {
    return restrict_family(it->second, m_max, trunc);
  }
  const std::string cache_dir = spaces_config().cache_dir;
  if (!cache_dir.empty()) {
    if (auto loaded = load_family(cache_dir, key, m_max, trunc)) return *loaded;
  }
  Exp M = m_max, T = trunc;
  if (it != cache.end()) {
    M = std::max(M, it->second.m_max);
    T = std::max(T, it->second.trunc);
  }
  BasisFamily fam;
  if (key.weight2 % 2 == 0) fam = build_integer(key.level, key.weight2, key.vanish, M, T);
  else if (key.vanish) fam = build_half_vanishing(key.level, key.weight2, M, T);
  else fam = build_half(key.level, key.weight2, false, M, T);
  cache[key] = fam;
  if (!cache_dir.empty()) save_family(cache_dir, key, fam);
  return restrict_family(fam, m_max, trunc);
}

}  // namespace

BasisFamily integer_basis(long p, int weight2, bool vanish_at_zero, Exp m_max, Exp trunc) {
  if (!is_supported_prime(p)) throw std::invalid_argument("unsupported level " + std::to_string(p));
  if (weight2 % 4 != 0) throw std::invalid_argument("integer-weight families need even weight");
  return cached_family({p, weight2, vanish_at_zero}, m_max, trunc);
}

BasisFamily plus_basis(long p, int weight2, bool vanish_at_zero, Exp m_max, Exp trunc) {
  if (!is_supported_prime(p)) throw std::invalid_argument("unsupported p " + std::to_string(p));
  if (weight2 % 2 == 0) throw std::invalid_argument("plus-space families need half-integral weight");
  return cached_family({4 * p, weight2, vanish_at_zero}, m_max, trunc);
}

BasisFamily level4_basis(int weight2, Exp m_max, Exp trunc) {
  if (weight2 % 2 == 0) throw std::invalid_argument("level 4 families need half-integral weight");
  return cached_family({4, weight2, false}, m_max, trunc);
}

BasisFamily basis_family(long level, int weight2, bool vanish_at_zero, Exp m_max, Exp trunc) {
  if (is_supported_prime(level)) return integer_basis(level, weight2, vanish_at_zero, m_max, trunc);
  if (level == 4) {
    if (vanish_at_zero) throw std::invalid_argument("level 4 has no vanishing-at-zero family");
    return level4_basis(weight2, m_max, trunc);
  }
  if (level % 4 == 0 && is_supported_prime(level / 4)) return plus_basis(level / 4, weight2, vanish_at_zero, m_max, trunc);
  throw std::invalid_argument("unsupported level " + std::to_string(level));
}

BasisFamily plus_psi_products(long p, int weight2, Exp m_max, Exp trunc) {
  if (!is_supported_prime(p)) throw std::invalid_argument("unsupported p " + std::to_string(p));
  return build_half(4 * p, weight2, true, m_max, trunc);
}

void clear_space_caches() {
  {
    std::lock_guard<std::recursive_mutex> lock(family_mutex());
    family_cache().clear();
  }
  std::lock_guard<std::mutex> lock(seed_mutex());
  seed_cache().clear();
}

}  // namespace zagier
