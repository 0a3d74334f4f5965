// Command-line front end: basis elements, lifts, traces, Heegner classes and
// verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zagier/arith.hpp"
#include "zagier/config.hpp"
#include "zagier/heegner.hpp"
#include "zagier/lifts.hpp"
#include "zagier/modforms.hpp"
#include "zagier/spaces.hpp"
#include "zagier/traces.hpp"

using namespace zagier;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

// Thrown for bad user input detected by the CLI itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QSeries read_form_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open form file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  // Seed-style files carry a '#meta' line before the series header.
  if (text.rfind("#meta", 0) == 0) text = text.substr(text.find('\n') + 1);
  try {
    return QSeries::from_text(text);
  } catch (const std::exception& e) {
    throw UsageError("malformed form file " + path + ": " + e.what());
  }
}

bool is_valid_level(long level) {
  return is_supported_prime(level) || level == 4 || (level % 4 == 0 && is_supported_prime(level / 4));
}

void check_level_weight(long level, int weight2) {
  if (!is_valid_level(level)) {
    throw UsageError("unsupported level " + std::to_string(level) + " (expected p, 4p with p in {3,5,7,13}, or 4)");
  }
  const bool half = weight2 % 2 != 0;
  if (is_supported_prime(level) && (half || weight2 % 4 != 0)) {
    throw UsageError("level " + std::to_string(level) + " needs an even integer weight (weight2 divisible by 4)");
  }
  if (!is_supported_prime(level) && !half) {
    throw UsageError("level " + std::to_string(level) + " needs a half-integral weight (odd weight2)");
  }
}

nlohmann::json rational_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

// ---------------------------------------------------------------------------

struct BasisArgs {
  long level = 0;
  int weight2 = 0;
  long m = 0;
  bool g = false;
  long trunc = 0;
};

int cmd_basis(const BasisArgs& a, const Config& cfg) {
  check_level_weight(a.level, a.weight2);
  if (a.g && a.level == 4) throw UsageError("level 4 has no vanishing-at-zero family");
  const Exp T = a.trunc > 0 ? a.trunc : cfg.default_trunc;
  if (T <= -a.m) throw UsageError("--trunc must exceed the leading exponent");
  const BasisFamily fam = basis_family(a.level, a.weight2, a.g, std::max<Exp>(a.m, 0), T);
  fam.element(a.m).write(std::cout);
  return kOk;
}

struct LiftArgs {
  long p = 0;
  int s = 0;
  long D = 0;
  std::string form;
  long trunc = 0;
  unsigned precision = 0;
};

void check_lift_inputs(long p, int s, long D) {
  if (!is_supported_prime(p)) throw UsageError("unsupported level " + std::to_string(p));
  if (s < 2) throw UsageError("--s must be at least 2");
  if (!is_fundamental_discriminant(D)) throw UsageError("--D " + std::to_string(D) + " is not a fundamental discriminant");
}

int cmd_lift(const LiftArgs& a, const Config& cfg) {
  check_lift_inputs(a.p, a.s, a.D);
  const QSeries f = read_form_file(a.form);
  const Exp T = a.trunc > 0 ? a.trunc : cfg.default_trunc;
  const unsigned bits = a.precision > 0 ? a.precision : cfg.precision_bits;
  const LiftResult r = zagier_lift(f, a.p, a.s, a.D, T, bits);
  r.image.write(std::cout);
  for (const auto& t : r.decomposition) {
    nlohmann::ordered_json j;
    j["level"] = t.level;
    j["weight2"] = t.weight2;
    j["m"] = t.m;
    j["multiplier"] = rational_json(t.multiplier);
    std::cout << j.dump() << "\n";
  }
  if (r.correction && !r.matching_window.empty()) {
    std::cerr << "holomorphic correction pinned by q^" << r.matching_window.front() << "..q^"
              << r.matching_window.back() << ", held-out q^" << r.held_out << " error " << r.held_out_error << "\n";
  }
  return kOk;
}

struct TraceArgs {
  long p = 0;
  int s = 0;
  long D = 0;
  std::vector<long> d;
  std::string form;
  unsigned precision = 0;
};

std::string trace_line(const TraceResult& t) {
  std::ostringstream os;
  os << t.d << " " << t.D << " " << to_string(t.value, 30) << " " << to_string(t.margin, 3) << " " << t.classes_used
     << " " << t.terms << " " << t.precision;
  return os.str();
}

int cmd_trace(const TraceArgs& a, const Config& cfg) {
  check_lift_inputs(a.p, a.s, a.D);
  const unsigned bits = a.precision > 0 ? a.precision : cfg.precision_bits;
  if (bits < 64) throw UsageError("--precision must be at least 64 bits");
  const QSeries f = read_form_file(a.form);
  for (long d : a.d) {
    try {
      TraceSpec{d, a.D, a.s, a.p}.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    std::cout << trace_line(trace_star_sharp(f, a.p, a.s, a.D, d, bits)) << "\n";
  }
  return kOk;
}

struct ClassesArgs {
  long disc = 0;
  long level = 0;
  long D = 1;
  int digits = 20;
};

int cmd_classes(const ClassesArgs& a) {
  if (a.disc >= 0 || !is_discriminant(a.disc)) throw UsageError("--disc must be a negative discriminant");
  if (a.level < 1) throw UsageError("--level must be positive");
  if (!is_fundamental_discriminant(a.D)) throw UsageError("--D must be a fundamental discriminant");
  PrecisionGuard guard(256);
  for (const auto& hc : enumerate_classes(a.disc, a.level, a.D)) {
    const Real re = Real(-hc.tau.b) / Real(2 * hc.tau.a);
    const Real im = sqrt(Real(-hc.tau.delta)) / Real(2 * hc.tau.a);
    std::cout << hc.rep.a << " " << hc.rep.b << " " << hc.rep.c << " " << hc.w << " " << hc.chi << " "
              << to_string(re, a.digits) << " " << to_string(im, a.digits) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// Verification suites. Each prints one line per check and returns false on
// the first failing identity (after reporting it).

struct VerifyArgs {
  std::string suite = "all";
  long level = 0;
  int weight2 = 0;
  bool weight_given = false;
  std::size_t window = 12;
  std::size_t sample = 1000;
  std::size_t pairs = 50;
};

// Default weight pairs per level.
std::vector<int> default_weights(long level) {
  if (is_supported_prime(level)) return {level == 13 ? -4 : -8, 0};
  return {5, -1};
}

bool suite_duality(const VerifyArgs& a, const std::vector<long>& levels) {
  bool ok = true;
  for (long level : levels) {
    const std::vector<int> ws = a.weight_given ? std::vector<int>{a.weight2} : default_weights(level);
    for (int w : ws) {
      const DualityReport r = duality_check(level, w, a.window);
      std::cout << "duality level " << level << " weight2 " << r.weight2_f << "/" << r.weight2_g << ": "
                << (r.ok ? "ok" : "FAILED") << " (" << r.checked << " identities)";
      if (!r.ok) std::cout << " " << r.first_failure;
      std::cout << "\n";
      ok = ok && r.ok;
    }
  }
  return ok;
}

bool suite_constant_term(const VerifyArgs& a, const std::vector<long>& levels) {
  bool ok = true;
  std::mt19937 rng(12345);
  for (long level : levels) {
    if (level == 4) continue;
    const long p = is_supported_prime(level) ? level : level / 4;
    const int wf = a.weight_given ? a.weight2 : default_weights(level).front();
    const int wg = 4 - wf;
    const Exp M = 16, T = 24;
    const BasisFamily F = basis_family(level, wf, false, M, T);
    const BasisFamily G = basis_family(level, wg, true, M, T);
    const auto fm = F.ms(), gl = G.ms();
    std::size_t zero = 0;
    for (std::size_t i = 0; i < a.pairs; ++i) {
      const Exp m = fm[rng() % fm.size()], l = gl[rng() % gl.size()];
      const auto r = constant_term_check(F.element(m), G.element(l), p);
      if (!r.vanishes) {
        std::cout << "constant-term level " << level << ": FAILED for (m, l) = (" << m << ", " << l
                  << "), constant " << r.constant.get_str() << "\n";
        ok = false;
        break;
      }
      ++zero;
    }
    if (ok) std::cout << "constant-term level " << level << ": ok (" << zero << " products)\n";
  }
  return ok;
}

bool suite_integrality(const VerifyArgs& a, const std::vector<long>& levels) {
  bool ok = true;
  for (long level : levels) {
    if (is_supported_prime(level)) continue;
    const std::vector<int> ws = a.weight_given ? std::vector<int>{a.weight2} : default_weights(level);
    for (int w : ws) {
      const IntegralityReport r = integrality_check(level, w, a.sample);
      std::cout << "integrality level " << level << " weight2 " << w << ": " << (r.ok ? "ok" : "FAILED") << " ("
                << r.coefficients << " coefficients, " << r.half_integral << " with denominator 2)";
      if (!r.ok) std::cout << " " << r.first_failure;
      std::cout << "\n";
      ok = ok && r.ok;
    }
  }
  return ok;
}

// Tr* of E2^(5)/H4^(5) (principal part q^-2 + 4 q^-1) against the
// coefficients of its exact Zagier lift.
bool suite_traces(const Config& cfg) {
  const QSeries f = add(QSeries::monomial(-2), QSeries::monomial(-1, 4));
  const LiftResult lift = zagier_lift_neg_weight_image(f, 5, 2, 1, 40);
  bool ok = true;
  for (long d : {-4L, -11L, -15L, -16L, -19L}) {
    const TraceResult t = trace_star_sharp(f, 5, 2, 1, d, cfg.precision_bits);
    const Real expected = to_real(lift.image.at(-d));
    const Real err = abs(t.value - expected);
    const bool good = err < to_real(cfg.tolerance);
    std::cout << "trace d " << d << ": Tr* = " << to_string(t.value, 20) << ", coefficient "
              << lift.image.at(-d).get_str() << ": " << (good ? "ok" : "FAILED") << "\n";
    ok = ok && good;
  }
  for (long m : {1L, 2L, 3L}) {
    const IdentityReport r = trace_identity_check(f, 2, 5, m, 1, -4, cfg.precision_bits);
    const bool good = r.discrepancy < to_real(cfg.tolerance);
    std::cout << "trace identity m " << m << ": " << (good ? "ok" : "FAILED") << " (discrepancy "
              << to_string(r.discrepancy, 3) << ")\n";
    ok = ok && good;
  }
  return ok;
}

int cmd_verify(const VerifyArgs& a, const Config& cfg) {
  static const std::vector<std::string> suites{"duality", "constant-term", "integrality", "traces", "all"};
  if (std::find(suites.begin(), suites.end(), a.suite) == suites.end()) {
    throw UsageError("unknown suite '" + a.suite + "'");
  }
  std::vector<long> levels;
  if (a.level != 0) {
    if (!is_valid_level(a.level)) throw UsageError("unsupported level " + std::to_string(a.level));
    if (a.weight_given) check_level_weight(a.level, a.weight2);
    levels = {a.level};
  } else {
    if (a.weight_given) throw UsageError("--weight2 needs --level");
    levels = {3, 5, 7, 13, 12, 20, 28, 52};
  }
  bool ok = true;
  try {
    if (a.suite == "duality" || a.suite == "all") ok = suite_duality(a, levels) && ok;
    if (a.suite == "constant-term" || a.suite == "all") ok = suite_constant_term(a, levels) && ok;
    if (a.suite == "integrality" || a.suite == "all") ok = suite_integrality(a, levels) && ok;
    if (a.suite == "traces" || a.suite == "all") ok = suite_traces(cfg) && ok;
  } catch (const std::exception& e) {
    // Inconsistent cached or seed data surfaces here.
    std::cout << "verification aborted: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical bases of weakly holomorphic modular forms, Zagier lifts and twisted traces"};
  app.require_subcommand(1);

  BasisArgs ba;
  auto* basis = app.add_subcommand("basis", "Print a canonical basis element f_{k,m} (or g_{k,m} with --g)");
  basis->add_option("--level", ba.level, "level: p, 4p or 4")->required();
  basis->add_option("--weight2", ba.weight2, "twice the weight")->required();
  basis->add_option("--m", ba.m, "leading term q^{-m}")->required();
  basis->add_flag("--g", ba.g, "element of the family vanishing at the cusp 0");
  basis->add_option("--trunc", ba.trunc, "truncation order (default from config)");

  LiftArgs la;
  auto* lift = app.add_subcommand("lift", "Zagier lift of a weight 2-2s form given by a series or principal part file");
  lift->add_option("--p", la.p, "level p")->required();
  lift->add_option("--s", la.s, "s >= 2 (input weight 2-2s)")->required();
  lift->add_option("--D", la.D, "fundamental discriminant")->required();
  lift->add_option("form", la.form, "form file (QSeries text)")->required();
  lift->add_option("--trunc", la.trunc, "truncation order of the image (default from config)");
  lift->add_option("--precision", la.precision, "MPFR bits for trace-pinned corrections");

  TraceArgs ta;
  auto* trace_cmd = app.add_subcommand("trace", "Starred twisted traces Tr*_{d,D}");
  trace_cmd->add_option("--p", ta.p, "level p")->required();
  trace_cmd->add_option("--s", ta.s, "s >= 2")->required();
  trace_cmd->add_option("--D", ta.D, "fundamental discriminant")->required();
  trace_cmd->add_option("--d", ta.d, "discriminant(s) d with dD < 0")->required();
  trace_cmd->add_option("form", ta.form, "form file (QSeries text)")->required();
  trace_cmd->add_option("--precision", ta.precision, "MPFR bits (default from config)");

  ClassesArgs ca;
  auto* classes = app.add_subcommand("classes", "Gamma0(N)-classes of Heegner forms: a b c w chi tau_re tau_im");
  classes->add_option("--disc", ca.disc, "discriminant b^2 - 4ac < 0")->required();
  classes->add_option("--level", ca.level, "level N")->required();
  classes->add_option("--D", ca.D, "fundamental discriminant for the genus character (default 1)");
  classes->add_option("--digits", ca.digits, "decimal digits for tau");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run verification suites: duality, constant-term, integrality, traces, all");
  verify->add_option("suite", va.suite, "suite name (default all)");
  verify->add_option("--level", va.level, "restrict to one level");
  auto* wopt = verify->add_option("--weight2", va.weight2, "weight2 of the f-family");
  verify->add_option("--window", va.window, "duality window size");
  verify->add_option("--sample", va.sample, "integrality sample size");
  verify->add_option("--pairs", va.pairs, "random constant-term pairs per level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  va.weight_given = wopt->count() > 0;

  try {
    const Config cfg = load_config_from_env();
    apply_config(cfg);
    if (*basis) return cmd_basis(ba, cfg);
    if (*lift) return cmd_lift(la, cfg);
    if (*trace_cmd) return cmd_trace(ta, cfg);
    if (*classes) return cmd_classes(ca);
    if (*verify) return cmd_verify(va, cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
