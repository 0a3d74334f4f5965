// Constructors for the classical forms used by the basis machinery: eta
// quotients, theta, Eisenstein series (also with quadratic characters),
// Hauptmoduln of genus-zero prime levels and a few named cusp forms.
//
// Every constructor takes `trunc` and returns a series known for all
// exponents below `trunc`.
#pragma once

#include <map>
#include <string>

#include "zagier/qseries.hpp"

namespace zagier {

struct FormMeta {
  int weight2 = 0;    // twice the weight
  long level = 1;
  bool plus = false;  // Kohnen plus space
  bool vanishes_at_zero = false;
  void validate() const;  // throws std::invalid_argument on broken invariants
};

struct EtaQuotient {
  long level = 1;
  std::map<long, long> r;  // delta -> exponent r_delta
  long weight2() const;    // sum of r_delta
  long order24() const;    // sum of delta * r_delta (24 * order at infinity)
  Exp lead() const;        // order at infinity; throws if not integral
  void validate() const;
};

// Expansion of prod_delta eta(delta z)^{r_delta}.
QSeries eta_expand(const EtaQuotient& eq, Exp trunc);
// prod_{n>=1} (1 - q^{delta n})^r, as a power series with constant term 1.
QSeries euler_product_power(long delta, long r, Exp trunc);

QSeries theta(Exp trunc);
QSeries eisenstein(int k, Exp trunc);          // E_k, even k >= 2, constant 1
QSeries eisenstein_e2(Exp trunc);
bool is_supported_prime(long p);               // p in {3, 5, 7, 13}
QSeries eisenstein_e2_level(long p, Exp trunc);  // (p E2(pz) - E2(z)) / (p - 1)
// E_k^{psi, phi}(t z) for the quadratic characters psi = (D1/.), phi = (D2/.):
//   c0 + sum_{m>=1} (sum_{n | m} psi(m/n) phi(n) n^{k-1}) q^{t m}.
// Requires sign(D1 D2) = (-1)^k and (k, D1, D2) != (2, 1, 1). It is a
// modular form of weight k on Gamma0(|D1 D2| t) with character (D1 D2 / .).
QSeries eisenstein_char(int k, long D1, long D2, long t, Exp trunc);
QSeries delta_form(Exp trunc);                 // eta(z)^24

EtaQuotient hauptmodul_eta(long p);            // (eta(pz)/eta(z))^{24/(p-1)}
QSeries hauptmodul(long p, Exp trunc);         // Phi_p, lead 1
QSeries hauptmodul_inverse(long p, Exp trunc); // Psi_p = 1/Phi_p, lead -1

// Weight-raising "ladder" form of level p: an eta quotient without zeros
// in the upper half plane or at the cusp 0, used to move between weights.
EtaQuotient ladder_eta(long p);
int ladder_weight2(long p);

enum class NamedForm { C63, C45, C67, C613, H45, H67 };
NamedForm parse_named_form(const std::string& tag);
QSeries named_form(NamedForm tag, Exp trunc);

}  // namespace zagier
