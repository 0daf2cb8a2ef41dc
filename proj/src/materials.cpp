#include "wfc/materials.hpp"

#include <cmath>

namespace wfc {

double BimaterialParams::gamma_star() const {
  if (alpha == 0.0)
    throw input_error("gamma_star undefined: alpha == 0 (identical moduli contrast)");
  return gamma / alpha;
}

static void check_half_plane(const ElasticHalfPlane& h, const char* name) {
  if (!(h.mu > 0.0))
    throw input_error(std::string("shear modulus of the ") + name +
                      " half-plane must be positive");
  if (!(h.nu > -1.0 && h.nu < 0.5))
    throw input_error(std::string("Poisson ratio of the ") + name +
                      " half-plane must lie in (-1, 0.5)");
}

BimaterialParams derive_params(const ElasticHalfPlane& plus,
                               const ElasticHalfPlane& minus) {
  check_half_plane(plus, "upper");
  check_half_plane(minus, "lower");

  BimaterialParams p{};
  p.plus = plus;
  p.minus = minus;

  const double mp = plus.mu, np = plus.nu;
  const double mm = minus.mu, nm = minus.nu;

  // Contrast parameters.  Denominators are strictly positive for admissible
  // inputs: 1 - nu > 1/2 and mu > 0.
  const double ap = (1.0 - np) / mp;   // b (1+alpha)/2
  const double am = (1.0 - nm) / mm;   // b (1-alpha)/2
  const double cp = (1.0 - 2.0 * np) / (2.0 * mp);
  const double cm = (1.0 - 2.0 * nm) / (2.0 * mm);

  p.b = ap + am;
  p.alpha = (ap - am) / (ap + am);
  p.e = np / mp + nm / mm;
  p.f = np / mp - nm / mm;
  p.d = cp - cm;
  p.d_star = p.d / p.b;
  p.gamma = (cp + cm) / p.b;
  p.eta = (mm - mp) / (mm + mp);

  p.epsilon = std::atanh(p.d_star) / M_PI;
  p.d0 = std::pow(1.0 - p.d_star * p.d_star, 0.25);
  p.e0 = std::exp(M_PI * p.epsilon / 2.0);
  p.nu_equiv = 1.0 - p.b * std::pow(p.d0, 4.0) / (p.b + p.e);

  return p;
}

IdentityReport verify_identities(const BimaterialParams& p) {
  IdentityReport rep;
  auto add = [&](const char* name, double r) {
    rep.residuals.emplace_back(name, std::abs(r));
  };

  const double pe = M_PI * p.epsilon;
  add("cosh(pi eps) d0^2 == 1", std::cosh(pe) * p.d0 * p.d0 - 1.0);
  add("sinh(pi eps) d0^2 == d*", std::sinh(pe) * p.d0 * p.d0 - p.d_star);
  add("e0 == exp(pi eps / 2)", p.e0 - std::exp(pe / 2.0));
  add("e0^4 (1-d*) == 1+d*",
      std::pow(p.e0, 4.0) * (1.0 - p.d_star) - (1.0 + p.d_star));
  add("d == b d*", p.d - p.b * p.d_star);
  add("b+e == 1/mu_+ + 1/mu_-", (p.b + p.e) - (1.0 / p.plus.mu + 1.0 / p.minus.mu));
  add("b*alpha+f == 1/mu_+ - 1/mu_-",
      (p.b * p.alpha + p.f) - (1.0 / p.plus.mu - 1.0 / p.minus.mu));
  add("(1-nu_+)/mu_+ == b(1+alpha)/2",
      (1.0 - p.plus.nu) / p.plus.mu - p.b * (1.0 + p.alpha) / 2.0);
  add("(1-nu_-)/mu_- == b(1-alpha)/2",
      (1.0 - p.minus.nu) / p.minus.mu - p.b * (1.0 - p.alpha) / 2.0);
  add("(1-2nu_+)/(2mu_+) == (b gamma + d)/2",
      (1.0 - 2.0 * p.plus.nu) / (2.0 * p.plus.mu) - (p.b * p.gamma + p.d) / 2.0);
  add("(1-2nu_-)/(2mu_-) == (b gamma - d)/2",
      (1.0 - 2.0 * p.minus.nu) / (2.0 * p.minus.mu) - (p.b * p.gamma - p.d) / 2.0);
  add("1 - nu_equiv == b d0^4/(b+e)",
      (1.0 - p.nu_equiv) - p.b * std::pow(p.d0, 4.0) / (p.b + p.e));
  add("eta consistency",
      p.eta - (p.minus.mu - p.plus.mu) / (p.minus.mu + p.plus.mu));
  // Classical log form of the oscillation index.
  {
    const double kp = 3.0 - 4.0 * p.plus.nu;
    const double km = 3.0 - 4.0 * p.minus.nu;
    const double eps_log = std::log((p.plus.mu + kp * p.minus.mu) /
                                    (p.minus.mu + km * p.plus.mu)) /
                           (2.0 * M_PI);
    add("eps == log form", p.epsilon - eps_log);
  }

  rep.max_residual = 0.0;
  for (const auto& [name, r] : rep.residuals)
    rep.max_residual = std::max(rep.max_residual, r);
  return rep;
}

}  // namespace wfc
