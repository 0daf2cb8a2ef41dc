#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wfc/errors.hpp"

namespace wfc {

/// One isotropic elastic half-plane.
struct ElasticHalfPlane {
  double mu;  // shear modulus, > 0
  double nu;  // Poisson ratio, in (-1, 0.5); plane strain is assumed
};

/// Derived constants of a bimaterial pair bonded along x2 = 0, upper
/// half-plane "plus", lower "minus".  All of them are algebraic functions of
/// (mu_+, nu_+, mu_-, nu_-); epsilon is the oscillation index of the
/// interface singularity r^{-1/2 +- i*epsilon}.
struct BimaterialParams {
  ElasticHalfPlane plus, minus;

  double epsilon;   // oscillation index, (1/pi)*atanh(d_star)
  double alpha;     // stiffness-contrast ratio built from (1-nu)/mu
  double d_star;    // compressibility contrast, |d_star| < 1
  double gamma;     // companion of d_star with (1-2nu)/(2mu) sums
  double d;         // (1-2nu_+)/(2mu_+) - (1-2nu_-)/(2mu_-)
  double b;         // (1-nu_+)/mu_+ + (1-nu_-)/mu_-
  double e;         // nu_+/mu_+ + nu_-/mu_-
  double f;         // nu_+/mu_+ - nu_-/mu_-
  double eta;       // (mu_- - mu_+)/(mu_- + mu_+), antiplane contrast
  double d0;        // (1 - d_star^2)^{1/4}; 1/d0^2 = cosh(pi*epsilon)
  double e0;        // exp(pi*epsilon/2) = ((1+d_star)/(1-d_star))^{1/4}
  double nu_equiv;  // equivalent Poisson ratio, 1 - nu_equiv = b*d0^4/(b+e)

  /// gamma/alpha; only defined when alpha != 0, so it is computed on demand.
  double gamma_star() const;
};

/// Builds the derived constants. Throws input_error when either half-plane is
/// outside its admissible range.
BimaterialParams derive_params(const ElasticHalfPlane& plus,
                               const ElasticHalfPlane& minus);

/// Residuals of the internal identities the parameter set must satisfy
/// (cosh/sinh closure of d0 and e0, gamma* consistency, equivalent Poisson
/// ratio bounds, ...).  Useful for detecting a corrupted or hand-edited
/// parameter struct.
struct IdentityReport {
  std::vector<std::pair<std::string, double>> residuals;
  double max_residual;
};

IdentityReport verify_identities(const BimaterialParams& p);

}  // namespace wfc
