#pragma once

#include <complex>
#include <functional>

#include "wfc/errors.hpp"
#include "wfc/mat2.hpp"

namespace wfc {

/// Description of the weakly singular, slowly oscillating integrals the
/// library produces:
///
///     I = \int_lo^hi g(t) * t^sigma * exp(i * eps * ln t) dt
///
/// with the algebraic/oscillatory kernel concentrated at t = 0.  The phase
/// eps*ln(t) is bounded on any dyadic range, so plain adaptive bisection
/// converges once the endpoint power is substituted away.
struct QuadSpec {
  double sigma = 0.0;  // endpoint exponent; must be > -1 when lo == 0
  double eps = 0.0;    // oscillation index of the ln-phase
  double lo = 0.0;
  double hi = 1.0;
  double tol = 1e-10;
  double tol_abs = 0.0;  // absolute floor on the refinement target
  int max_depth = 50;    // bisection depth limit per subinterval
};

struct QuadResult {
  cplx value{};
  double err = 0.0;  // conservative estimate, Gauss/Kronrod defect sum
  long evals = 0;
};

/// Adaptive Gauss-Kronrod 7/15 with a worst-interval-first queue.  When
/// lo == 0 the kernel is regularized by t = u^m (m chosen so the endpoint
/// power becomes nonnegative) and folded into the integrand.  Throws
/// input_error for a malformed spec and numerical_error (carrying the best
/// error estimate) when the depth budget is exhausted before reaching tol.
QuadResult integrate_singular(const std::function<cplx(double)>& g,
                              const QuadSpec& spec);

/// Plain smooth integral over [a, b]; convenience front end.
inline QuadResult integrate_smooth(const std::function<cplx(double)>& g,
                                   double a, double b, double tol = 1e-10,
                                   double tol_abs = 0.0) {
  QuadSpec spec;
  spec.lo = a;
  spec.hi = b;
  spec.tol = tol;
  spec.tol_abs = tol_abs;
  return integrate_singular(g, spec);
}

}  // namespace wfc
