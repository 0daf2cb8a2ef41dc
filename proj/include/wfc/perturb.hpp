#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "wfc/loading.hpp"
#include "wfc/materials.hpp"
#include "wfc/sif.hpp"

namespace wfc {

/// Response of the tip coefficients to a quasi-static crack advance.
///
/// The faces are loaded by tractions fixed in space, so advancing the tip by
/// a >= 0 moves every loaded point a distance a farther from the tip and the
/// intensity functionals are simply re-evaluated on the shifted case.  No
/// expansion is involved: K_star and A_star are exact in a.
struct AdvanceResult {
  double a = 0.0;
  cplx K_star{}, A_star{};  // coefficients of the advanced tip
  cplx K0{}, A0{}, B0{};    // coefficients of the original tip
};

/// Exact tip coefficients after an advance a into the traction-free gap.
/// Requires 0 <= a < gap (the clearance reported by validate()); a == 0
/// returns K_star == K0 and A_star == A0 identically.  Antiplane cases are
/// carried through the real pair (K3, A3), reported in the complex slots.
/// Throws input_error when a is negative or reaches the nearest loaded point.
AdvanceResult advance_sif(const BimaterialParams& p, const LoadCase& lc,
                          double a, double tol = 1e-12);

/// First-order advance rates at a = 0 for a balanced plane-strain case:
///
///     dK/da = (1/2 + i eps) A0,     dA/da = (3/2 + i eps) B0.
///
/// Both are assembled through the oscillatory matrix pair as the first
/// component of -i * M_j^{-1} M_{j+1} acting on the coefficient vector
/// (X, conj X), and cross-checked against the scalar reduction; a mismatch
/// beyond roundoff raises numerical_error.  ModeIII cases are rejected
/// (their second-order rate has no computed B3 to stand on).
std::pair<cplx, cplx> first_order(const BimaterialParams& p,
                                  const LoadCase& lc, double tol = 1e-12);

/// ---- Tauberian probe -------------------------------------------------------
///
/// Diagnostic for the one-sided limit structure used by the advance formulas.
/// psi is the transform of a "plus" function f (f supported on x > 0),
/// analytic in the upper half t-plane with the algebraic expansion
///
///     psi(t) = a1 / t + a2 / t^2 + O(t^-3),   t -> infinity.
///
/// The probe inverts psi numerically on x_grid after peeling the two
/// exponential kernels that carry the expansion,
///
///     a1 / (t + i)       <->  -i e^{-x} H(x),
///     (a2 + i a1) / (t + i)^2  <->  -x e^{-x} H(x),
///
/// so the remaining integrand decays like t^-3 and the inversion converges
/// absolutely.  The one-sided limits are recovered the same way and compared
/// with the predicted values f(0+) = -i a1 and f'(0+) = -a2.
struct TauberianReport {
  std::vector<double> x;  // evaluation grid, as given
  std::vector<cplx> f;    // recovered f on the grid (x = 0 means x -> 0+)
  cplx f0{};              // recovered limit f(0+)
  cplx fprime0{};         // recovered limit f'(0+)
  cplx f0_expected{};     // -i a1
  cplx fprime0_expected{};  // -a2
  double defect0 = 0.0;   // |f0 - f0_expected|
  double defect1 = 0.0;   // |fprime0 - fprime0_expected|
  double tail_bound = 0.0;  // bound on the truncated tail of the grid values
};

/// Runs the inversion.  Throws numerical_error when the peeled remainder does
/// not decay within the truncation ladder (psi inconsistent with the declared
/// expansion) or the quadrature fails to converge.
TauberianReport tauberian_probe(cplx a1, cplx a2,
                                const std::function<cplx(double)>& psi,
                                const std::vector<double>& x_grid,
                                double tol = 1e-8);

}  // namespace wfc
