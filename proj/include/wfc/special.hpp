#pragma once

#include <array>
#include <complex>

#include "wfc/errors.hpp"
#include "wfc/mat2.hpp"
#include "wfc/materials.hpp"

namespace wfc {

/// Gamma function for complex argument (Lanczos approximation with
/// reflection).  Accurate to ~14 digits on the strip used by the library
/// (0.1 <= Re z <= 5, |Im z| <= 5).  Throws input_error at the poles
/// z = 0, -1, -2, ...
cplx complex_gamma(cplx z);

/// x^sigma * exp(i * eps * ln x) for x > 0; the elementary oscillatory-power
/// kernel all singular integrands factor through.  Throws for x <= 0.
cplx power_kernel(double x, double sigma, double eps);

/// Constants attached to the oscillation index eps: the normalization
/// constants c_j^± of the first three singular orders, and the 2x2 matrices
/// M_j coupling a coefficient pair (X, X*) to the Betti asymptotics, with
/// their inverses.  d0 = cosh(pi eps)^{-1/2}, e0 = exp(pi eps / 2).
struct OscConstants {
  double eps = 0.0;
  double d0 = 1.0, e0 = 1.0;
  std::array<cplx, 3> c_plus{}, c_minus{};  // j = 1, 2, 3 stored at [j-1]
  std::array<Mat2c, 3> M{}, Minv{};
};

OscConstants osc_constants(double eps);
inline OscConstants osc_constants(const BimaterialParams& p) {
  return osc_constants(p.epsilon);
}

/// Powers of beta with the two branch cuts the half-plane transforms use.
///
/// upper_pow: analytic for Im beta > 0, cut below the negative imaginary
/// axis; on the real line  beta > 0 -> beta^w,  beta < 0 -> (-beta)^w e^{i pi w}.
/// lower_pow: analytic for Im beta < 0; on the real line
/// beta > 0 -> beta^w,  beta < 0 -> (-beta)^w e^{-i pi w}.
///
/// Both throw when evaluated on the wrong open half-plane.
cplx upper_pow(cplx beta, cplx w);
cplx lower_pow(cplx beta, cplx w);

}  // namespace wfc
