#include "wfc/special.hpp"

#include <cmath>

namespace wfc {

// Lanczos approximation, g = 7, 9 coefficients.  Relative error below 1e-13
// on the right half-plane; the reflection formula covers Re z < 0.5.
static const double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

cplx complex_gamma(cplx z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw input_error("complex_gamma: pole at nonpositive integer argument");

  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return M_PI / (std::sin(M_PI * z) * complex_gamma(1.0 - z));
  }

  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cplx power_kernel(double x, double sigma, double eps) {
  if (!(x > 0.0)) throw input_error("power_kernel: argument must be positive");
  const double lx = std::log(x);
  return std::exp(cplx(sigma * lx, eps * lx));
}

OscConstants osc_constants(double eps) {
  OscConstants oc;
  oc.eps = eps;
  oc.d0 = 1.0 / std::sqrt(std::cosh(M_PI * eps));
  oc.e0 = std::exp(M_PI * eps / 2.0);

  const cplx ie(0.0, eps);
  const double sq = std::sqrt(M_PI);
  const cplx one_p_i(1.0, 1.0), one_m_i(1.0, -1.0);
  oc.c_plus[0] = one_p_i * sq / (2.0 * complex_gamma(0.5 + ie));
  oc.c_minus[0] = one_p_i * sq / (2.0 * complex_gamma(0.5 - ie));
  oc.c_plus[1] = one_m_i * sq / (2.0 * complex_gamma(1.5 + ie));
  oc.c_minus[1] = one_m_i * sq / (2.0 * complex_gamma(1.5 - ie));
  oc.c_plus[2] = -one_p_i * sq / (2.0 * complex_gamma(2.5 + ie));
  oc.c_minus[2] = -one_p_i * sq / (2.0 * complex_gamma(2.5 - ie));

  const cplx i(0.0, 1.0);
  for (int j = 0; j < 3; ++j) {
    const cplx cp = oc.c_plus[j], cm = oc.c_minus[j];
    const cplx s = oc.d0 / (4.0 * cp * cm);
    oc.M[j] = Mat2c{-cm, cp, i * cm, i * cp} * s;
    // Closed inverse; M and Minv are exercised against each other in tests.
    oc.Minv[j] = Mat2c{i * cp, -cp, -i * cm, -cm} * (2.0 * i / oc.d0);
  }
  return oc;
}

cplx upper_pow(cplx beta, cplx w) {
  if (beta.imag() < 0.0)
    throw input_error("upper_pow: beta must lie in the closed upper half-plane");
  if (beta == 0.0) throw input_error("upper_pow: beta must be nonzero");
  // Principal log: arg in (-pi, pi], so the negative real axis comes in with
  // arg = +pi, which is the limit from above.
  return std::exp(w * std::log(beta));
}

cplx lower_pow(cplx beta, cplx w) {
  if (beta.imag() > 0.0)
    throw input_error("lower_pow: beta must lie in the closed lower half-plane");
  if (beta == 0.0) throw input_error("lower_pow: beta must be nonzero");
  cplx lg;
  if (beta.imag() == 0.0 && beta.real() < 0.0) {
    lg = cplx(std::log(-beta.real()), -M_PI);  // limit from below
  } else {
    lg = std::log(beta);
  }
  return std::exp(w * lg);
}

}  // namespace wfc
