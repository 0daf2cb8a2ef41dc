#pragma once

#include "wfc/loading.hpp"
#include "wfc/mat2.hpp"
#include "wfc/materials.hpp"

namespace wfc {

// Coefficients of the near-tip expansion.  Plane strain packs the two
// in-plane components complexly (opening = real part, sliding = imaginary
// part): K r^{-1/2+i eps} leads, A r^{1/2+i eps} and B r^{3/2+i eps} follow.
// The antiplane mode carries the real pair K3, A3.
struct TipCoefficients {
  Mode mode = Mode::PlaneStrain;
  cplx K{}, A{}, B{};
  double K3 = 0.0, A3 = 0.0;
};

// Combined load transform
//   Lambda(s) = <p~>(s) + i <q~>(s) + (alpha/2) ([p~](s) + i [q~](s)),
// the one function of s through which every closed-form in-plane coefficient
// is expressed (p = normal component, q = shear, transforms over r = -x1).
cplx lambda_transform(const LoadDecomposition& ld, cplx s,
                      const BimaterialParams& p, double tol = 1e-12);

// Moment route: K, A, B from Lambda at s = -1/2, -3/2, -5/2 shifted by
// -i eps; antiplane K3, A3 from the real moments at -1/2, -3/2.
TipCoefficients sif_closed_form(const LoadCase& lc, const BimaterialParams& p,
                                double tol = 1e-12);

// How the weight-function route obtains the second coefficient: pair the
// load with the differentiated traces, or differentiate the smooth load
// densities instead (point parts always use the differentiated trace).
enum class SecondCoeffRoute { WeightDerivative, LoadDerivative };

// Weight-function route: K and A from adaptive convolutions of the singular
// traces with the load.  Independent of the moment route except for B, which
// has no convolution display and is carried over from it.
TipCoefficients sif_quadrature(
    const LoadCase& lc, const BimaterialParams& p, double tol = 1e-9,
    SecondCoeffRoute route = SecondCoeffRoute::WeightDerivative);

// The same route split by load channel.  The face-average load rides the
// displacement-jump weight and yields the symmetric response; the face-jump
// load rides the face-average weight and yields the skew-symmetric one.
// The *_mate fields are the second components of the two-component Betti
// vectors, conjugate to the leading ones for real loads.
struct ChannelCoefficients {
  cplx K_sym{}, A_sym{};
  cplx K_skew{}, A_skew{};
  cplx K_sym_mate{}, K_skew_mate{};
};
ChannelCoefficients sif_quadrature_channels(
    const LoadCase& lc, const BimaterialParams& p, double tol = 1e-9,
    SecondCoeffRoute route = SecondCoeffRoute::WeightDerivative);

// Closed forms for the three-point bend configuration (force -F on the upper
// face at -a reacted by halves at -(a±b)): symmetric and skew-symmetric
// intensity factors and second coefficients.
struct ThreePointReference {
  cplx K_S{}, K_A{};
  cplx A_S{}, A_A{};
};
ThreePointReference three_point_reference(double F, double a, double b,
                                          const BimaterialParams& p);

// Closed form for equal point tractions (P normal, Q shear) pressed into
// both faces at -a.
TipCoefficients point_pair_reference(double P, double Q, double a,
                                     const BimaterialParams& p);

// Closed form for the antiplane point pair of magnitude F at -a.
double mode3_point_reference(double F, double a);

}  // namespace wfc
