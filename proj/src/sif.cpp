#include "wfc/sif.hpp"

#include <cmath>

#include "wfc/errors.hpp"
#include "wfc/quadrature.hpp"
#include "wfc/special.hpp"
#include "wfc/weights.hpp"

namespace wfc {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

double poly_eval(const std::vector<double>& c, double r) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * r + *it;
  return v;
}

double poly_eval_derivative(const std::vector<double>& c, double r) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) v = v * r + c[k] * double(k);
  return v;
}

double smooth_density(const RadialSmooth& sm, double r) {
  return sm.has_poly ? poly_eval(sm.poly, r) : sm.f(r);
}

double smooth_density_derivative(const RadialSmooth& sm, double r) {
  if (sm.has_poly) return poly_eval_derivative(sm.poly, r);
  if (sm.has_df) return sm.df(r);
  throw input_error(
      "smooth load lacks a derivative handle required by the load-derivative "
      "route");
}

// One channel of the reciprocity integral: accumulates W^T(r) R f(r) over a
// component pair (q, p) of a radial load, with R = diag(-1, 1).  `weight`
// yields the 2x2 trace (or trace-derivative) matrix at argument r > 0.
template <typename WeightFn>
Vec2c channel_integral(const RadialPart& qpart, const RadialPart& ppart,
                       const WeightFn& weight, double tol) {
  Vec2c acc{};
  for (const auto& at : qpart.atoms) {
    const Mat2c W = weight(at.r);
    acc.x -= at.c * W(0, 0);
    acc.y -= at.c * W(0, 1);
  }
  for (const auto& at : ppart.atoms) {
    const Mat2c W = weight(at.r);
    acc.x += at.c * W(1, 0);
    acc.y += at.c * W(1, 1);
  }
  auto add_smooth = [&](const RadialSmooth& sm, int row, double sign) {
    for (int col = 0; col < 2; ++col) {
      const cplx val = integrate_smooth(
          [&](double r) { return sign * weight(r)(row, col) * smooth_density(sm, r); },
          sm.r_lo, sm.r_hi, tol).value;
      (col == 0 ? acc.x : acc.y) += val;
    }
  };
  for (const auto& sm : qpart.smooth) add_smooth(sm, 0, -1.0);
  for (const auto& sm : ppart.smooth) add_smooth(sm, 1, 1.0);
  return acc;
}

// Same accumulation against the differentiated load densities (smooth parts
// only; callers route atoms through the differentiated weight instead).
template <typename WeightFn>
Vec2c channel_integral_dload(const RadialPart& qpart, const RadialPart& ppart,
                             const WeightFn& weight, double tol) {
  Vec2c acc{};
  auto add_smooth = [&](const RadialSmooth& sm, int row, double sign) {
    for (int col = 0; col < 2; ++col) {
      const cplx val = integrate_smooth(
          [&](double r) {
            return sign * weight(r)(row, col) * smooth_density_derivative(sm, r);
          },
          sm.r_lo, sm.r_hi, tol).value;
      (col == 0 ? acc.x : acc.y) += val;
    }
  };
  // the load densities are given in r = -x1, so d/dx1 = -d/dr flips the sign
  for (const auto& sm : qpart.smooth) add_smooth(sm, 0, 1.0);
  for (const auto& sm : ppart.smooth) add_smooth(sm, 1, -1.0);
  return acc;
}

RadialPart atoms_only(const RadialPart& part) {
  RadialPart out;
  out.atoms = part.atoms;
  return out;
}

RadialPart smooth_only(const RadialPart& part) {
  RadialPart out;
  out.smooth = part.smooth;
  return out;
}

struct ChannelVectors {
  Vec2c K_vec{}, A_vec{};
};

// K and A Betti vectors for one channel (mean_weight selects the face-average
// trace, used against the jump load).
ChannelVectors betti_channel(const RadialPart& qpart, const RadialPart& ppart,
                             bool mean_weight, const BimaterialParams& p,
                             double tol, SecondCoeffRoute route) {
  const OscConstants oc = osc_constants(p);
  auto trace = [&](double r) {
    const WeightSample w = plane_strain_trace(r, p);
    return mean_weight ? w.meanU : w.jumpU;
  };
  auto dtrace = [&](double r) {
    const WeightSample w = plane_strain_trace_derivative(r, p);
    return mean_weight ? w.meanU : w.jumpU;
  };

  ChannelVectors out;
  const Vec2c I0 = channel_integral(qpart, ppart, trace, tol);
  out.K_vec = cplx(0.0, -1.0) * (oc.Minv[0] * I0);

  Vec2c I1;
  if (route == SecondCoeffRoute::WeightDerivative) {
    I1 = channel_integral(qpart, ppart, dtrace, tol);
  } else {
    I1 = channel_integral(atoms_only(qpart), atoms_only(ppart), dtrace, tol) +
         channel_integral_dload(smooth_only(qpart), smooth_only(ppart), trace, tol);
  }
  out.A_vec = oc.Minv[1] * I1;
  return out;
}

// Antiplane convolution: sum/integral of U3(r) f(r) over one radial part.
cplx mode3_convolution(const RadialPart& part, const BimaterialParams& p,
                       double tol, bool derivative) {
  auto u3 = [&](double r) {
    const cplx base = mode3_trace(r, p).jumpU3;
    return derivative ? -base / (2.0 * r) : base;  // U3 ~ r^{-1/2}
  };
  cplx acc = 0.0;
  for (const auto& at : part.atoms) acc += at.c * u3(at.r);
  for (const auto& sm : part.smooth)
    acc += integrate_smooth(
               [&](double r) { return u3(r) * smooth_density(sm, r); },
               sm.r_lo, sm.r_hi, tol)
               .value;
  return acc;
}

cplx mode3_convolution_dload(const RadialPart& part, const BimaterialParams& p,
                             double tol) {
  cplx acc = 0.0;
  for (const auto& sm : part.smooth)
    acc += integrate_smooth(
               [&](double r) {
                 return mode3_trace(r, p).jumpU3 *
                        smooth_density_derivative(sm, r);
               },
               sm.r_lo, sm.r_hi, tol)
               .value;
  return acc;
}

}  // namespace

cplx lambda_transform(const LoadDecomposition& ld, cplx s,
                      const BimaterialParams& p, double tol) {
  if (ld.mode != Mode::PlaneStrain)
    throw input_error("lambda_transform: plane-strain loads only");
  const cplx i(0.0, 1.0);
  return radial_mellin(ld.sym[1], s, tol) + i * radial_mellin(ld.sym[0], s, tol) +
         0.5 * p.alpha *
             (radial_mellin(ld.skew[1], s, tol) + i * radial_mellin(ld.skew[0], s, tol));
}

TipCoefficients sif_closed_form(const LoadCase& lc, const BimaterialParams& p,
                                double tol) {
  const LoadDecomposition ld = decompose(lc);
  TipCoefficients out;
  out.mode = lc.mode;
  if (lc.mode == Mode::ModeIII) {
    auto channel = [&](double power) {
      return radial_moment(ld.sym[2], power, tol) +
             0.5 * p.eta * radial_moment(ld.skew[2], power, tol);
    };
    const double pref = std::sqrt(2.0 / kPi);
    out.K3 = -pref * channel(-0.5);
    out.A3 = pref * channel(-1.5);
    return out;
  }
  const double pref = std::sqrt(2.0 / kPi) * std::cosh(kPi * p.epsilon);
  out.K = -pref * lambda_transform(ld, cplx(-0.5, -p.epsilon), p, tol);
  out.A = pref * lambda_transform(ld, cplx(-1.5, -p.epsilon), p, tol);
  out.B = -pref * lambda_transform(ld, cplx(-2.5, -p.epsilon), p, tol);
  return out;
}

ChannelCoefficients sif_quadrature_channels(const LoadCase& lc,
                                            const BimaterialParams& p,
                                            double tol, SecondCoeffRoute route) {
  if (lc.mode != Mode::PlaneStrain)
    throw input_error("sif_quadrature_channels: plane-strain loads only");
  const LoadDecomposition ld = decompose(lc);
  const auto sym = betti_channel(ld.sym[0], ld.sym[1], false, p, tol, route);
  const auto skew = betti_channel(ld.skew[0], ld.skew[1], true, p, tol, route);
  ChannelCoefficients out;
  out.K_sym = sym.K_vec.x;
  out.K_sym_mate = sym.K_vec.y;
  out.A_sym = sym.A_vec.x;
  out.K_skew = skew.K_vec.x;
  out.K_skew_mate = skew.K_vec.y;
  out.A_skew = skew.A_vec.x;
  return out;
}

TipCoefficients sif_quadrature(const LoadCase& lc, const BimaterialParams& p,
                               double tol, SecondCoeffRoute route) {
  TipCoefficients out;
  out.mode = lc.mode;
  if (lc.mode == Mode::ModeIII) {
    const LoadDecomposition ld = decompose(lc);
    auto conv = [&](bool derivative) {
      return mode3_convolution(ld.sym[2], p, tol, derivative) +
             0.5 * p.eta * mode3_convolution(ld.skew[2], p, tol, derivative);
    };
    const cplx one_plus_i(1.0, 1.0);
    out.K3 = std::real(-one_plus_i * conv(false));
    cplx a3;
    if (route == SecondCoeffRoute::WeightDerivative) {
      a3 = -2.0 * one_plus_i * conv(true);
    } else {
      a3 = -2.0 * one_plus_i *
               (mode3_convolution(atoms_only(ld.sym[2]), p, tol, true) +
                0.5 * p.eta * mode3_convolution(atoms_only(ld.skew[2]), p, tol, true)) +
           2.0 * one_plus_i *
               (mode3_convolution_dload(smooth_only(ld.sym[2]), p, tol) +
                0.5 * p.eta * mode3_convolution_dload(smooth_only(ld.skew[2]), p, tol));
    }
    out.A3 = std::real(a3);
    return out;
  }
  const auto ch = sif_quadrature_channels(lc, p, tol, route);
  out.K = ch.K_sym + ch.K_skew;
  out.A = ch.A_sym + ch.A_skew;
  out.B = sif_closed_form(lc, p).B;
  return out;
}

ThreePointReference three_point_reference(double F, double a, double b,
                                          const BimaterialParams& p) {
  if (!(a > 0.0) || !(b >= 0.0 && b < a))
    throw input_error("three_point_reference: need a > 0 and 0 <= b < a");
  const double t = b / a;
  const double pref = std::sqrt(2.0 / kPi) * std::cosh(kPi * p.epsilon);
  auto bracket = [&](double sigma, double sign) {
    const cplx terms = 0.25 * power_kernel(1.0 + t, sigma, -p.epsilon) +
                       0.25 * power_kernel(1.0 - t, sigma, -p.epsilon);
    return 0.5 + sign * terms;
  };
  ThreePointReference out;
  const cplx aK = power_kernel(a, -0.5, -p.epsilon);
  const cplx aA = power_kernel(a, -1.5, -p.epsilon);
  out.K_S = F * pref * aK * bracket(-0.5, 1.0);
  out.K_A = p.alpha * F * pref * aK * bracket(-0.5, -1.0);
  out.A_S = -F * pref * aA * bracket(-1.5, 1.0);
  out.A_A = -p.alpha * F * pref * aA * bracket(-1.5, -1.0);
  return out;
}

TipCoefficients point_pair_reference(double P, double Q, double a,
                                     const BimaterialParams& p) {
  if (!(a > 0.0)) throw input_error("point_pair_reference: need a > 0");
  const double pref = std::sqrt(2.0 / kPi) * std::cosh(kPi * p.epsilon);
  const cplx PQ(P, Q);
  TipCoefficients out;
  out.K = pref * PQ * power_kernel(a, -0.5, -p.epsilon);
  out.A = -pref * PQ * power_kernel(a, -1.5, -p.epsilon);
  out.B = pref * PQ * power_kernel(a, -2.5, -p.epsilon);
  return out;
}

double mode3_point_reference(double F, double a) {
  if (!(a > 0.0)) throw input_error("mode3_point_reference: need a > 0");
  return F * std::sqrt(2.0 / kPi) / std::sqrt(a);
}

}  // namespace wfc
