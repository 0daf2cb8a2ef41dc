#include "wfc/weights.hpp"

#include <cmath>
#include <complex>

#include "wfc/errors.hpp"
#include "wfc/special.hpp"

namespace wfc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Both in-plane weight matrices share the circulant structure
// [[a, -b], [b, a]]; the component displays differ only in the scalar pair.
Mat2c circulant(cplx a, cplx b) { return Mat2c{a, -b, b, a}; }

Mat2c rotation(cplx angle) {
  const cplx c = std::cos(angle);
  const cplx s = std::sin(angle);
  return Mat2c{c, -s, s, c};
}

}  // namespace

WeightSample plane_strain_trace(double x1, const BimaterialParams& p) {
  if (x1 == 0.0) throw input_error("plane_strain_trace: x1 == 0 is singular");
  const OscConstants oc = osc_constants(p);
  WeightSample w;
  w.at = x1;
  if (x1 > 0.0) {
    const double kap = 1.0 / (2.0 * p.d0 * std::sqrt(kTwoPi) * std::sqrt(x1));
    const cplx up = power_kernel(x1, 0.0, -p.epsilon) / oc.c_plus[0];
    const cplx um = power_kernel(x1, 0.0, p.epsilon) / oc.c_minus[0];
    const cplx a = kap * (up + um);
    const cplx b = cplx(0.0, kap) * (up - um);
    w.jumpU = circulant(a, b);
    w.meanU = w.jumpU * cplx(0.5 * p.alpha, 0.0);
    w.sigma = Mat2c{};
  } else {
    const double y = -x1;
    const cplx vp = power_kernel(y, 0.0, -p.epsilon) / oc.c_plus[0];
    const cplx vm = power_kernel(y, 0.0, p.epsilon) / oc.c_minus[0];
    const double d03 = p.d0 * p.d0 * p.d0;
    const double wk = (p.alpha * p.d_star - p.gamma) /
                      (4.0 * d03 * std::sqrt(kTwoPi) * std::sqrt(y));
    // mean rows swap roles relative to the jump: column 1 = (-i w (vp - vm),
    // w (vp + vm)), column 2 by the same (1,2) = -(2,1), (2,2) = (1,1) rule.
    const cplx m1 = cplx(0.0, -wk) * (vp - vm);
    const cplx m2 = cplx(wk, 0.0) * (vp + vm);
    w.meanU = Mat2c{m1, -m2, m2, m1};
    const cplx lp(0.5, p.epsilon);
    const cplx lm(0.5, -p.epsilon);
    const double t = 1.0 / (2.0 * p.b * d03 * std::sqrt(kTwoPi) * y * std::sqrt(y));
    const cplx s1 = t * (lp * vp + lm * vm);
    const cplx s2 = cplx(0.0, t) * (lp * vp - lm * vm);
    w.sigma = circulant(s1, s2);
    w.jumpU = Mat2c{};
  }
  return w;
}

WeightSample plane_strain_trace_derivative(double x1, const BimaterialParams& p) {
  if (x1 <= 0.0)
    throw input_error("plane_strain_trace_derivative: defined for x1 > 0 only");
  const OscConstants oc = osc_constants(p);
  const cplx lp(-0.5, -p.epsilon);
  const cplx lm(-0.5, p.epsilon);
  const double scale =
      1.0 / (2.0 * p.d0 * std::sqrt(kTwoPi) * x1 * std::sqrt(x1));
  const cplx up = lp * power_kernel(x1, 0.0, -p.epsilon) / oc.c_plus[0];
  const cplx um = lm * power_kernel(x1, 0.0, p.epsilon) / oc.c_minus[0];
  WeightSample w;
  w.at = x1;
  const cplx a = scale * (up + um);
  const cplx b = cplx(0.0, scale) * (up - um);
  w.jumpU = circulant(a, b);
  w.meanU = w.jumpU * cplx(0.5 * p.alpha, 0.0);
  w.sigma = Mat2c{};
  return w;
}

Mat2c plane_strain_transform(cplx beta, Side side, const BimaterialParams& p) {
  if (side == Side::Plus) {
    const cplx angle = -p.epsilon * std::log(cplx(0.0, -1.0) * beta);
    return rotation(angle) * (p.d0 * upper_pow(beta, cplx(-0.5, 0.0)));
  }
  const cplx angle = -p.epsilon * std::log(cplx(0.0, 1.0) * beta);
  return rotation(angle) * (-lower_pow(beta, cplx(0.5, 0.0)) / (p.b * p.d0));
}

Mode3Sample mode3_trace(double x1, const BimaterialParams& p) {
  if (x1 == 0.0) throw input_error("mode3_trace: x1 == 0 is singular");
  const cplx one_minus_i(1.0, -1.0);
  Mode3Sample s;
  s.at = x1;
  if (x1 > 0.0) {
    s.jumpU3 = one_minus_i / std::sqrt(kTwoPi * x1);
    s.meanU3 = 0.5 * p.eta * s.jumpU3;
    s.sigma32 = 0.0;
  } else {
    const double y = -x1;
    s.jumpU3 = 0.0;
    s.meanU3 = 0.0;
    s.sigma32 = one_minus_i / (2.0 * std::sqrt(kTwoPi) * (p.b + p.e) * y * std::sqrt(y));
  }
  return s;
}

cplx mode3_transform(cplx beta, Side side, const BimaterialParams& p) {
  if (side == Side::Plus) return upper_pow(beta, cplx(-0.5, 0.0));
  return -lower_pow(beta, cplx(0.5, 0.0)) / (p.b + p.e);
}

Mode3Field mode3_field(double x1, double x2, const BimaterialParams& p) {
  if (x2 == 0.0)
    throw input_error("mode3_field: x2 == 0 is the crack line, use mode3_trace");
  const double mup = p.plus.mu;
  const double mum = p.minus.mu;
  const double denom = mum + mup;
  const double sqpi = std::sqrt(4.0 * std::atan(1.0));
  const cplx i(0.0, 1.0);
  Mode3Field f;
  if (x2 > 0.0) {
    const cplx za = i * x1 + x2;   // Re > 0 away from the line
    const cplx zb = -i * x1 + x2;
    const cplx ha = std::pow(za, -0.5);
    const cplx hb = std::pow(zb, -0.5);
    const cplx ga = std::pow(za, -1.5);
    const cplx gb = std::pow(zb, -1.5);
    f.u3 = mum / (2.0 * sqpi * denom) * (ha - i * hb);
    f.s31 = -mup * mum / (4.0 * sqpi * denom) * (i * ga - gb);
    f.s32 = -mup * mum / (4.0 * sqpi * denom) * (ga - i * gb);
  } else {
    const cplx za = i * x1 - x2;
    const cplx zb = -i * x1 - x2;
    const cplx ha = std::pow(za, -0.5);
    const cplx hb = std::pow(zb, -0.5);
    const cplx ga = std::pow(za, -1.5);
    const cplx gb = std::pow(zb, -1.5);
    f.u3 = -mup / (2.0 * sqpi * denom) * (ha - i * hb);
    f.s31 = mup * mum / (4.0 * sqpi * denom) * (i * ga - gb);
    f.s32 = -mup * mum / (4.0 * sqpi * denom) * (ga - i * gb);
  }
  return f;
}

}  // namespace wfc
