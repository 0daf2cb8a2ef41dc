#include "wfc/fullfield.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <utility>

#include "wfc/quadrature.hpp"
#include "wfc/special.hpp"

namespace wfc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Contour cap: delta(omega + it) grows like e^{2 pi t}; keep exp arguments
// clear of the double overflow threshold.
constexpr double kContourCap = 105.0;

MellinState state_impl(cplx s, const BimaterialParams& p,
                       const LoadDecomposition& ld, double tol,
                       bool numerator) {
  if (ld.mode != Mode::PlaneStrain)
    throw input_error("transformed interface solution is plane-strain only");

  MellinState st;
  st.s = s;
  st.numerator = numerator;
  st.q_mean = radial_mellin(ld.sym[0], s, tol);
  st.p_mean = radial_mellin(ld.sym[1], s, tol);
  st.q_jump = radial_mellin(ld.skew[0], s, tol);
  st.p_jump = radial_mellin(ld.skew[1], s, tol);

  const cplx sn = std::sin(kPi * s);
  const cplx cs = std::cos(kPi * s);
  const double ds = p.d_star;
  st.delta = cs * cs + ds * ds * sn * sn;

  const cplx F1 = st.p_mean + 0.5 * p.alpha * st.p_jump;
  const cplx F2 = st.q_mean + 0.5 * p.alpha * st.q_jump;

  // D = -adj(Phi) F / delta with Phi = [[cos, d* sin], [-d* sin, cos]]; the
  // numerator scaling keeps the adjugate product and multiplies the face
  // additions by delta instead.
  cplx D1 = -(cs * F1 - ds * sn * F2);
  cplx D2 = -(ds * sn * F1 + cs * F2);
  cplx load_scale = st.delta;
  if (!numerator) {
    const double a_cs = std::abs(cs), a_sn = std::abs(sn);
    const double mag = a_cs * a_cs + ds * ds * a_sn * a_sn;
    if (std::abs(st.delta) < 1e-12 * std::max(mag, 1e-300))
      throw input_error(
          "interface determinant vanishes at s (oscillatory pole)");
    D1 /= st.delta;
    D2 /= st.delta;
    load_scale = 1.0;
  }
  st.D1 = D1;
  st.D2 = D2;

  const cplx qp = st.q_mean + 0.5 * st.q_jump;
  const cplx pp = st.p_mean + 0.5 * st.p_jump;
  const cplx qm = st.q_mean - 0.5 * st.q_jump;
  const cplx pm = st.p_mean - 0.5 * st.p_jump;
  st.G_plus = {-sn * D1 + cs * D2 + load_scale * qp,
               cs * D1 + sn * D2 + load_scale * pp};
  st.G_minus = {-sn * D1 - cs * D2 - load_scale * qm,
                -cs * D1 + sn * D2 - load_scale * pm};

  if (!numerator) {
    if (std::abs(s - cplx(std::round(s.real()), 0.0)) < 1e-9)
      throw input_error("wedge coefficients are singular at integer s");
    const cplx h = (s - 1.0) / (2.0 * sn);
    const cplx frac = (s + 1.0) / (s - 1.0);
    const cplx c1p = h * st.G_plus.x, c3p = h * st.G_plus.y;
    const cplx c1m = h * st.G_minus.x, c3m = h * st.G_minus.y;
    st.C_plus = {c1p, D1 - c1p, c3p, D2 - frac * c3p};
    st.C_minus = {c1m, D1 - c1m, c3m, D2 - frac * c3m};
  }
  return st;
}

}  // namespace

MellinState mellin_state(cplx s, const BimaterialParams& p, const LoadCase& lc,
                         double tol) {
  return state_impl(s, p, decompose(lc), tol, false);
}

MellinState mellin_state(cplx s, const BimaterialParams& p,
                         const LoadDecomposition& ld, double tol) {
  return state_impl(s, p, ld, tol, false);
}

MellinState mellin_state_numerator(cplx s, const BimaterialParams& p,
                                   const LoadDecomposition& ld, double tol) {
  return state_impl(s, p, ld, tol, true);
}

cplx interface_determinant(cplx s, const BimaterialParams& p) {
  const cplx sn = std::sin(kPi * s), cs = std::cos(kPi * s);
  return cs * cs + p.d_star * p.d_star * sn * sn;
}

cplx interface_determinant_derivative(cplx s, const BimaterialParams& p) {
  return kPi * std::sin(2.0 * kPi * s) * (p.d_star * p.d_star - 1.0);
}

TransformedField mellin_field(const MellinState& st, double theta,
                              const BimaterialParams& p) {
  if (!(theta >= -kPi - 1e-12 && theta <= kPi + 1e-12))
    throw input_error("angle outside [-pi, pi]");
  const bool upper = theta >= 0.0;
  const double mu = upper ? p.plus.mu : p.minus.mu;
  const double nu = upper ? p.plus.nu : p.minus.nu;
  const Vec2c& G = upper ? st.G_plus : st.G_minus;

  const cplx s = st.s;
  const cplx sn = std::sin(kPi * s);
  if (std::abs(s - cplx(std::round(s.real()), 0.0)) < 1e-9)
    throw input_error("transformed field is singular at integer s");

  // Angular harmonics cos((s±1) theta) built from cos(s theta) to keep the
  // assembly stable at large |Im s|.
  const cplx cu = std::cos(s * theta), su = std::sin(s * theta);
  const double ct = std::cos(theta), stn = std::sin(theta);
  const cplx cosB = cu * ct + su * stn, sinB = su * ct - cu * stn;
  const cplx cosA = cu * ct - su * stn, sinA = su * ct + cu * stn;

  TransformedField f;
  f.stt = st.D1 * cosB + st.D2 * sinB +
          (-G.x * (s - 1.0) * su * stn + G.y * (s * cu * stn - su * ct)) / sn;
  f.srt = -st.D1 * sinB + st.D2 * cosB -
          (G.x * (s * cu * stn + su * ct) + G.y * (s + 1.0) * su * stn) / sn;
  const cplx aux = (G.x * cosA + G.y * sinA) / sn;
  f.srr = -f.stt - 2.0 * aux;
  f.ur = (f.stt + 2.0 * (1.0 - nu) * aux) / (2.0 * s * mu);
  f.ut = -(f.srt + 2.0 * (1.0 - nu) * (G.x * sinA - G.y * cosA) / sn) /
         (2.0 * s * mu);
  return f;
}

TipExpansion tip_expansion(const BimaterialParams& p, const LoadCase& lc,
                           double tol) {
  if (lc.mode != Mode::PlaneStrain)
    throw input_error("tip expansion is plane-strain only");
  if (std::abs(p.d_star) < 1e-8)
    throw input_error(
        "oscillatory pole pairs coincide (d* ~ 0); residue split unavailable");
  if (!check_balance(lc).balanced)
    throw input_error("tip expansion requires a self-balanced load");
  const auto ld = decompose(lc);

  TipExpansion te;
  te.params = p;
  te.jump_q_r1 = radial_moment(ld.skew[0], -1.0, tol);
  te.jump_p_r1 = radial_moment(ld.skew[1], -1.0, tol);
  te.jump_q_r2 = radial_moment(ld.skew[0], -2.0, tol);
  te.jump_p_r2 = radial_moment(ld.skew[1], -2.0, tol);
  te.mean_q_int = radial_moment(ld.sym[0], 0.0, tol);
  te.mean_p_int = radial_moment(ld.sym[1], 0.0, tol);
  te.jump_q_log = radial_log_moment(ld.skew[0], tol);
  te.jump_p_log = radial_log_moment(ld.skew[1], tol);

  te.T_plus = (1.0 - p.alpha) / kPi * te.jump_q_r1;
  te.T_minus = (1.0 + p.alpha) / kPi * te.jump_q_r1;

  const double mu_p = p.plus.mu, nu_p = p.plus.nu;
  const double c0 = 1.0 - 2.0 * nu_p + 2.0 * p.d_star * (nu_p - 1.0);
  const double c1 = (p.alpha - 1.0) * (nu_p - 1.0);
  te.w0[0] = (c0 * kPi * te.mean_p_int + c1 * te.jump_q_log) / (2.0 * kPi * mu_p);
  te.w0[1] =
      (-c0 * kPi * te.mean_q_int + c1 * te.jump_p_log) / (2.0 * kPi * mu_p);

  int k = 0;
  for (const double l : {-1.0, 1.0, 3.0}) {
    const double re = -(l + 2.0) / 2.0;
    te.pole_states[k++] = mellin_state_numerator({re, p.epsilon}, p, ld, tol);
    te.pole_states[k++] = mellin_state_numerator({re, -p.epsilon}, p, ld, tol);
  }

  // Interface-traction residues give the series coefficients directly.
  const cplx pref =
      cplx(0.0, 1.0) / (2.0 * kPi * p.d_star) * std::sqrt(2.0 * kPi);
  const cplx i1(0.0, 1.0);
  te.K = pref * (te.pole_states[1].D1 + i1 * te.pole_states[1].D2);
  te.A = pref * (te.pole_states[3].D1 + i1 * te.pole_states[3].D2);
  te.B = pref * (te.pole_states[5].D1 + i1 * te.pole_states[5].D2);
  return te;
}

FieldValue field_asymptotics(double r, double theta, int n_terms,
                             const TipExpansion& te) {
  if (!(r > 0.0)) throw input_error("radius must be positive");
  if (!(theta >= -kPi - 1e-12 && theta <= kPi + 1e-12))
    throw input_error("angle outside [-pi, pi]");
  if (n_terms < 1 || n_terms > 5) throw input_error("order must be 1..5");

  const BimaterialParams& p = te.params;
  const bool upper = theta >= 0.0;
  const double mu = upper ? p.plus.mu : p.minus.mu;
  const double nu = upper ? p.plus.nu : p.minus.nu;
  const double side = upper ? (1.0 - p.alpha) : (1.0 + p.alpha);
  const double ct = std::cos(theta), st = std::sin(theta);

  FieldValue out;
  const auto add_vec = [&](double w1, double w2) {
    out.ur += ct * w1 + st * w2;
    out.ut += -st * w1 + ct * w2;
  };
  // One oscillatory residue pair: stresses at r^{l/2 -+ ie}, displacements
  // one radial order higher; the pair sum is real for real loads.
  const auto add_pair = [&](int idx, double l) {
    const auto fp = mellin_field(te.pole_states[idx], theta, p);
    const auto fm = mellin_field(te.pole_states[idx + 1], theta, p);
    const cplx pref = cplx(0.0, 1.0) / (2.0 * kPi * p.d_star);
    const cplx wm = power_kernel(r, 0.5 * l, -p.epsilon);
    const cplx wp = power_kernel(r, 0.5 * l, p.epsilon);
    out.srr += std::real(pref * (-fp.srr * wm + fm.srr * wp));
    out.stt += std::real(pref * (-fp.stt * wm + fm.stt * wp));
    out.srt += std::real(pref * (-fp.srt * wm + fm.srt * wp));
    const cplx wmu = wm * r, wpu = wp * r;
    out.ur += std::real(pref * (-fp.ur * wmu + fm.ur * wpu));
    out.ut += std::real(pref * (-fp.ut * wmu + fm.ut * wpu));
  };

  add_vec(te.w0[0], te.w0[1]);
  add_pair(0, -1.0);
  if (n_terms >= 2) {
    const double T = upper ? te.T_plus : te.T_minus;
    out.srr += T * ct * ct;
    out.stt += T * st * st;
    out.srt -= T * ct * st;
    const double f1 = side / (2.0 * kPi * mu);
    const double x1 = r * ct, x2 = r * st;
    add_vec(f1 * (1.0 - nu) * (x1 * te.jump_q_r1 - x2 * te.jump_p_r1),
            f1 * ((1.0 - nu) * x1 * te.jump_p_r1 - nu * x2 * te.jump_q_r1));
  }
  if (n_terms >= 3) add_pair(2, 1.0);
  if (n_terms >= 4) {
    // Cartesian block [[a11, a12], [a12, 0]] rotated to polar, linear in r.
    const double g = side / kPi;
    const double a11 = g * (st * te.jump_p_r2 - ct * te.jump_q_r2);
    const double a12 = g * st * te.jump_q_r2;
    out.srr += r * (ct * ct * a11 + 2.0 * ct * st * a12);
    out.stt += r * (st * st * a11 - 2.0 * ct * st * a12);
    out.srt += r * (-ct * st * a11 + (ct * ct - st * st) * a12);
    const double f2 = side / (8.0 * kPi * mu);
    const double x1 = r * ct, x2 = r * st;
    const double r2 = r * r, dd = x1 * x1 - x2 * x2;
    add_vec(f2 * (4.0 * (1.0 - nu) * x1 * x2 * te.jump_p_r2 +
                  (r2 - (3.0 - 2.0 * nu) * dd) * te.jump_q_r2),
            f2 * (-(r2 + (1.0 - 2.0 * nu) * dd) * te.jump_p_r2 +
                  4.0 * nu * x1 * x2 * te.jump_q_r2));
  }
  if (n_terms >= 5) add_pair(4, 3.0);
  return out;
}

FieldValue mellin_inverse(double r, double theta, const BimaterialParams& p,
                          const LoadCase& lc, double omega, double tol) {
  if (!(r > 0.0)) throw input_error("radius must be positive");
  if (!(theta >= -kPi - 1e-12 && theta <= kPi + 1e-12))
    throw input_error("angle outside [-pi, pi]");
  if (!(omega > 0.0 && omega < 0.5))
    throw input_error("contour abscissa must lie in (0, 1/2)");
  if (!(tol > 0.0)) throw input_error("tolerance must be positive");
  const auto ld = decompose(lc);
  if (ld.mode != Mode::PlaneStrain)
    throw input_error("transformed interface solution is plane-strain only");

  const double lr = std::log(r);
  // Conjugate symmetry for real loads folds the contour onto t >= 0:
  //   f(r) = (r^{-omega-k} / pi) Re ∫_0^∞ f~(omega + it) e^{-i t ln r} dt
  // with k = 1 for stresses, k = 0 for displacements.
  const auto contour = [&](auto select, double powshift) -> double {
    cplx total = 0.0;
    // e^{-i t ln r} oscillates with period 2 pi / |ln r|; panels wider than a
    // couple of periods alias through the embedded error estimate.
    const double max_width =
        std::max(0.5, 2.0 * kPi / std::max(0.75, std::abs(lr)));
    // The physical value carries r^{-omega-k}; truncation control has to act
    // on that scale or small-r evaluations lose their tail silently.
    const double pref = std::pow(r, -omega - powshift);
    double t0 = 0.0, width = std::min(8.0, max_width), tail = 0.0;
    int quiet = 0;
    bool converged = false;
    while (t0 < kContourCap) {
      const double t1 = std::min(t0 + width, kContourCap);
      const auto seg = integrate_smooth(
          [&](double t) {
            const auto st = mellin_state(cplx(omega, t), p, ld, tol);
            const auto f = mellin_field(st, theta, p);
            return select(f) * std::exp(cplx(0.0, -t * lr));
          },
          t0, t1, 0.25 * tol,
          0.25 * tol * std::max(1.0 / pref, std::abs(total)));
      total += seg.value;
      // Transforms decay, so the remainder is at most the last panel density
      // carried over the rest of the contour.  Only the part of the panel
      // that stands above its own error estimate counts as signal; what is
      // left below it is the roundoff floor of the load transforms.
      const double signal = std::max(0.0, std::abs(seg.value) - seg.err);
      tail = signal * std::max(1.0, (kContourCap - t1) / (t1 - t0));
      t0 = t1;
      width = std::min(width * 1.6, max_width);
      if (t0 >= 24.0 &&
          tail * pref < tol * std::max(1.0, std::abs(total) * pref)) {
        if (++quiet >= 2) {
          converged = true;
          break;
        }
      } else {
        quiet = 0;
      }
    }
    // A decaying tail beyond the cap is of the order of the final panel.
    if (!converged)
      converged = tail * pref < tol * std::max(1.0, std::abs(total) * pref);
    if (!converged)
      throw numerical_error("transform inversion tail did not decay",
                            tail * pref);
    return std::real(total) / kPi * pref;
  };

  FieldValue out;
  out.srr = contour([](const TransformedField& f) { return f.srr; }, 1.0);
  out.stt = contour([](const TransformedField& f) { return f.stt; }, 1.0);
  out.srt = contour([](const TransformedField& f) { return f.srt; }, 1.0);
  out.ur = contour([](const TransformedField& f) { return f.ur; }, 0.0);
  out.ut = contour([](const TransformedField& f) { return f.ut; }, 0.0);
  return out;
}

}  // namespace wfc
