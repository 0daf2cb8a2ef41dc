#include "wfc/loading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wfc/quadrature.hpp"

namespace wfc {

// ---- small polynomial helpers (ascending coefficients) ---------------------

static double poly_eval(const std::vector<double>& c, double r) {
  double v = 0.0;
  for (size_t k = c.size(); k-- > 0;) v = v * r + c[k];
  return v;
}

static std::vector<double> poly_derive(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

std::vector<double> bump_poly_coeffs(double r0, double r1, int k) {
  if (!(0.0 < r0 && r0 < r1)) throw input_error("bump: need 0 < r0 < r1");
  if (k < 1) throw input_error("bump: exponent must be >= 1");
  // (r - r0)(r1 - r) = -r^2 + (r0 + r1) r - r0 r1
  const std::vector<double> base{-r0 * r1, r0 + r1, -1.0};
  std::vector<double> acc{1.0};
  for (int i = 0; i < k; ++i) {
    std::vector<double> next(acc.size() + 2, 0.0);
    for (size_t a = 0; a < acc.size(); ++a)
      for (size_t b = 0; b < 3; ++b) next[a + b] += acc[a] * base[b];
    acc = std::move(next);
  }
  return acc;
}

double RadialPart::evaluate(double r) const {
  double v = 0.0;
  for (const auto& s : smooth)
    if (r >= s.r_lo && r <= s.r_hi) v += s.f(r);
  return v;
}

double LoadDecomposition::face_smooth(Face face, int comp, double x1) const {
  const double r = -x1;
  const double half = face == Face::Upper ? 0.5 : -0.5;
  return sym[comp].evaluate(r) + half * skew[comp].evaluate(r);
}

// ---- validation -------------------------------------------------------------

namespace {

struct Reach {
  double nearest = std::numeric_limits<double>::infinity();
};

bool component_active(Mode mode, int j) {
  return mode == Mode::ModeIII ? j == 2 : j != 2;
}

void check_components(Mode mode, const std::array<double, 3>& c) {
  for (int j = 0; j < 3; ++j)
    if (!component_active(mode, j) && c[j] != 0.0)
      throw input_error("load component inconsistent with the analysis mode");
}

double structural_validate(const LoadCase& lc) {
  if (lc.tractions.empty()) throw input_error("load case has no tractions");
  Reach reach;
  for (const auto& t : lc.tractions) {
    if (const auto* pt = std::get_if<PointLoad>(&t.load)) {
      if (!(pt->x1 < 0.0))
        throw input_error("point load must sit on the loaded faces x1 < 0");
      check_components(lc.mode, pt->comps);
      reach.nearest = std::min(reach.nearest, -pt->x1);
    } else {
      const auto& sm = std::get<SmoothLoad>(t.load);
      if (!(sm.x_lo < sm.x_hi && sm.x_hi < 0.0))
        throw input_error("smooth load support must satisfy x_lo < x_hi < 0");
      const bool any_poly = std::any_of(sm.poly_r.begin(), sm.poly_r.end(),
                                        [](const auto& p) { return !p.empty(); });
      if (!sm.f && !any_poly)
        throw input_error("smooth load needs a handle or polynomial data");
      if (sm.f) {
        // spot-check that inactive components vanish
        for (double u : {0.25, 0.5, 0.75}) {
          const double x = sm.x_lo + u * (sm.x_hi - sm.x_lo);
          check_components(lc.mode, sm.f(x));
        }
      }
      for (int j = 0; j < 3; ++j)
        if (!component_active(lc.mode, j) && !sm.poly_r[j].empty())
          throw input_error("load component inconsistent with the analysis mode");
      reach.nearest = std::min(reach.nearest, -sm.x_hi);
    }
  }
  if (lc.gap > 0.0) {
    if (reach.nearest < lc.gap * (1.0 - 1e-14))
      throw input_error("a load enters the declared tip gap");
    return lc.gap;
  }
  return reach.nearest;
}

LoadDecomposition decompose_unchecked(const LoadCase& lc, double gap) {
  LoadDecomposition dec;
  dec.mode = lc.mode;
  dec.gap = gap;

  for (const auto& t : lc.tractions) {
    const double sgn = t.face == Face::Upper ? 1.0 : -1.0;
    if (const auto* pt = std::get_if<PointLoad>(&t.load)) {
      const double r = -pt->x1;
      for (int j = 0; j < 3; ++j) {
        if (pt->comps[j] == 0.0) continue;
        dec.sym[j].atoms.push_back({r, pt->comps[j] / 2.0});
        dec.skew[j].atoms.push_back({r, sgn * pt->comps[j]});
      }
    } else {
      const auto& sm = std::get<SmoothLoad>(t.load);
      for (int j = 0; j < 3; ++j) {
        if (!component_active(lc.mode, j)) continue;
        RadialSmooth rs;
        rs.r_lo = -sm.x_hi;
        rs.r_hi = -sm.x_lo;
        if (!sm.poly_r[j].empty()) {
          rs.poly = sm.poly_r[j];
          rs.has_poly = true;
          rs.has_df = rs.has_d2f = true;
          const auto p0 = rs.poly;
          const auto p1 = poly_derive(p0);
          const auto p2 = poly_derive(p1);
          rs.f = [p0](double r) { return poly_eval(p0, r); };
          rs.df = [p1](double r) { return poly_eval(p1, r); };
          rs.d2f = [p2](double r) { return poly_eval(p2, r); };
        } else {
          if (!sm.f) continue;  // no polynomial and no handle: component is zero
          // r = -x1 flips the sign of every odd derivative
          const auto f = sm.f;
          rs.f = [f, j](double r) { return f(-r)[j]; };
          if (sm.df) {
            const auto df = sm.df;
            rs.df = [df, j](double r) { return -df(-r)[j]; };
            rs.has_df = true;
          }
          if (sm.d2f) {
            const auto d2f = sm.d2f;
            rs.d2f = [d2f, j](double r) { return d2f(-r)[j]; };
            rs.has_d2f = true;
          }
        }
        // skip identically-zero handle components cheaply
        bool nonzero = rs.has_poly;
        if (!nonzero) {
          for (double u : {0.0, 0.25, 0.5, 0.75, 1.0})
            if (rs.f(rs.r_lo + u * (rs.r_hi - rs.r_lo)) != 0.0) nonzero = true;
        }
        if (!nonzero) continue;

        auto scaled = [&](double w) {
          RadialSmooth out = rs;
          const auto base_f = rs.f;
          out.f = [base_f, w](double r) { return w * base_f(r); };
          if (rs.has_df) {
            const auto base_df = rs.df;
            out.df = [base_df, w](double r) { return w * base_df(r); };
          }
          if (rs.has_d2f) {
            const auto base_d2f = rs.d2f;
            out.d2f = [base_d2f, w](double r) { return w * base_d2f(r); };
          }
          if (rs.has_poly)
            for (auto& c : out.poly) c *= w;
          return out;
        };
        dec.sym[j].smooth.push_back(scaled(0.5));
        dec.skew[j].smooth.push_back(scaled(sgn));
      }
    }
  }

  // merge atoms sharing a position exactly; drop exact zeros
  for (auto* arr : {&dec.sym, &dec.skew}) {
    for (auto& part : *arr) {
      auto& atoms = part.atoms;
      std::sort(atoms.begin(), atoms.end(),
                [](const RadialAtom& a, const RadialAtom& b) { return a.r < b.r; });
      std::vector<RadialAtom> merged;
      for (const auto& a : atoms) {
        if (!merged.empty() && merged.back().r == a.r)
          merged.back().c += a.c;
        else
          merged.push_back(a);
      }
      std::erase_if(merged, [](const RadialAtom& a) { return a.c == 0.0; });
      atoms = std::move(merged);
    }
  }
  return dec;
}

}  // namespace

// ---- moments ----------------------------------------------------------------

cplx radial_mellin(const RadialPart& part, cplx s, double tol) {
  cplx acc = 0.0;
  for (const auto& a : part.atoms) acc += a.c * std::exp(s * std::log(a.r));
  for (const auto& sm : part.smooth) {
    if (sm.has_poly) {
      for (size_t k = 0; k < sm.poly.size(); ++k) {
        if (sm.poly[k] == 0.0) continue;
        const cplx e = s + static_cast<double>(k) + 1.0;
        if (std::abs(e) < 1e-14) {
          acc += sm.poly[k] * std::log(sm.r_hi / sm.r_lo);
        } else {
          acc += sm.poly[k] / e *
                 (std::exp(e * std::log(sm.r_hi)) - std::exp(e * std::log(sm.r_lo)));
        }
      }
    } else {
      const auto f = sm.f;
      acc += integrate_smooth(
                 [f, s](double r) { return f(r) * std::exp(s * std::log(r)); },
                 sm.r_lo, sm.r_hi, tol)
                 .value;
    }
  }
  return acc;
}

double radial_moment(const RadialPart& part, double power, double tol) {
  return radial_mellin(part, cplx(power, 0.0), tol).real();
}

double radial_log_moment(const RadialPart& part, double tol) {
  double acc = 0.0;
  for (const auto& a : part.atoms) acc += a.c * std::log(a.r);
  for (const auto& sm : part.smooth) {
    if (sm.has_poly) {
      for (size_t k = 0; k < sm.poly.size(); ++k) {
        if (sm.poly[k] == 0.0) continue;
        const double kp1 = static_cast<double>(k) + 1.0;
        auto antider = [kp1](double r) {
          return std::pow(r, kp1) * (std::log(r) / kp1 - 1.0 / (kp1 * kp1));
        };
        acc += sm.poly[k] * (antider(sm.r_hi) - antider(sm.r_lo));
      }
    } else {
      const auto f = sm.f;
      acc += integrate_smooth(
                 [f](double r) { return cplx(f(r) * std::log(r)); }, sm.r_lo,
                 sm.r_hi, tol)
                 .value.real();
    }
  }
  return acc;
}

// ---- balance ----------------------------------------------------------------

BalanceReport check_balance(const LoadCase& lc, double tol) {
  const double gap = structural_validate(lc);
  const auto dec = decompose_unchecked(lc, gap);

  BalanceReport rep;
  for (int j = 0; j < 3; ++j) {
    rep.force[j] = -radial_moment(dec.skew[j], 0.0);
    for (const auto& a : dec.skew[j].atoms) {
      rep.force_scale += std::abs(a.c);
      rep.moment_scale += std::abs(a.c) * a.r;
    }
    for (const auto& sm : dec.skew[j].smooth) {
      if (sm.has_poly) {
        // The closed-form moments of expanded high-degree polynomials cancel
        // term against term, so the achievable residual rides on the term
        // magnitudes, not on the much smaller integral mass.
        double t1 = 0.0, t2 = 0.0;
        for (size_t k = 0; k < sm.poly.size(); ++k) {
          const double kk = static_cast<double>(k);
          const double hi = std::pow(sm.r_hi, kk + 1.0);
          t1 += std::abs(sm.poly[k]) * hi / (kk + 1.0);
          t2 += std::abs(sm.poly[k]) * hi * sm.r_hi / (kk + 2.0);
        }
        rep.force_scale += t1;
        rep.moment_scale += t2;
      } else {
        const auto f = sm.f;
        const double mass =
            integrate_smooth([f](double r) { return cplx(std::abs(f(r))); },
                             sm.r_lo, sm.r_hi, 1e-9)
                .value.real();
        rep.force_scale += mass;
        rep.moment_scale += mass * sm.r_hi;
      }
    }
  }
  const int mcomp = lc.mode == Mode::ModeIII ? 2 : 1;
  // M = -∫ x1 [p] dx1 = +∫ r [p](r-view) dr
  rep.moment = radial_moment(dec.skew[mcomp], 1.0);

  const double fs = std::max(rep.force_scale, 1e-300);
  const double ms = std::max(rep.moment_scale, 1e-300);
  rep.balanced = std::abs(rep.moment) <= tol * ms;
  for (double fj : rep.force)
    rep.balanced = rep.balanced && std::abs(fj) <= tol * fs;
  return rep;
}

double validate(const LoadCase& lc) {
  const double gap = structural_validate(lc);
  if (!lc.allow_unbalanced) {
    const auto rep = check_balance(lc);
    if (!rep.balanced)
      throw input_error(
          "load case is not self-balanced (set allow_unbalanced to override)");
  }
  return gap;
}

LoadDecomposition decompose(const LoadCase& lc) {
  const double gap = validate(lc);
  return decompose_unchecked(lc, gap);
}

// ---- canonical cases ---------------------------------------------------------

LoadCase three_point_case(double F, double a, double b) {
  if (!(a > 0.0)) throw input_error("three_point_case: need a > 0");
  if (!(b >= 0.0 && b < a))
    throw input_error("three_point_case: need 0 <= b < a");
  LoadCase lc;
  lc.mode = Mode::PlaneStrain;
  lc.gap = a - b;
  lc.tractions.push_back({Face::Upper, PointLoad{-a, {0.0, -F, 0.0}}});
  lc.tractions.push_back({Face::Lower, PointLoad{-(a + b), {0.0, -F / 2.0, 0.0}}});
  lc.tractions.push_back({Face::Lower, PointLoad{-(a - b), {0.0, -F / 2.0, 0.0}}});
  return lc;
}

LoadCase point_pair_case(double P, double Q, double a) {
  if (!(a > 0.0)) throw input_error("point_pair_case: need a > 0");
  LoadCase lc;
  lc.mode = Mode::PlaneStrain;
  lc.gap = a;
  lc.tractions.push_back({Face::Upper, PointLoad{-a, {-Q, -P, 0.0}}});
  lc.tractions.push_back({Face::Lower, PointLoad{-a, {-Q, -P, 0.0}}});
  return lc;
}

LoadCase mode3_point_case(double F, double a) {
  if (!(a > 0.0)) throw input_error("mode3_point_case: need a > 0");
  LoadCase lc;
  lc.mode = Mode::ModeIII;
  lc.gap = a;
  lc.tractions.push_back({Face::Upper, PointLoad{-a, {0.0, 0.0, -F}}});
  lc.tractions.push_back({Face::Lower, PointLoad{-a, {0.0, 0.0, -F}}});
  return lc;
}

LoadCase smooth_pair_case(double amp, double r0, double r1, int k) {
  auto coeffs = bump_poly_coeffs(r0, r1, k);
  for (auto& c : coeffs) c *= -amp;
  SmoothLoad sm;
  sm.x_lo = -r1;
  sm.x_hi = -r0;
  sm.poly_r[1] = coeffs;
  const auto d1 = poly_derive(coeffs);
  const auto d2 = poly_derive(d1);
  sm.f = [coeffs](double x1) {
    return std::array<double, 3>{0.0, poly_eval(coeffs, -x1), 0.0};
  };
  sm.df = [d1](double x1) {
    return std::array<double, 3>{0.0, -poly_eval(d1, -x1), 0.0};
  };
  sm.d2f = [d2](double x1) {
    return std::array<double, 3>{0.0, poly_eval(d2, -x1), 0.0};
  };
  LoadCase lc;
  lc.mode = Mode::PlaneStrain;
  lc.gap = r0;
  lc.tractions.push_back({Face::Upper, sm});
  lc.tractions.push_back({Face::Lower, sm});
  return lc;
}

}  // namespace wfc
