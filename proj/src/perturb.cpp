#include "wfc/perturb.hpp"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "wfc/errors.hpp"
#include "wfc/quadrature.hpp"
#include "wfc/special.hpp"

namespace wfc {

namespace {

constexpr cplx kI{0.0, 1.0};

// p(r - a) re-expanded in r: b_j = sum_{k >= j} c_k binom(k, j) (-a)^{k-j}.
std::vector<double> shift_poly(const std::vector<double>& c, double a) {
  if (c.empty()) return {};
  const int n = static_cast<int>(c.size());
  std::vector<double> b(c.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    double term = c[k];  // c_k * binom(k, j) * (-a)^{k-j}, built down from j=k
    b[k] += term;
    for (int j = k - 1; j >= 0; --j) {
      term *= -a * (j + 1) / static_cast<double>(k - j);
      b[j] += term;
    }
  }
  return b;
}

std::function<std::array<double, 3>(double)> shift_handle(
    const std::function<std::array<double, 3>(double)>& f, double a) {
  if (!f) return {};
  return [f, a](double x1) { return f(x1 + a); };
}

// The tractions stay fixed in space while the tip advances by a, so in
// tip-centered coordinates every support recedes: x1 -> x1 - a, r -> r + a.
LoadCase shifted_case(const LoadCase& lc, double a) {
  LoadCase out = lc;
  for (auto& tr : out.tractions) {
    if (auto* pt = std::get_if<PointLoad>(&tr.load)) {
      pt->x1 -= a;
    } else {
      auto& sm = std::get<SmoothLoad>(tr.load);
      sm.x_lo -= a;
      sm.x_hi -= a;
      sm.f = shift_handle(sm.f, a);
      sm.df = shift_handle(sm.df, a);
      sm.d2f = shift_handle(sm.d2f, a);
      for (auto& poly : sm.poly_r) poly = shift_poly(poly, a);
    }
  }
  if (out.gap > 0.0) out.gap += a;
  return out;
}

}  // namespace

AdvanceResult advance_sif(const BimaterialParams& p, const LoadCase& lc,
                          double a, double tol) {
  const double gap = validate(lc);
  if (!(a >= 0.0)) throw input_error("crack advance must be non-negative");
  if (a >= gap)
    throw input_error("crack advance reaches the nearest loaded point");

  const TipCoefficients base = sif_closed_form(lc, p, tol);
  AdvanceResult out;
  out.a = a;
  if (lc.mode == Mode::ModeIII) {
    out.K0 = base.K3;
    out.A0 = base.A3;
  } else {
    out.K0 = base.K;
    out.A0 = base.A;
    out.B0 = base.B;
  }
  if (a == 0.0) {
    out.K_star = out.K0;
    out.A_star = out.A0;
    return out;
  }

  const TipCoefficients moved = sif_closed_form(shifted_case(lc, a), p, tol);
  if (lc.mode == Mode::ModeIII) {
    out.K_star = moved.K3;
    out.A_star = moved.A3;
  } else {
    out.K_star = moved.K;
    out.A_star = moved.A;
  }
  return out;
}

std::pair<cplx, cplx> first_order(const BimaterialParams& p,
                                  const LoadCase& lc, double tol) {
  if (lc.mode == Mode::ModeIII)
    throw input_error(
        "first-order advance rates are in-plane only (no antiplane third "
        "coefficient to drive dA)");
  if (!check_balance(lc).balanced)
    throw input_error("first-order advance rates require a self-balanced load");

  const TipCoefficients base = sif_closed_form(lc, p, tol);
  const OscConstants oc = osc_constants(p);

  // -i M_j^{-1} M_{j+1} is diagonal with entries (j - 1/2) +- i eps, so the
  // first component of its action on (X, conj X) is the scalar rate.
  const auto reduce = [&oc](int j, cplx x) {
    const Vec2c v{x, std::conj(x)};
    return ((-kI) * (oc.Minv[j] * (oc.M[j + 1] * v))).x;
  };
  const cplx dK = reduce(0, base.A);
  const cplx dA = reduce(1, base.B);

  const cplx dK_scalar = (0.5 + kI * p.epsilon) * base.A;
  const cplx dA_scalar = (1.5 + kI * p.epsilon) * base.B;
  const double defect = std::abs(dK - dK_scalar) / (1.0 + std::abs(dK_scalar)) +
                        std::abs(dA - dA_scalar) / (1.0 + std::abs(dA_scalar));
  if (defect > 1e-10)
    throw numerical_error(
        "first-order matrix reduction disagrees with the scalar rate", defect);
  return {dK, dA};
}

namespace {

struct PeeledTransform {
  const std::function<cplx(double)>& psi;
  cplx a1, a2, a12;  // a12 = a2 + i a1

  // psi minus the two kernel transforms; O(t^-3) when psi matches its
  // declared expansion.
  cplx rem(double t) const {
    const cplx d{t, 1.0};
    return psi(t) - a1 / d - a12 / (d * d);
  }
  // t psi - a1 minus the kernel transform of the derivative series; O(t^-2).
  cplx rem_eta(double t) const {
    const cplx d{t, 1.0};
    return t * psi(t) - a1 - a2 / d;
  }
};

// Whole-line integral of a peeled remainder: a finite window plus the exact
// algebraic tails mapped through t = 1/v (the mapped integrand is smooth and
// vanishing at v = 0 for any O(t^-2) remainder).
cplx whole_line(const std::function<cplx(double)>& g, double T, double tol) {
  cplx total = integrate_smooth(g, -T, T, 0.25 * tol).value;
  const auto tails = [&g](double v) {
    return (g(1.0 / v) + g(-1.0 / v)) / (v * v);
  };
  total += integrate_smooth(tails, 0.0, 1.0 / T, 0.25 * tol).value;
  return total;
}

}  // namespace

TauberianReport tauberian_probe(cplx a1, cplx a2,
                                const std::function<cplx(double)>& psi,
                                const std::vector<double>& x_grid,
                                double tol) {
  if (!psi) throw input_error("tauberian probe needs a transform handle");
  if (!(tol > 0.0)) throw input_error("tolerance must be positive");
  const PeeledTransform pt{psi, a1, a2, a2 + kI * a1};

  TauberianReport rep;
  rep.x = x_grid;
  rep.f0_expected = -kI * a1;
  rep.fprime0_expected = -a2;

  // One-sided limits.  Both peeled remainders are plus functions, so their
  // whole-line integrals vanish; the computed values book the quadrature
  // defect against the predicted limits.
  const double kWindow = 50.0;
  const cplx i_rem =
      whole_line([&pt](double t) { return pt.rem(t); }, kWindow, tol);
  const cplx i_eta =
      whole_line([&pt](double t) { return pt.rem_eta(t); }, kWindow, tol);
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  rep.f0 = rep.f0_expected + i_rem / kTwoPi;
  rep.fprime0 = rep.fprime0_expected - kI * (i_eta / kTwoPi);
  rep.defect0 = std::abs(rep.f0 - rep.f0_expected);
  rep.defect1 = std::abs(rep.fprime0 - rep.fprime0_expected);

  // Truncation window for the grid inversion: grow until the neglected tail
  // of the O(t^-3) remainder, ~ T |rem(+-T)|, clears the tolerance.
  double T = 80.0;
  double tail = 0.0;
  bool settled = false;
  for (int pass = 0; pass < 5; ++pass) {
    tail = T * (std::abs(pt.rem(T)) + std::abs(pt.rem(-T)));
    if (tail <= tol) {
      settled = true;
      break;
    }
    T *= 4.0;
  }
  if (!settled)
    throw numerical_error(
        "peeled transform remainder does not decay as declared", tail);
  rep.tail_bound = tail;

  // Panel boundaries out from t = 0 (widths grow geometrically), mirrored.
  std::vector<double> edges{0.0};
  for (double w = 4.0; edges.back() < T;) {
    edges.push_back(std::min(edges.back() + w, T));
    w *= 1.5;
  }
  const double panel_tol =
      0.5 * tol / static_cast<double>(2 * (edges.size() - 1));

  rep.f.reserve(x_grid.size());
  for (const double x : x_grid) {
    const auto osc = [&pt, x](double t) {
      return pt.rem(t) * std::exp(cplx{0.0, -x * t});
    };
    cplx inv{};
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      inv += integrate_smooth(osc, edges[k], edges[k + 1], panel_tol).value;
      inv += integrate_smooth(osc, -edges[k + 1], -edges[k], panel_tol).value;
    }
    cplx val = inv / kTwoPi;
    if (x >= 0.0) {
      const double decay = std::exp(-x);
      val += a1 * (-kI * decay) + pt.a12 * (-x * decay);
    }
    rep.f.push_back(val);
  }
  return rep;
}

}  // namespace wfc
