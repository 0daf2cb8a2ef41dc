#pragma once

#include <array>
#include <complex>

#include "wfc/errors.hpp"
#include "wfc/loading.hpp"
#include "wfc/mat2.hpp"
#include "wfc/materials.hpp"

namespace wfc {

/// ---- Mellin-transformed wedge solution -------------------------------------
///
/// Radial transforms: stresses carry f~(s) = ∫ f(r) r^s dr, displacements
/// u~(s) = ∫ u(r) r^{s-1} dr.  The loaded crack occupies theta = ±pi with
/// face tractions p± = <p> ± [p]/2 acting as sigma_tt(r, ±pi) = p±(r),
/// sigma_rt(r, ±pi) = q±(r).  The two wedges couple through a 2x2 interface
/// system whose determinant is delta(s) = cos²(pi s) + d*² sin²(pi s).

struct MellinState {
  cplx s;
  /// Load transforms at s: face means and jumps of the radial channels.
  cplx p_mean, q_mean, p_jump, q_jump;
  /// Interface tractions D1 = sigma_tt(s, 0), D2 = sigma_rt(s, 0).
  cplx D1, D2;
  /// Per-side driving pairs; the wedge coefficients are
  /// C1 = (s-1) G_1 / (2 sin pi s), C3 = (s-1) G_2 / (2 sin pi s).
  Vec2c G_plus, G_minus;
  /// Wedge coefficients C1..C4 stored in order, per half-plane.
  std::array<cplx, 4> C_plus{}, C_minus{};
  cplx delta;
  /// True when D and G carry an extra factor delta(s); the assembled fields
  /// are then the residue numerators [sigma~ delta] and [u~ delta], finite at
  /// the roots of delta.  C entries are not populated in that scaling.
  bool numerator = false;
};

/// Solves the transformed interface system at s.  Throws input_error at the
/// roots of delta and of sin(pi s) (both are poles of the coefficients) and
/// for antiplane load cases.
MellinState mellin_state(cplx s, const BimaterialParams& p, const LoadCase& lc,
                         double tol = 1e-12);
MellinState mellin_state(cplx s, const BimaterialParams& p,
                         const LoadDecomposition& ld, double tol = 1e-12);

/// delta-scaled variant used for residue extraction; only the sin(pi s)
/// guard applies.
MellinState mellin_state_numerator(cplx s, const BimaterialParams& p,
                                   const LoadDecomposition& ld,
                                   double tol = 1e-12);

/// delta(s) = cos²(pi s) + d*² sin²(pi s) and its s-derivative.  delta
/// vanishes at s = (1-2n)/2 ± i eps, where the derivative equals ±2 pi i d*.
cplx interface_determinant(cplx s, const BimaterialParams& p);
cplx interface_determinant_derivative(cplx s, const BimaterialParams& p);

/// Transformed polar field components at angle theta (upper wedge for
/// theta >= 0, lower for theta < 0).
struct TransformedField {
  cplx srr, stt, srt;
  cplx ur, ut;
};

/// Assembles the transformed field from a state.  Valid for the regular and
/// the numerator scaling alike; singular at integer s (throws input_error).
TransformedField mellin_field(const MellinState& st, double theta,
                              const BimaterialParams& p);

/// Physical polar field values at one point.
struct FieldValue {
  double srr = 0.0, stt = 0.0, srt = 0.0;
  double ur = 0.0, ut = 0.0;
};

/// ---- near-tip expansion -----------------------------------------------------
///
/// Residue data of the expansion
///   sigma = beth_{-1/2} + T + beth_{1/2} + S r + beth_{3/2} + O(r²),
///   u     = V_0 + V_{1/2} + V_1 r + V_{3/2} + V_2 r² + V_{5/2} + O(r³),
/// with the oscillatory blocks carried by the six numerator states and the
/// integer-order blocks by load moments.

struct TipExpansion {
  BimaterialParams params;
  /// sigma_tt(r,0) + i sigma_rt(r,0) ~ (K r^{-1/2+ie} + A r^{1/2+ie}
  /// + B r^{3/2+ie}) / sqrt(2 pi), extracted from the pole residues.
  cplx K, A, B;
  /// Constant stress term sigma_rr -> T on either side of the interface; the
  /// two values share the radial strain, T± (1-nu±)/mu± is side-independent.
  double T_plus = 0.0, T_minus = 0.0;
  /// Cartesian tip translation; log r is taken in user length units.
  std::array<double, 2> w0{};
  /// Jump moments ∫[q]/r, ∫[p]/r, ∫[q]/r², ∫[p]/r² driving T, S, and the
  /// integer-order displacement blocks.
  double jump_q_r1 = 0.0, jump_p_r1 = 0.0;
  double jump_q_r2 = 0.0, jump_p_r2 = 0.0;
  /// Mean-load masses and jump log-moments entering w0.
  double mean_p_int = 0.0, mean_q_int = 0.0;
  double jump_p_log = 0.0, jump_q_log = 0.0;
  /// Numerator states at s = -(l+2)/2 ± i eps for l = -1, 1, 3, ordered
  /// {+,-} per l; stresses read them at r^{l/2 -+ ie}, displacements one
  /// radial order higher.
  std::array<MellinState, 6> pole_states{};
};

/// Builds the expansion data.  Requires a balanced plane-strain load case and
/// a pair with separated oscillatory poles (|d*| not tiny); throws
/// input_error otherwise.
TipExpansion tip_expansion(const BimaterialParams& p, const LoadCase& lc,
                           double tol = 1e-12);

/// Truncated expansion at (r, theta), theta in [-pi, pi].  Orders:
///   1 -> beth_{-1/2} and V_0 + V_{1/2},   2 -> + T and V_1 r,
///   3 -> + beth_{1/2} and V_{3/2},        4 -> + S r and V_2 r²,
///   5 -> + beth_{3/2} and V_{5/2}.
FieldValue field_asymptotics(double r, double theta, int n_terms,
                             const TipExpansion& te);

/// Numerical inversion of the transformed solution along Re s = omega with
/// 0 < omega < 1/2 (admissible for the stress and displacement strips alike).
/// tol controls the contour quadrature; the stress error scales like
/// r^{-omega-1}.  Point atoms are not invertible on the faces theta = ±pi
/// (no tail decay there); use smooth loads for face evaluation.  Throws
/// numerical_error when the contour tail has not decayed by the cap.
FieldValue mellin_inverse(double r, double theta, const BimaterialParams& p,
                          const LoadCase& lc, double omega = 0.25,
                          double tol = 1e-8);

}  // namespace wfc
