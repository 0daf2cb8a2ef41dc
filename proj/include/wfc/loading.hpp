#pragma once

#include <array>
#include <complex>
#include <functional>
#include <variant>
#include <vector>

#include "wfc/errors.hpp"
#include "wfc/mat2.hpp"

namespace wfc {

enum class Face { Upper, Lower };
enum class Mode { PlaneStrain, ModeIII };

/// Tractions are prescribed on the crack faces x1 < 0, x2 = 0^± as
/// sigma_2j(x1, 0^±) = p_j^±(x1).  Components are indexed
/// 0 -> p1 (in-plane shear), 1 -> p2 (normal), 2 -> p3 (antiplane shear).

struct PointLoad {
  double x1 = -1.0;                // strictly negative, at most -gap
  std::array<double, 3> comps{};  // concentrated line-force densities
};

struct SmoothLoad {
  /// Components as a function of x1 on [x_lo, x_hi]; zero outside.
  std::function<std::array<double, 3>(double)> f;
  /// Optional derivative handles (d/dx1), needed by the integrated-by-parts
  /// routes of the higher-order coefficients.
  std::function<std::array<double, 3>(double)> df, d2f;
  double x_lo = -2.0, x_hi = -1.0;
  /// Optional exact polynomial description per component: coefficients a_k of
  /// p_j(x1) = sum_k a_k r^k with r = -x1, valid on the support.  When set it
  /// supersedes the handles and enables closed-form transforms.
  std::array<std::vector<double>, 3> poly_r{};
};

struct FaceTraction {
  Face face = Face::Upper;
  std::variant<PointLoad, SmoothLoad> load;
};

struct LoadCase {
  Mode mode = Mode::PlaneStrain;
  std::vector<FaceTraction> tractions;
  /// Clearance between the tip and the nearest loaded point.  0 means
  /// "derive from the supports".
  double gap = 0.0;
  bool allow_unbalanced = false;
};

/// ---- decomposition into symmetric / skew-symmetric parts, radial view ----
///
/// Downstream formulas consume the face loads through r = -x1 > 0:
/// component 0 holds q(r) = p1(-r), component 1 holds p(r) = p2(-r),
/// component 2 holds p3(-r).  "sym" is the face average <p> and "skew" the
/// face jump [p] = p^+ - p^-, so p^± = sym ± skew/2 exactly.

struct RadialAtom {
  double r;  // > 0
  double c;  // weight of c * delta(r - r0)
};

struct RadialSmooth {
  std::function<double(double)> f, df, d2f;
  bool has_df = false, has_d2f = false;
  double r_lo, r_hi;  // 0 < r_lo < r_hi
  std::vector<double> poly;  // optional exact coefficients in r
  bool has_poly = false;
};

struct RadialPart {
  std::vector<RadialAtom> atoms;
  std::vector<RadialSmooth> smooth;

  bool empty() const { return atoms.empty() && smooth.empty(); }
  double evaluate(double r) const;
};

struct LoadDecomposition {
  Mode mode = Mode::PlaneStrain;
  double gap = 0.0;
  std::array<RadialPart, 3> sym, skew;

  /// Reconstruction of one face component at x1 < 0 (atoms excluded; smooth
  /// parts only), used by round-trip checks.
  double face_smooth(Face face, int comp, double x1) const;
};

/// Validates a load case: admissible supports (x1 <= -gap < 0), components
/// matching the mode, handles present, and balance unless explicitly waived.
/// Returns the effective gap.  Throws input_error on violations.
double validate(const LoadCase& lc);

LoadDecomposition decompose(const LoadCase& lc);

/// ---- global balance -------------------------------------------------------
///
/// The loads act on the two faces of the same slit, so the resultant force
/// transmitted to the body is  F_j = -∫ [p_j] dx1  and the resultant moment
/// about the tip is  M = -∫ x1 [p_2] dx1  (antiplane: [p_3]).

struct BalanceReport {
  std::array<double, 3> force{};
  double moment = 0.0;
  double force_scale = 0.0;   // total absolute load mass
  double moment_scale = 0.0;  // total absolute first moment
  bool balanced = false;
};

BalanceReport check_balance(const LoadCase& lc, double tol = 1e-12);

/// ---- canonical cases ------------------------------------------------------

/// Concentrated normal force -F on the upper face at x1 = -a, reacted by two
/// half-forces on the lower face at x1 = -(a±b).  Requires a > 0, 0 <= b < a;
/// the gap is a - b.
LoadCase three_point_case(double F, double a, double b);

/// Equal point tractions on both faces at x1 = -a: normal magnitude P and
/// shear magnitude Q pressed into the faces (p1 = -Q, p2 = -P on both).
LoadCase point_pair_case(double P, double Q, double a);

/// Antiplane analogue: p3 = -F on both faces at x1 = -a.
LoadCase mode3_point_case(double F, double a);

/// Coefficients of [(r - r0)(r1 - r)]^k, a C^{k-1} bump supported on
/// [r0, r1]; the workhorse smooth test load with exact transforms.
std::vector<double> bump_poly_coeffs(double r0, double r1, int k);

/// Equal smooth normal pressure -amp*[(r-r0)(r1-r)]^k on both faces.
LoadCase smooth_pair_case(double amp, double r0, double r1, int k);

/// ---- moments of a radial part --------------------------------------------

/// ∫ f(r) r^s dr over the support (atoms: sum of c * r0^s).  Exact for atoms
/// and polynomial parts, adaptive quadrature otherwise.
cplx radial_mellin(const RadialPart& part, cplx s, double tol = 1e-12);

/// ∫ f(r) r^power dr for real power.
double radial_moment(const RadialPart& part, double power, double tol = 1e-12);

/// ∫ f(r) ln r dr.
double radial_log_moment(const RadialPart& part, double tol = 1e-12);

}  // namespace wfc
