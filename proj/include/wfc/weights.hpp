#pragma once

#include "wfc/mat2.hpp"
#include "wfc/materials.hpp"

namespace wfc {

// Half-plane of analyticity for the line transforms: Plus functions are
// analytic for Im(beta) > 0 (displacement-jump side), Minus functions for
// Im(beta) < 0 (traction side).  Both admit real-axis limits.
enum class Side { Plus, Minus };

// Singular weight-function traces on the bonded line.  The weight crack
// occupies x1 > 0: the displacement jump lives there, the traction weight
// lives on the intact part x1 < 0.  Matrix layout: row = displacement or
// traction component (1, 2), column = weight index (1, 2).
struct WeightSample {
  double at = 0.0;
  Mat2c jumpU;  // [U](x1), zero for x1 < 0
  Mat2c meanU;  // <U>(x1), nonzero on both sides
  Mat2c sigma;  // traction rows (21), (22); zero for x1 > 0
};

WeightSample plane_strain_trace(double x1, const BimaterialParams& p);

// d/dx1 of the x1 > 0 branch of the traces above (jumpU and meanU only;
// sigma is identically zero there).  Used by the integrated-by-parts
// second-coefficient route.
WeightSample plane_strain_trace_derivative(double x1, const BimaterialParams& p);

// Closed-form one-sided transforms of the traces:
//   Side::Plus  -> [Ubar]+(beta), requires Im(beta) >= 0, beta != 0
//   Side::Minus -> Sigmabar-(beta), requires Im(beta) <= 0, beta != 0
Mat2c plane_strain_transform(cplx beta, Side side, const BimaterialParams& p);

// Antiplane weight traces on the line.
struct Mode3Sample {
  double at = 0.0;
  cplx jumpU3;   // zero for x1 < 0
  cplx meanU3;   // (eta/2) * jumpU3 for x1 > 0, zero for x1 < 0
  cplx sigma32;  // zero for x1 > 0
};

Mode3Sample mode3_trace(double x1, const BimaterialParams& p);

// Transforms of the antiplane traces (same side convention as above).
// Side::Plus -> [Ubar3]+ (scalar), Side::Minus -> Sigmabar32-.
cplx mode3_transform(cplx beta, Side side, const BimaterialParams& p);

// Full-plane antiplane weight field; x2 == 0 is rejected (use mode3_trace
// for the line limits).
struct Mode3Field {
  cplx u3;
  cplx s31;
  cplx s32;
};

Mode3Field mode3_field(double x1, double x2, const BimaterialParams& p);

}  // namespace wfc
