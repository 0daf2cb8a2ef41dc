#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wfc/loading.hpp"
#include "wfc/quadrature.hpp"

using namespace wfc;

TEST_CASE("three point case decomposes into the expected atoms") {
  const double F = 2.0, a = 1.0, b = 0.4;
  const auto dec = decompose(three_point_case(F, a, b));
  CHECK(dec.gap == doctest::Approx(a - b));

  const auto& sym = dec.sym[1].atoms;   // normal component, r-view
  const auto& skew = dec.skew[1].atoms;
  REQUIRE(sym.size() == 3);
  REQUIRE(skew.size() == 3);
  // sorted by radius: a-b, a, a+b
  CHECK(sym[0].r == doctest::Approx(a - b));
  CHECK(sym[0].c == doctest::Approx(-F / 4.0));
  CHECK(sym[1].r == doctest::Approx(a));
  CHECK(sym[1].c == doctest::Approx(-F / 2.0));
  CHECK(sym[2].r == doctest::Approx(a + b));
  CHECK(sym[2].c == doctest::Approx(-F / 4.0));
  CHECK(skew[0].c == doctest::Approx(F / 2.0));
  CHECK(skew[1].c == doctest::Approx(-F));
  CHECK(skew[2].c == doctest::Approx(F / 2.0));
  // shear components stay empty
  CHECK(dec.sym[0].empty());
  CHECK(dec.skew[0].empty());
}

TEST_CASE("coincident atoms merge exactly") {
  // with b = 0 the three forces collapse to a self-equilibrated pair
  const auto dec = decompose(three_point_case(1.0, 2.0, 0.0));
  REQUIRE(dec.sym[1].atoms.size() == 1);
  CHECK(dec.sym[1].atoms[0].c == doctest::Approx(-1.0));
  CHECK(dec.skew[1].atoms.empty());  // exact cancellation drops the atom
}

TEST_CASE("three point preconditions") {
  CHECK_THROWS_AS(three_point_case(1.0, -1.0, 0.0), input_error);
  CHECK_THROWS_AS(three_point_case(1.0, 1.0, 1.0), input_error);
  CHECK_THROWS_AS(three_point_case(1.0, 1.0, 1.5), input_error);
}

TEST_CASE("balance report flags an unpaired point force") {
  LoadCase lc;
  lc.mode = Mode::PlaneStrain;
  lc.tractions.push_back({Face::Upper, PointLoad{-1.0, {0.0, -3.0, 0.0}}});
  const auto rep = check_balance(lc);
  CHECK(!rep.balanced);
  CHECK(rep.force[1] == doctest::Approx(3.0));  // net transmitted force
  CHECK_THROWS_AS(validate(lc), input_error);
  lc.allow_unbalanced = true;
  CHECK_NOTHROW(validate(lc));
}

TEST_CASE("balanced canonical cases pass validation") {
  CHECK(check_balance(three_point_case(1.0, 1.0, 0.5)).balanced);
  CHECK(check_balance(point_pair_case(1.0, 0.5, 2.0)).balanced);
  CHECK(check_balance(mode3_point_case(1.0, 1.5)).balanced);
  CHECK(check_balance(smooth_pair_case(1.0, 0.5, 1.5, 6)).balanced);
}

TEST_CASE("balance catches a moment imbalance with zero net force") {
  LoadCase lc;
  lc.mode = Mode::PlaneStrain;
  // equal and opposite jumps at different radii: zero force, nonzero moment
  lc.tractions.push_back({Face::Upper, PointLoad{-1.0, {0.0, -1.0, 0.0}}});
  lc.tractions.push_back({Face::Lower, PointLoad{-2.0, {0.0, -1.0, 0.0}}});
  const auto rep = check_balance(lc);
  CHECK(std::abs(rep.force[1]) < 1e-14);
  CHECK(std::abs(rep.moment - 1.0) < 1e-12);  // ∫ r [p] dr = -1*1 + 2*1
  CHECK(!rep.balanced);
}

TEST_CASE("support validation") {
  LoadCase lc;
  lc.mode = Mode::PlaneStrain;
  lc.tractions.push_back({Face::Upper, PointLoad{0.5, {0.0, -1.0, 0.0}}});
  CHECK_THROWS_AS(check_balance(lc), input_error);

  LoadCase lc2 = point_pair_case(1.0, 0.0, 1.0);
  lc2.gap = 2.0;  // declared clearance exceeds the actual distance
  CHECK_THROWS_AS(validate(lc2), input_error);

  LoadCase lc3;
  lc3.mode = Mode::ModeIII;
  lc3.tractions.push_back({Face::Upper, PointLoad{-1.0, {0.5, 0.0, -1.0}}});
  CHECK_THROWS_AS(check_balance(lc3), input_error);  // in-plane comp in mode III
}

TEST_CASE("derived gap equals the nearest support point") {
  LoadCase lc = point_pair_case(1.0, 0.0, 1.25);
  lc.gap = 0.0;
  CHECK(validate(lc) == doctest::Approx(1.25));
  const auto dec = decompose(lc);
  CHECK(dec.gap == doctest::Approx(1.25));
}

TEST_CASE("face reconstruction from the decomposition") {
  const auto lc = smooth_pair_case(2.0, 0.5, 1.5, 6);
  const auto dec = decompose(lc);
  const auto& sm = std::get<SmoothLoad>(lc.tractions[0].load);
  for (double x1 : {-0.6, -0.9, -1.2, -1.4}) {
    const double expect = sm.f(x1)[1];
    CHECK(dec.face_smooth(Face::Upper, 1, x1) == doctest::Approx(expect));
    CHECK(dec.face_smooth(Face::Lower, 1, x1) == doctest::Approx(expect));
  }
  // symmetric pair: skew part vanishes identically
  CHECK(std::abs(dec.skew[1].evaluate(1.0)) < 1e-15);
}

TEST_CASE("radial moments: atoms are exact") {
  RadialPart part;
  part.atoms = {{0.5, 2.0}, {2.0, -1.0}};
  const cplx s(-0.5, 0.3);
  const cplx expect = 2.0 * std::exp(s * std::log(0.5)) -
                      1.0 * std::exp(s * std::log(2.0));
  CHECK(std::abs(radial_mellin(part, s) - expect) < 1e-15);
  CHECK(radial_moment(part, -1.0) == doctest::Approx(2.0 / 0.5 - 1.0 / 2.0));
  CHECK(radial_log_moment(part) ==
        doctest::Approx(2.0 * std::log(0.5) - std::log(2.0)));
}

TEST_CASE("radial moments: polynomial closed form matches quadrature") {
  const auto lc_poly = smooth_pair_case(1.0, 0.5, 1.5, 6);
  // the same bump through opaque handles
  const auto coeffs = bump_poly_coeffs(0.5, 1.5, 6);
  auto eval = [coeffs](double r) {
    double v = 0.0;
    for (size_t k = coeffs.size(); k-- > 0;) v = v * r + coeffs[k];
    return -v;  // smooth_pair_case applies -amp
  };
  LoadCase lc_fn;
  lc_fn.mode = Mode::PlaneStrain;
  SmoothLoad sm;
  sm.x_lo = -1.5;
  sm.x_hi = -0.5;
  sm.f = [eval](double x1) {
    return std::array<double, 3>{0.0, eval(-x1), 0.0};
  };
  lc_fn.tractions.push_back({Face::Upper, sm});
  lc_fn.tractions.push_back({Face::Lower, sm});

  const auto dp = decompose(lc_poly);
  const auto df = decompose(lc_fn);
  for (const cplx s : {cplx(-0.5, 0.3), cplx(0.0, 0.0), cplx(-1.5, -0.07)}) {
    const cplx a = radial_mellin(dp.sym[1], s);
    const cplx b = radial_mellin(df.sym[1], s, 1e-12);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
  }
  CHECK(std::abs(radial_log_moment(dp.sym[1]) -
                 radial_log_moment(df.sym[1], 1e-12)) < 1e-10);
}

TEST_CASE("bump polynomial endpoints vanish to high order") {
  const auto c = bump_poly_coeffs(0.5, 1.5, 6);
  REQUIRE(c.size() == 13);
  auto eval = [&](double r) {
    double v = 0.0;
    for (size_t k = c.size(); k-- > 0;) v = v * r + c[k];
    return v;
  };
  CHECK(std::abs(eval(0.5)) < 1e-12);
  CHECK(std::abs(eval(1.5)) < 1e-12);
  CHECK(eval(1.0) == doctest::Approx(std::pow(0.25, 6.0)));
}
