#pragma once

#include <algorithm>
#include <complex>

namespace wfc {

using cplx = std::complex<double>;

/// Complex 2-vector and 2x2 matrix, just enough linear algebra for the
/// two-component interface problem.  Everything is by-value; entries are
/// row-major (m(i,j) = row i, column j).

struct Vec2c {
  cplx x{}, y{};

  Vec2c operator+(const Vec2c& o) const { return {x + o.x, y + o.y}; }
  Vec2c operator-(const Vec2c& o) const { return {x - o.x, y - o.y}; }
  Vec2c operator*(cplx s) const { return {x * s, y * s}; }
  Vec2c operator/(cplx s) const { return {x / s, y / s}; }
};

inline Vec2c operator*(cplx s, const Vec2c& v) { return v * s; }

struct Mat2c {
  cplx a{}, b{}, c{}, d{};  // [[a, b], [c, d]]

  cplx operator()(int i, int j) const {
    return i == 0 ? (j == 0 ? a : b) : (j == 0 ? c : d);
  }

  Mat2c operator+(const Mat2c& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  Mat2c operator-(const Mat2c& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  Mat2c operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }

  Mat2c operator*(const Mat2c& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Vec2c operator*(const Vec2c& v) const {
    return {a * v.x + b * v.y, c * v.x + d * v.y};
  }

  Mat2c transpose() const { return {a, c, b, d}; }
  cplx det() const { return a * d - b * c; }
  Mat2c inverse() const {
    const cplx dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
};

inline Mat2c operator*(cplx s, const Mat2c& m) { return m * s; }

inline double max_abs(const Mat2c& m) {
  double r = std::abs(m.a);
  r = std::max(r, std::abs(m.b));
  r = std::max(r, std::abs(m.c));
  return std::max(r, std::abs(m.d));
}

inline Mat2c identity2() { return {1.0, 0.0, 0.0, 1.0}; }

}  // namespace wfc
