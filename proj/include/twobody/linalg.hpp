#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace twobody {

inline constexpr double pi = std::numbers::pi;

/// 2x2 real matrix acting on (k1, k2)^T.
using Matrix2 = Eigen::Matrix2d;

/// Momentum pair (k1, k2) in units hbar/L.
struct MomentumVector {
  double k1 = 0.0;
  double k2 = 0.0;

  Eigen::Vector2d vec() const { return {k1, k2}; }
  static MomentumVector from(const Eigen::Vector2d& v) { return {v(0), v(1)}; }

  double norm() const { return std::hypot(k1, k2); }
  bool finite() const { return std::isfinite(k1) && std::isfinite(k2); }
  bool approx_equal(const MomentumVector& o, double tol = 1e-12) const {
    return std::abs(k1 - o.k1) <= tol && std::abs(k2 - o.k2) <= tol;
  }
  MomentumVector folded() const { return {std::abs(k1), std::abs(k2)}; }

  friend MomentumVector operator-(const MomentumVector& a, const MomentumVector& b) {
    return {a.k1 - b.k1, a.k2 - b.k2};
  }
  friend MomentumVector operator+(const MomentumVector& a, const MomentumVector& b) {
    return {a.k1 + b.k1, a.k2 + b.k2};
  }
  friend MomentumVector operator*(double s, const MomentumVector& a) { return {s * a.k1, s * a.k2}; }
};

inline double max_norm(const Matrix2& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_norm_distance(const Matrix2& a, const Matrix2& b) { return max_norm(a - b); }
inline bool near(const Matrix2& a, const Matrix2& b, double tol = 1e-10) {
  return max_norm_distance(a, b) <= tol;
}

inline Matrix2 sigma_x() { return (Matrix2() << 0, 1, 1, 0).finished(); }
inline Matrix2 sigma_z() { return (Matrix2() << 1, 0, 0, -1).finished(); }

}  // namespace twobody
