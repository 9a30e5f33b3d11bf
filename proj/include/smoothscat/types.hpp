#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace smoothscat {

using Real = double;
using Complex = std::complex<Real>;
using Vec2 = Eigen::Vector2d;
using VecX = Eigen::VectorXd;
using VecXc = Eigen::VectorXcd;
using MatX = Eigen::MatrixXd;
using MatXc = Eigen::MatrixXcd;

inline constexpr Real pi = 3.14159265358979323846;
inline constexpr Complex iu{0.0, 1.0};

// Numerical failures (exit code 3 at the CLI); std::invalid_argument covers
// usage/config errors (exit code 2).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularityError : NumericalError {
  using NumericalError::NumericalError;
};

struct InfeasibleToleranceError : NumericalError {
  using NumericalError::NumericalError;
};

struct DegenerateGeometryError : NumericalError {
  using NumericalError::NumericalError;
};

struct NearResonanceError : NumericalError {
  using NumericalError::NumericalError;
};

struct NearBoundaryError : NumericalError {
  using NumericalError::NumericalError;
};

// rotate v by +90 degrees (left of v)
inline Vec2 perp_left(const Vec2& v) { return Vec2(-v.y(), v.x()); }
// rotate v by -90 degrees; outward normal of a CCW curve given the tangent
inline Vec2 perp_right(const Vec2& v) { return Vec2(v.y(), -v.x()); }

inline Real cross2(const Vec2& a, const Vec2& b) {
  return a.x() * b.y() - a.y() * b.x();
}

}  // namespace smoothscat
