#pragma once

#include <vector>

#include "smoothscat/geometry.hpp"
#include "smoothscat/types.hpp"

namespace smoothscat {

// Fourier representation of a boundary map S^1 -> Gamma, coefficients for the
// two coordinate functions at orders -N..N.
class FourierBoundaryMap {
 public:
  FourierBoundaryMap(std::vector<Complex> coef_x, std::vector<Complex> coef_y);

  // arclength-proportional parameterization of a closed curve, truncation
  // chosen so trailing coefficients fall below tail_tol relative to the scale
  static FourierBoundaryMap from_curve(const PiecewiseCurve& curve,
                                       Real tail_tol = 1e-12,
                                       int max_order = 4096);

  int max_order() const { return n_; }
  Complex coef_x(int order) const { return cx_[order + n_]; }
  Complex coef_y(int order) const { return cy_[order + n_]; }

  Vec2 boundary_point(Real theta) const;

 private:
  int n_ = 0;
  std::vector<Complex> cx_, cy_;  // index order + n_
};

// Harmonic extension with coefficient damping r^{|j|}; a diffeomorphism of the
// disk when the boundary curve is convex (Rado-Kneser-Choquet).
Vec2 harmonic_extension(const FourierBoundaryMap& map, Real r, Real theta);

// Convex curve given by its support function g(theta) = sum beta_n e^{in theta}.
class SupportFunctionMap {
 public:
  // beta holds orders -N..N and must be Hermitian (real g); strict convexity
  // g + g'' > 0 is checked on a 4096-point grid.
  explicit SupportFunctionMap(std::vector<Complex> beta);

  int max_order() const { return n_; }
  Complex beta(int order) const { return beta_[order + n_]; }
  Real support(Real theta) const;
  Real support_second(Real theta) const;

 private:
  int n_ = 0;
  std::vector<Complex> beta_;
};

// G(theta) = g (cos,sin) + g' (-sin,cos); outward normal (cos,sin) at theta.
Vec2 gauss_map_curve(const SupportFunctionMap& map, Real theta);

// Harmonic extension G(theta,r) = sum beta_{n-1} (2-n) r^{|n|} e^{in theta}.
Vec2 gauss_map_extension(const SupportFunctionMap& map, Real r, Real theta);

}  // namespace smoothscat
