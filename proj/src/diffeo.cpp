#include "smoothscat/diffeo.hpp"

#include <cmath>

namespace smoothscat {

FourierBoundaryMap::FourierBoundaryMap(std::vector<Complex> coef_x,
                                       std::vector<Complex> coef_y)
    : cx_(std::move(coef_x)), cy_(std::move(coef_y)) {
  if (cx_.size() != cy_.size() || cx_.empty() || cx_.size() % 2 == 0)
    throw std::invalid_argument(
        "FourierBoundaryMap: coefficient arrays must share an odd size");
  n_ = static_cast<int>(cx_.size() / 2);
}

FourierBoundaryMap FourierBoundaryMap::from_curve(const PiecewiseCurve& curve,
                                                  Real tail_tol, int max_order) {
  const Real L = curve.total_arclength();
  for (int m = 512; m <= 2 * max_order; m *= 2) {
    // trapezoid rule on the uniform grid = discrete Fourier coefficients
    std::vector<Vec2> pts(m);
    Real scale = 0.0;
    for (int j = 0; j < m; ++j) {
      pts[j] = curve_eval(curve, L * j / m).position;
      scale = std::max(scale, pts[j].norm());
    }
    const int nkeep = m / 4;
    std::vector<Complex> cx(2 * nkeep + 1), cy(2 * nkeep + 1);
    for (int n = -nkeep; n <= nkeep; ++n) {
      Complex sx(0, 0), sy(0, 0);
      for (int j = 0; j < m; ++j) {
        const Complex e = std::exp(-iu * (2.0 * pi * n * j / m));
        sx += pts[j].x() * e;
        sy += pts[j].y() * e;
      }
      cx[n + nkeep] = sx / Real(m);
      cy[n + nkeep] = sy / Real(m);
    }
    // trailing-coefficient check at the outermost orders
    Real tail = 0.0;
    for (int n = nkeep - 3; n <= nkeep; ++n)
      tail = std::max({tail, std::abs(cx[n + nkeep]), std::abs(cx[-n + nkeep]),
                       std::abs(cy[n + nkeep]), std::abs(cy[-n + nkeep])});
    if (tail < tail_tol * scale || m >= 2 * max_order)
      return FourierBoundaryMap(std::move(cx), std::move(cy));
  }
  throw NumericalError("FourierBoundaryMap: truncation did not converge");
}

Vec2 FourierBoundaryMap::boundary_point(Real theta) const {
  return harmonic_extension(*this, 1.0, theta);
}

Vec2 harmonic_extension(const FourierBoundaryMap& map, Real r, Real theta) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("harmonic_extension: r must lie in [0,1]");
  const int n = map.max_order();
  Complex x(0, 0), y(0, 0);
  for (int j = -n; j <= n; ++j) {
    const Complex e = std::pow(r, std::abs(j)) * std::exp(iu * (j * theta));
    x += map.coef_x(j) * e;
    y += map.coef_y(j) * e;
  }
  return Vec2(x.real(), y.real());
}

SupportFunctionMap::SupportFunctionMap(std::vector<Complex> beta)
    : beta_(std::move(beta)) {
  if (beta_.empty() || beta_.size() % 2 == 0)
    throw std::invalid_argument("SupportFunctionMap: need an odd-sized array");
  n_ = static_cast<int>(beta_.size() / 2);
  for (int j = 1; j <= n_; ++j) {
    if (std::abs(beta_[n_ + j] - std::conj(beta_[n_ - j])) > 1e-12)
      throw std::invalid_argument(
          "SupportFunctionMap: coefficients must be Hermitian (real g)");
  }
  // strict convexity: g + g'' > 0
  for (int i = 0; i < 4096; ++i) {
    const Real th = 2.0 * pi * i / 4096;
    if (!(support(th) + support_second(th) > 0.0))
      throw std::invalid_argument(
          "SupportFunctionMap: g + g'' must be positive (strict convexity)");
  }
}

Real SupportFunctionMap::support(Real theta) const {
  Complex s(0, 0);
  for (int j = -n_; j <= n_; ++j)
    s += beta_[j + n_] * std::exp(iu * (j * theta));
  return s.real();
}

Real SupportFunctionMap::support_second(Real theta) const {
  Complex s(0, 0);
  for (int j = -n_; j <= n_; ++j)
    s += -Real(j * j) * beta_[j + n_] * std::exp(iu * (j * theta));
  return s.real();
}

Vec2 gauss_map_curve(const SupportFunctionMap& map, Real theta) {
  const int n = map.max_order();
  Real g = 0.0, gp = 0.0;
  for (int j = -n; j <= n; ++j) {
    const Complex e = map.beta(j) * std::exp(iu * (j * theta));
    g += e.real();
    gp += (iu * Real(j) * e).real();
  }
  return g * Vec2(std::cos(theta), std::sin(theta)) +
         gp * Vec2(-std::sin(theta), std::cos(theta));
}

Vec2 gauss_map_extension(const SupportFunctionMap& map, Real r, Real theta) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("gauss_map_extension: r must lie in [0,1]");
  const int n = map.max_order();
  Complex G(0, 0);
  for (int m = -n + 1; m <= n + 1; ++m) {
    const Complex b = map.beta(m - 1);
    G += b * Real(2 - m) * std::pow(r, std::abs(m)) * std::exp(iu * (m * theta));
  }
  return Vec2(G.real(), G.imag());
}

}  // namespace smoothscat
