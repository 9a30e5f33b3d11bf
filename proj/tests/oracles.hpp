#pragma once

// Test-side oracles, implemented independently of the library code paths they
// check: adaptive Simpson integration, series special functions, the cylinder
// scattering series, and closed-form log integrals.

#include <complex>
#include <functional>
#include <vector>

#include "smoothscat/types.hpp"

namespace oracles {

using smoothscat::Complex;
using smoothscat::Real;
using smoothscat::Vec2;

// adaptive Simpson with Richardson correction
Real integrate(const std::function<Real(Real)>& f, Real a, Real b,
               Real tol = 1e-13);
Complex integrate_c(const std::function<Complex(Real)>& f, Real a, Real b,
                    Real tol = 1e-13);

// Maclaurin-series error function in extended precision
Real erf_series(Real x);

// real-argument J0, Y0 from the ascending series in extended precision
Real j0_series(Real x);
Real y0_series(Real x);

// H0^(1), H1^(1) from the complex ascending series in extended precision;
// relative accuracy ~ e^{|z|} * 5e-20, so ~1e-12 up to |z| ~ 16
std::pair<Complex, Complex> hankel_series_oracle(Complex z);

// closed-form int_segment ln|x - y| ds(y) over the straight segment [p, q]
Real log_integral_segment(const Vec2& x, const Vec2& p, const Vec2& q);

// Scattered field of a plane wave (travel angle phi) hitting a sound-soft or
// sound-hard circle of given radius at the origin; separation-of-variables
// series with machine-precision truncation. Uses std::cyl_bessel_j/neumann.
Complex disc_scattered_field(bool dirichlet, Real k, Real radius, Real phi,
                             const Vec2& x);

}  // namespace oracles
