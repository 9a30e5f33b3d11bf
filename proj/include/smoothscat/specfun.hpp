#pragma once

#include "smoothscat/types.hpp"

namespace smoothscat {

// Error function, |error| < 1e-15 absolute.
inline Real erf(Real x) { return std::erf(x); }

// log Gamma(x), x > 0, relative error < 1e-14.
Real log_gamma(Real x);

struct Hankel01 {
  Complex h0;
  Complex h1;
};

// H_0^{(1)}(z) and H_1^{(1)}(z) together. Valid for z != 0 with
// |arg z| <= pi/4; relative error < 1e-12 for 1e-8 <= |z| <= 1e4 in the
// small-imaginary regime (|Im z| <~ 1, the wavenumbers used here). For
// strongly decayed values (Im z >> 1, |z| below the crossover) the ascending
// series floors at an absolute error ~1e-19 e^{|z|}.
Hankel01 hankel1_01(Complex z);

// H_n^{(1)}(z), n in {0,1}.
Complex hankel1(int order, Complex z);

// J_{n+1/2}(x) for x > 0 via spherical Bessel functions, relative error
// < 1e-12.
Real bessel_j_half(int n, Real x);

// spherical Bessel j_n(x), x > 0
Real sph_bessel_j(int n, Real x);

}  // namespace smoothscat
