#include "smoothscat/specfun.hpp"

#include <cmath>

namespace smoothscat {

Real log_gamma(Real x) {
  if (!(x > 0.0)) throw std::invalid_argument("log_gamma: x must be positive");
  return std::lgamma(x);
}

namespace {

using CLong = std::complex<long double>;
constexpr long double euler_gamma_l = 0.577215664901532860606512090082402431L;

// Ascending series for J0, Y0, J1, Y1 evaluated in extended precision.
// The alternating sums lose ~|z| digits of the working precision, so the
// 64-bit mantissa keeps double-accurate results up to the |z|=15 crossover.
Hankel01 hankel_series(Complex zd) {
  const CLong z(zd.real(), zd.imag());
  const CLong q = z * z / 4.0L;

  CLong term(1.0L), j0 = term, s0(0.0L);
  long double hm = 0.0L;
  for (int m = 1; m < 200; ++m) {
    term *= -q / CLong((long double)m * m);
    hm += 1.0L / m;
    j0 += term;
    s0 += term * hm;
    if (std::abs(term) < 1e-22L * std::abs(j0) && m > 3) break;
  }

  term = CLong(1.0L);
  CLong s1 = term, sy1 = term;  // sy1 accumulates (H_m + H_{m+1}) terms
  hm = 0.0L;
  long double hm1 = 1.0L;
  for (int m = 1; m < 200; ++m) {
    term *= -q / CLong((long double)m * (m + 1));
    hm += 1.0L / m;
    hm1 += 1.0L / (m + 1);
    s1 += term;
    sy1 += term * (hm + hm1);
    if (std::abs(term) < 1e-22L * std::abs(s1) && m > 3) break;
  }
  const CLong j1 = (z / 2.0L) * s1;

  const long double two_over_pi = 2.0L / 3.14159265358979323846264338327950288L;
  const CLong L = std::log(z / 2.0L) + euler_gamma_l;
  const CLong y0 = two_over_pi * (L * j0 - s0);
  const CLong y1 = two_over_pi * (L * j1) -
                   CLong(two_over_pi) / z -
                   (z * (two_over_pi / 4.0L)) * sy1;

  Hankel01 out;
  out.h0 = Complex((double)(j0.real() - y0.imag()), (double)(j0.imag() + y0.real()));
  out.h1 = Complex((double)(j1.real() - y1.imag()), (double)(j1.imag() + y1.real()));
  return out;
}

// Large-|z| Hankel expansion, truncated at the smallest term.
CLong hankel_asymptotic(CLong z, int nu) {
  const long double pil = 3.14159265358979323846264338327950288L;
  const long double mu = 4.0L * nu * nu;
  CLong term(1.0L), sum(1.0L);
  long double prev = 1e30L;
  for (int m = 1; m <= 34; ++m) {
    term *= CLong(0.0L, 1.0L) * CLong((mu - (2 * m - 1) * (2 * m - 1)) / (8.0L * m)) / z;
    const long double mag = std::abs(term);
    if (mag > prev) break;
    sum += term;
    prev = mag;
  }
  const CLong pref =
      std::sqrt(CLong(2.0L) / (pil * z)) *
      std::exp(CLong(0.0L, 1.0L) * (z - CLong(nu * pil / 2.0L + pil / 4.0L)));
  return pref * sum;
}

}  // namespace

Hankel01 hankel1_01(Complex z) {
  if (z == Complex(0.0, 0.0))
    throw SingularityError("hankel1: argument is zero");
  if (std::abs(z) <= 15.0) return hankel_series(z);
  const CLong zl(z.real(), z.imag());
  Hankel01 out;
  const CLong h0 = hankel_asymptotic(zl, 0);
  const CLong h1 = hankel_asymptotic(zl, 1);
  out.h0 = Complex((double)h0.real(), (double)h0.imag());
  out.h1 = Complex((double)h1.real(), (double)h1.imag());
  return out;
}

Complex hankel1(int order, Complex z) {
  if (order != 0 && order != 1)
    throw std::invalid_argument("hankel1: order must be 0 or 1");
  Hankel01 h = hankel1_01(z);
  return order == 0 ? h.h0 : h.h1;
}

Real sph_bessel_j(int n, Real x) {
  if (!(x > 0.0)) throw std::invalid_argument("sph_bessel_j: x must be positive");
  if (n == 0) return std::sin(x) / x;
  const Real j0 = std::sin(x) / x;
  const Real j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  if (n == 1) return j1;
  if (x > n) {
    // upward recurrence is stable above the turning point
    Real jm = j0, j = j1;
    for (int m = 1; m < n; ++m) {
      Real jn = (2 * m + 1) / x * j - jm;
      jm = j;
      j = jn;
    }
    return j;
  }
  // Miller downward recurrence. Normalize against whichever of j0, j1 is
  // larger in magnitude; their zeros interlace, so one is always safe.
  const int start = n + 40 + static_cast<int>(2.0 * x);
  Real fp = 0.0;     // f_{m+1}
  Real f = 1e-300;   // f_m, starting at m = start
  Real fn = 0.0, f1 = 0.0;
  for (int m = start; m >= 1; --m) {
    const Real fm1 = (2 * m + 1) / x * f - fp;
    fp = f;
    f = fm1;
    if (m - 1 == n) fn = f;
    if (m - 1 == 1) f1 = f;
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      fp *= 1e-250;
      fn *= 1e-250;
      f1 *= 1e-250;
    }
  }
  if (std::abs(j0) >= std::abs(j1)) return fn * (j0 / f);
  return fn * (j1 / f1);
}

Real bessel_j_half(int n, Real x) {
  if (!(x > 0.0))
    throw std::invalid_argument("bessel_j_half: x must be positive");
  return sph_bessel_j(n, x) * std::sqrt(2.0 * x / pi);
}

}  // namespace smoothscat
