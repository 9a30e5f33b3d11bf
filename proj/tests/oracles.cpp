#include "oracles.hpp"

#include <cmath>

namespace oracles {

namespace {

template <typename Scalar>
Scalar simpson(const std::function<Scalar(Real)>& f, Real a, Real b, Scalar fa,
               Scalar fm, Scalar fb, Real tol, Scalar whole, int depth) {
  const Real m = 0.5 * (a + b);
  const Real lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const Scalar flm = f(lm), frm = f(rm);
  const Scalar left = Scalar((m - a) / 6.0) * (fa + Scalar(4.0) * flm + fm);
  const Scalar right = Scalar((b - m) / 6.0) * (fm + Scalar(4.0) * frm + fb);
  const Scalar delta = left + right - whole;
  // the roundoff floor stops runaway recursion once tol underflows the
  // achievable accuracy of the sum
  const Real rfloor = 4e-16 * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || std::abs(delta) < rfloor)
    return left + right + delta / Scalar(15.0);
  return simpson(f, a, m, fa, flm, fm, tol / 2, left, depth - 1) +
         simpson(f, m, b, fm, frm, fb, tol / 2, right, depth - 1);
}

template <typename Scalar>
Scalar integrate_impl(const std::function<Scalar(Real)>& f, Real a, Real b,
                      Real tol) {
  // split into a few base cells so oscillatory integrands seed well
  const int cells = 8;
  Scalar total{};
  for (int c = 0; c < cells; ++c) {
    const Real ca = a + (b - a) * c / cells;
    const Real cb = a + (b - a) * (c + 1) / cells;
    const Real m = 0.5 * (ca + cb);
    const Scalar fa = f(ca), fm = f(m), fb = f(cb);
    const Scalar whole = Scalar((cb - ca) / 6.0) * (fa + Scalar(4.0) * fm + fb);
    total += simpson(f, ca, cb, fa, fm, fb, tol / cells, whole, 60);
  }
  return total;
}

}  // namespace

Real integrate(const std::function<Real(Real)>& f, Real a, Real b, Real tol) {
  return integrate_impl<Real>(f, a, b, tol);
}

Complex integrate_c(const std::function<Complex(Real)>& f, Real a, Real b,
                    Real tol) {
  return integrate_impl<Complex>(f, a, b, tol);
}

Real erf_series(Real x) {
  // erf(x) = (2/sqrt(pi)) sum (-1)^n x^{2n+1} / (n! (2n+1))
  const long double xl = x;
  long double term = xl, sum = xl;
  for (int n = 1; n < 200; ++n) {
    term *= -xl * xl / n;
    sum += term / (2 * n + 1);
    if (std::fabs((double)(term / (2 * n + 1))) < 1e-22 * std::fabs((double)sum))
      break;
  }
  return (double)(2.0L / std::sqrt(3.14159265358979323846264338327950288L) *
                  sum);
}

Real j0_series(Real x) {
  const long double q = (long double)x * x / 4.0L;
  long double term = 1.0L, sum = 1.0L;
  for (int m = 1; m < 200; ++m) {
    term *= -q / ((long double)m * m);
    sum += term;
    if (std::fabs((double)term) < 1e-22 * std::fabs((double)sum) && m > 3) break;
  }
  return (double)sum;
}

Real y0_series(Real x) {
  const long double pil = 3.14159265358979323846264338327950288L;
  const long double eg = 0.577215664901532860606512090082402431L;
  const long double q = (long double)x * x / 4.0L;
  long double term = 1.0L, j0 = 1.0L, s = 0.0L, hm = 0.0L;
  for (int m = 1; m < 200; ++m) {
    term *= -q / ((long double)m * m);
    hm += 1.0L / m;
    j0 += term;
    s += term * hm;
    if (std::fabs((double)term) < 1e-22 && m > 3) break;
  }
  return (double)((2.0L / pil) *
                  ((std::log((long double)x / 2.0L) + eg) * j0 - s));
}

std::pair<Complex, Complex> hankel_series_oracle(Complex z) {
  using CL = std::complex<long double>;
  const long double pil = 3.14159265358979323846264338327950288L;
  const long double eg = 0.577215664901532860606512090082402431L;
  const CL zl(z.real(), z.imag());
  const CL q = zl * zl * 0.25L;

  // J0 and the harmonic-number sum for Y0
  CL t(1.0L), j0(1.0L), sy0(0.0L);
  long double h = 0.0L;
  for (int m = 1; m <= 300; ++m) {
    t *= -q / CL((long double)m * m);
    h += 1.0L / m;
    j0 += t;
    sy0 += t * h;
    if (std::abs(t) < 1e-24L && m > 4) break;
  }
  // J1 and the (H_m + H_{m+1}) sum for Y1
  CL t1(1.0L), s1(1.0L), sy1(1.0L);
  long double ha = 0.0L, hb = 1.0L;
  for (int m = 1; m <= 300; ++m) {
    t1 *= -q / CL((long double)(m) * (m + 1));
    ha += 1.0L / m;
    hb += 1.0L / (m + 1);
    s1 += t1;
    sy1 += t1 * (ha + hb);
    if (std::abs(t1) < 1e-24L && m > 4) break;
  }
  const CL j1 = (zl * 0.5L) * s1;
  const CL lg = std::log(zl * 0.5L) + eg;
  const CL y0 = (2.0L / pil) * (lg * j0 - sy0);
  const CL y1 = (2.0L / pil) * lg * j1 - (2.0L / pil) / zl -
                (zl / (2.0L * pil)) * sy1;
  const CL h0 = j0 + CL(0.0L, 1.0L) * y0;
  const CL h1 = j1 + CL(0.0L, 1.0L) * y1;
  return {Complex((double)h0.real(), (double)h0.imag()),
          Complex((double)h1.real(), (double)h1.imag())};
}

Real log_integral_segment(const Vec2& x, const Vec2& p, const Vec2& q) {
  // param y(t) = p + t d, t in [0, T]; antiderivative of ln sqrt((t-s)^2+rho^2)
  const Vec2 d = (q - p).normalized();
  const Real T = (q - p).norm();
  const Real s = (x - p).dot(d);
  const Real rho = (x - p - s * d).norm();
  auto F = [&](Real t) {
    const Real u = t - s;
    const Real r2 = u * u + rho * rho;
    Real val = 0.5 * u * std::log(r2) - u;
    if (rho > 0.0) val += rho * std::atan2(u, rho);
    return val;
  };
  return F(T) - F(0.0);
}

Complex disc_scattered_field(bool dirichlet, Real k, Real radius, Real phi,
                             const Vec2& x) {
  const Real r = x.norm();
  const Real theta = std::atan2(x.y(), x.x());
  const Complex iu(0.0, 1.0);
  Complex sum(0.0, 0.0);
  const int nmax = static_cast<int>(k * radius + 8.0 * std::cbrt(k * radius) + 40);
  for (int n = -nmax; n <= nmax; ++n) {
    const int an = std::abs(n);
    const Real jn_a = std::cyl_bessel_j(an, k * radius);
    const Real yn_a = std::cyl_neumann(an, k * radius);
    Complex coef;
    if (dirichlet) {
      coef = -Complex(jn_a, 0.0) / Complex(jn_a, yn_a);
    } else {
      // J'_n = (J_{n-1} - J_{n+1})/2 for n >= 1; J'_0 = -J_1
      Real jp, yp;
      if (an == 0) {
        jp = -std::cyl_bessel_j(1, k * radius);
        yp = -std::cyl_neumann(1, k * radius);
      } else {
        jp = 0.5 * (std::cyl_bessel_j(an - 1, k * radius) -
                    std::cyl_bessel_j(an + 1, k * radius));
        yp = 0.5 * (std::cyl_neumann(an - 1, k * radius) -
                    std::cyl_neumann(an + 1, k * radius));
      }
      coef = -Complex(jp, 0.0) / Complex(jp, yp);
    }
    const Real jn_r = std::cyl_bessel_j(an, k * r);
    const Real yn_r = std::cyl_neumann(an, k * r);
    const Complex hn_r(jn_r, yn_r);
    const Complex in = std::pow(iu, Real(an));
    sum += in * coef * hn_r * std::exp(iu * Real(n) * (theta - phi));
  }
  return sum;
}

}  // namespace oracles
