#include "smoothscat/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace smoothscat {

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration from the Chebyshev-based initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(pi * (i + 0.75) / (n + 0.5));
    Real pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      Real dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    Real w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

void legendre_values(int nmax, Real x, Real* out) {
  out[0] = 1.0;
  if (nmax == 0) return;
  out[1] = x;
  for (int j = 2; j <= nmax; ++j)
    out[j] = ((2 * j - 1) * x * out[j - 1] - (j - 1) * out[j - 2]) / j;
}

VecX legendre_coefficients(const VecX& samples) {
  const int n = static_cast<int>(samples.size());
  const GaussRule& rule = gauss_legendre(n);
  VecX coef = VecX::Zero(n);
  std::vector<Real> p(n);
  for (int i = 0; i < n; ++i) {
    legendre_values(n - 1, rule.nodes[i], p.data());
    Real wf = rule.weights[i] * samples[i];
    for (int m = 0; m < n; ++m) coef[m] += wf * p[m];
  }
  for (int m = 0; m < n; ++m) coef[m] *= (2 * m + 1) / 2.0;
  return coef;
}

namespace {

template <typename Scalar>
Scalar fixed_gauss(const std::function<Scalar(Real)>& f, Real a, Real b,
                   const GaussRule& rule) {
  const Real half = 0.5 * (b - a), mid = 0.5 * (a + b);
  Scalar sum{};
  for (int i = 0; i < rule.nodes.size(); ++i)
    sum += Scalar(rule.weights[i]) * f(mid + half * rule.nodes[i]);
  return Scalar(half) * sum;
}

template <typename Scalar>
Scalar adaptive_impl(const std::function<Scalar(Real)>& f, Real a, Real b,
                     Real tol, int depth, int max_depth, Scalar whole) {
  const GaussRule& rule = gauss_legendre(16);
  const Real m = 0.5 * (a + b);
  Scalar left = fixed_gauss(f, a, m, rule);
  Scalar right = fixed_gauss(f, m, b, rule);
  if (std::abs(left + right - whole) < tol || depth >= max_depth)
    return left + right;
  return adaptive_impl(f, a, m, tol / 2, depth + 1, max_depth, left) +
         adaptive_impl(f, m, b, tol / 2, depth + 1, max_depth, right);
}

}  // namespace

Real adaptive_integrate(const std::function<Real(Real)>& f, Real a, Real b,
                        Real tol, int max_depth) {
  const GaussRule& rule = gauss_legendre(16);
  return adaptive_impl<Real>(f, a, b, tol, 0, max_depth,
                             fixed_gauss(f, a, b, rule));
}

Complex adaptive_integrate_c(const std::function<Complex(Real)>& f, Real a,
                             Real b, Real tol, int max_depth) {
  const GaussRule& rule = gauss_legendre(16);
  return adaptive_impl<Complex>(f, a, b, tol, 0, max_depth,
                                fixed_gauss(f, a, b, rule));
}

}  // namespace smoothscat
