#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "smoothscat/quadrature.hpp"

using namespace smoothscat;

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {4, 16, 24, 32}) {
    const GaussRule& rule = gauss_legendre(n);
    CHECK(std::abs(rule.weights.sum() - 2.0) < 1e-14);
    // int x^p over [-1,1], exact up to degree 2n-1
    for (int p = 1; p < 2 * n; ++p) {
      Real sum = 0.0;
      for (int i = 0; i < n; ++i)
        sum += rule.weights[i] * std::pow(rule.nodes[i], p);
      const Real exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(sum - exact) < 1e-13);
    }
  }
}

TEST_CASE("legendre coefficient analysis recovers polynomial coefficients") {
  // f = 3 P_0 - 2 P_5 + 0.25 P_12
  const int n = 32;
  const GaussRule& rule = gauss_legendre(n);
  VecX samples(n);
  for (int i = 0; i < n; ++i) {
    Real p[32];
    legendre_values(12, rule.nodes[i], p);
    samples[i] = 3.0 * p[0] - 2.0 * p[5] + 0.25 * p[12];
  }
  const VecX coef = legendre_coefficients(samples);
  CHECK(std::abs(coef[0] - 3.0) < 1e-13);
  CHECK(std::abs(coef[5] + 2.0) < 1e-13);
  CHECK(std::abs(coef[12] - 0.25) < 1e-13);
  for (int m : {1, 2, 3, 4, 6, 20, 31}) CHECK(std::abs(coef[m]) < 1e-13);
}

TEST_CASE("adaptive integration handles smooth and kinked integrands") {
  const Real s = adaptive_integrate([](Real x) { return std::sin(x); }, 0.0, pi);
  CHECK(std::abs(s - 2.0) < 1e-12);
  const Real t = adaptive_integrate([](Real x) { return std::abs(x); }, -1.0, 2.0);
  CHECK(std::abs(t - 2.5) < 1e-12);
  const Complex c = adaptive_integrate_c(
      [](Real x) { return std::exp(Complex(0.0, 5.0) * x); }, 0.0, 1.0);
  const Complex exact = (std::exp(Complex(0.0, 5.0)) - 1.0) / Complex(0.0, 5.0);
  CHECK(std::abs(c - exact) < 1e-12);
}
