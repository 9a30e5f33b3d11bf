#pragma once

#include <functional>
#include <vector>

#include "smoothscat/types.hpp"

namespace smoothscat {

struct GaussRule {
  VecX nodes;    // on [-1,1]
  VecX weights;  // sum = 2
};

// Gauss-Legendre rule of order n, computed once and cached.
const GaussRule& gauss_legendre(int n);

// P_0(x) .. P_{nmax}(x)
void legendre_values(int nmax, Real x, Real* out);

// Coefficients of the degree-(n-1) Legendre expansion from samples at the
// n-point Gauss-Legendre nodes. Exact for polynomials of degree <= n-1.
VecX legendre_coefficients(const VecX& samples_at_gauss_nodes);

// Adaptive Gauss-Legendre integration to absolute tolerance tol.
Real adaptive_integrate(const std::function<Real(Real)>& f, Real a, Real b,
                        Real tol = 1e-13, int max_depth = 48);

Complex adaptive_integrate_c(const std::function<Complex(Real)>& f, Real a,
                             Real b, Real tol = 1e-13, int max_depth = 48);

}  // namespace smoothscat
