#pragma once

#include <array>
#include <functional>

#include "smoothscat/panels.hpp"
#include "smoothscat/types.hpp"

namespace smoothscat {

struct Wavenumber {
  Complex k;

  explicit Wavenumber(Complex value) : k(value) {
    if (!(k.real() > 0.0) || k.imag() < 0.0)
      throw std::invalid_argument("Wavenumber: need Re k > 0 and Im k >= 0");
  }
  Real wavelength() const { return 2.0 * pi / k.real(); }
};

enum class Formulation { dirichlet_cfie, neumann_single_layer, laplace_dlp };
enum class Weighting { plain, l2_weighted };

// g_k(|x-y|) = (i/4) H_0^{(1)}(k |x-y|)
Complex kernel_slp(const Vec2& x, const Vec2& y, const Wavenumber& k);
// d/dn_y g_k(x,y)
Complex kernel_dlp(const Vec2& x, const Vec2& y, const Vec2& ny,
                   const Wavenumber& k);
// d/dn_x g_k(x,y)
Complex kernel_sprime(const Vec2& x, const Vec2& y, const Vec2& nx,
                      const Wavenumber& k);

struct NystromMatrix {
  MatXc A;
  Formulation formulation = Formulation::dirichlet_cfie;
  Weighting weighting = Weighting::plain;
  Complex identity_coef{0.0, 0.0};  // included on the diagonal of A
};

// source-side kernel for a fixed target: (y, n_y) -> value
using SourceKernel = std::function<Complex(const Vec2&, const Vec2&)>;

// Product-integration weights w such that sum_l w_l sigma(node_l)
// approximates the panel integral of kernel * sigma against arclength, with
// dyadic subdivision anchored at the target's parameter. Target must lie on
// the source panel or one of its two neighbors.
std::array<Complex, panel_order> panel_product_quadrature(
    const BoundaryMesh& mesh, int target_node, int source_panel,
    const SourceKernel& kernel);

// Nystrom matrix: identity term with the formulation's sign, product
// quadrature on self/neighbor panels, plain 16-point rule elsewhere.
NystromMatrix assemble(const BoundaryMesh& mesh, Formulation f,
                       const Wavenumber& k, Real alpha = 1.2, Real beta = 0.8,
                       int jobs = 0);

// Similarity transform A -> D^{1/2} A D^{-1/2}, rhs -> D^{1/2} rhs with
// D = diag(h); the solution of the transformed system is sigma_tilde.
void l2_weight(NystromMatrix& m, VecXc& rhs, const VecX& h);
VecXc l2_unweight(const VecXc& sigma_tilde, const VecX& h);

// Condition number estimate via power iteration on A^H A and its inverse.
Real estimate_condition(const MatXc& A);

}  // namespace smoothscat
