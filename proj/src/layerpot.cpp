#include "smoothscat/layerpot.hpp"

#include <cmath>
#include <thread>

#include "smoothscat/quadrature.hpp"
#include "smoothscat/specfun.hpp"

namespace smoothscat {

Complex kernel_slp(const Vec2& x, const Vec2& y, const Wavenumber& k) {
  const Real r = (x - y).norm();
  if (r == 0.0) throw SingularityError("kernel_slp: coincident points");
  return 0.25 * iu * hankel1_01(k.k * r).h0;
}

Complex kernel_dlp(const Vec2& x, const Vec2& y, const Vec2& ny,
                   const Wavenumber& k) {
  const Vec2 d = y - x;
  const Real r = d.norm();
  if (r == 0.0) throw SingularityError("kernel_dlp: coincident points");
  return -0.25 * iu * k.k * hankel1_01(k.k * r).h1 * d.dot(ny) / r;
}

Complex kernel_sprime(const Vec2& x, const Vec2& y, const Vec2& nx,
                      const Wavenumber& k) {
  const Vec2 d = x - y;
  const Real r = d.norm();
  if (r == 0.0) throw SingularityError("kernel_sprime: coincident points");
  return -0.25 * iu * k.k * hankel1_01(k.k * r).h1 * d.dot(nx) / r;
}

namespace {

// Laplace double layer d/dn_y [-(1/2pi) ln|x-y|]
Complex laplace_dlp(const Vec2& x, const Vec2& y, const Vec2& ny) {
  const Vec2 d = x - y;
  const Real r2 = d.squaredNorm();
  if (r2 == 0.0) throw SingularityError("laplace_dlp: coincident points");
  return Complex(d.dot(ny) / (2.0 * pi * r2), 0.0);
}

// barycentric weights for the 16 Gauss-Legendre nodes on [-1,1]
const std::array<Real, panel_order>& barycentric_weights() {
  static const std::array<Real, panel_order> w = [] {
    std::array<Real, panel_order> out{};
    const GaussRule& rule = gauss_legendre(panel_order);
    for (int l = 0; l < panel_order; ++l) {
      Real prod = 1.0;
      for (int m = 0; m < panel_order; ++m)
        if (m != l) prod *= (rule.nodes[l] - rule.nodes[m]);
      out[l] = 1.0 / prod;
    }
    return out;
  }();
  return w;
}

void lagrange_basis(Real xi, std::array<Real, panel_order>& L) {
  const GaussRule& rule = gauss_legendre(panel_order);
  const auto& bw = barycentric_weights();
  Real denom = 0.0;
  for (int m = 0; m < panel_order; ++m) {
    const Real d = xi - rule.nodes[m];
    if (d == 0.0) {
      L.fill(0.0);
      L[m] = 1.0;
      return;
    }
    denom += bw[m] / d;
  }
  for (int l = 0; l < panel_order; ++l)
    L[l] = (bw[l] / (xi - rule.nodes[l])) / denom;
}

// graded cells of [a,b] refined toward the anchor at a; stop at cell length
// min_cell
void graded_cells(Real a, Real b, Real min_cell, bool include_innermost,
                  std::vector<std::pair<Real, Real>>& cells) {
  const Real len = b - a;
  if (len <= 0.0) return;
  Real hi = len;
  while (hi * 0.5 > min_cell) {
    cells.emplace_back(a + hi * 0.5, a + hi);
    hi *= 0.5;
  }
  if (include_innermost) cells.emplace_back(a, a + hi);
}

}  // namespace

std::array<Complex, panel_order> panel_product_quadrature(
    const BoundaryMesh& mesh, int target_node, int source_panel,
    const SourceKernel& kernel) {
  const int tp = mesh.panel_of_node(target_node);
  if (!mesh.adjacent_panels(tp, source_panel))
    throw std::invalid_argument(
        "panel_product_quadrature: target and panel are not neighbors");

  const PiecewiseCurve& c = mesh.curve();
  const Panel& pan = mesh.panel(source_panel);
  const int npan = mesh.num_panels();
  const Real len = pan.u1 - pan.u0;

  // anchor: the target's own parameter when on the panel, otherwise the
  // shared endpoint
  Real anchor;
  bool on_panel = false;
  if (tp == source_panel) {
    anchor = mesh.node_param(target_node);
    on_panel = true;
  } else if ((tp + 1) % npan == source_panel) {
    anchor = pan.u0;
  } else {
    anchor = pan.u1;
  }

  const Real floor_cell = len * std::pow(2.0, -52);
  std::vector<std::pair<Real, Real>> cells;
  cells.reserve(100);
  if (on_panel) {
    graded_cells(anchor, pan.u1, floor_cell, false, cells);
    // mirror for [u0, anchor]
    std::vector<std::pair<Real, Real>> left;
    graded_cells(0.0, anchor - pan.u0, floor_cell, false, left);
    for (auto& [a, b] : left) cells.emplace_back(anchor - b, anchor - a);
  } else {
    // singularity lies just outside the panel; stop grading at the gap scale
    const Vec2 xt = mesh.node(target_node);
    const Vec2 pa = c.point_natural(pan.seg, anchor);
    const Real gap = (xt - pa).norm() / std::max(1.0, c.speed_natural(pan.seg, anchor));
    const Real min_cell = std::max(floor_cell, 0.25 * gap);
    if (anchor == pan.u0) {
      graded_cells(pan.u0, pan.u1, min_cell, true, cells);
    } else {
      std::vector<std::pair<Real, Real>> left;
      graded_cells(0.0, len, min_cell, true, left);
      for (auto& [a, b] : left) cells.emplace_back(pan.u1 - b, pan.u1 - a);
    }
  }

  const GaussRule& rule = gauss_legendre(panel_order);
  std::array<Complex, panel_order> w;
  w.fill(Complex(0.0, 0.0));
  std::array<Real, panel_order> L;
  for (const auto& [a, b] : cells) {
    const Real half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int q = 0; q < panel_order; ++q) {
      const Real u = mid + half * rule.nodes[q];
      const CurvePoint cp = c.eval_natural(pan.seg, u);
      const Vec2 ny = perp_right(cp.tangent);
      const Real sp = c.speed_natural(pan.seg, u);
      const Complex kv =
          kernel(cp.position, ny) * (sp * half * rule.weights[q]);
      const Real xi = (2.0 * u - pan.u0 - pan.u1) / len;
      lagrange_basis(xi, L);
      for (int l = 0; l < panel_order; ++l) w[l] += kv * L[l];
    }
  }
  return w;
}

namespace {

struct RowKernel {
  Formulation f;
  Wavenumber k;
  Complex eta;  // i (k alpha + beta) for the CFIE

  Complex operator()(const Vec2& x, const Vec2& nx, const Vec2& y,
                     const Vec2& ny) const {
    switch (f) {
      case Formulation::dirichlet_cfie: {
        const Vec2 d = y - x;
        const Real r = d.norm();
        const Hankel01 h = hankel1_01(k.k * r);
        const Complex slp = 0.25 * iu * h.h0;
        const Complex dlp = -0.25 * iu * k.k * h.h1 * d.dot(ny) / r;
        return slp + eta * dlp;
      }
      case Formulation::neumann_single_layer:
        return kernel_sprime(x, y, nx, k);
      case Formulation::laplace_dlp:
        return laplace_dlp(x, y, ny);
    }
    return Complex(0.0, 0.0);
  }
};

}  // namespace

NystromMatrix assemble(const BoundaryMesh& mesh, Formulation f,
                       const Wavenumber& k, Real alpha, Real beta, int jobs) {
  if (f != Formulation::laplace_dlp) {
    const Real lam = k.wavelength();
    if (std::abs(mesh.lambda() - lam) > 1e-9 * lam)
      throw std::invalid_argument(
          "assemble: mesh was built for a different wavelength");
  }

  const int n = mesh.num_nodes();
  NystromMatrix out;
  out.formulation = f;
  out.weighting = Weighting::plain;
  const Complex eta = iu * (k.k * alpha + beta);
  switch (f) {
    case Formulation::dirichlet_cfie:
      out.identity_coef = 0.5 * eta;
      break;
    case Formulation::neumann_single_layer:
      out.identity_coef = Complex(-0.5, 0.0);
      break;
    case Formulation::laplace_dlp:
      out.identity_coef = Complex(0.0, 0.0);
      break;
  }
  out.A.resize(n, n);

  const RowKernel rk{f, k, eta};
  const int npan = mesh.num_panels();

  auto fill_rows = [&](int j0, int j1) {
    for (int j = j0; j < j1; ++j) {
      const Vec2 xj = mesh.node(j);
      const Vec2 nxj = mesh.normal(j);
      const int tp = mesh.panel_of_node(j);
      for (int q = 0; q < npan; ++q) {
        if (mesh.adjacent_panels(tp, q)) {
          const SourceKernel sk = [&](const Vec2& y, const Vec2& ny) {
            // the deepest graded cells can round onto the target exactly;
            // that point carries zero measure
            if ((y - xj).squaredNorm() == 0.0) return Complex(0.0, 0.0);
            return rk(xj, nxj, y, ny);
          };
          const auto w = panel_product_quadrature(mesh, j, q, sk);
          for (int l = 0; l < panel_order; ++l)
            out.A(j, q * panel_order + l) = w[l];
        } else {
          for (int l = 0; l < panel_order; ++l) {
            const int idx = q * panel_order + l;
            out.A(j, idx) = rk(xj, nxj, mesh.node(idx), mesh.normal(idx)) *
                            mesh.weight(idx);
          }
        }
      }
      out.A(j, j) += out.identity_coef;
    }
  };

  int nthreads = jobs > 0 ? jobs
                          : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, n));
  if (nthreads == 1) {
    fill_rows(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t) {
      const int j0 = t * chunk, j1 = std::min(n, j0 + chunk);
      if (j0 < j1) pool.emplace_back(fill_rows, j0, j1);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

void l2_weight(NystromMatrix& m, VecXc& rhs, const VecX& h) {
  if (m.weighting == Weighting::l2_weighted)
    throw std::invalid_argument("l2_weight: matrix is already weighted");
  const int n = static_cast<int>(h.size());
  if (m.A.rows() != n || rhs.size() != n)
    throw std::invalid_argument("l2_weight: dimension mismatch");
  VecX sq(n);
  for (int i = 0; i < n; ++i) {
    if (!(h[i] > 0.0))
      throw std::invalid_argument("l2_weight: nonpositive quadrature weight");
    sq[i] = std::sqrt(h[i]);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.A(i, j) *= sq[i] / sq[j];
  for (int i = 0; i < n; ++i) rhs[i] *= sq[i];
  m.weighting = Weighting::l2_weighted;
}

VecXc l2_unweight(const VecXc& sigma_tilde, const VecX& h) {
  if (sigma_tilde.size() != h.size())
    throw std::invalid_argument("l2_unweight: dimension mismatch");
  VecXc out(sigma_tilde.size());
  for (int i = 0; i < sigma_tilde.size(); ++i)
    out[i] = sigma_tilde[i] / std::sqrt(h[i]);
  return out;
}

Real estimate_condition(const MatXc& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::PartialPivLU<MatXc> lu(A);
  // deterministic pseudo-random start vector
  VecXc v(n);
  unsigned s = 123456789u;
  for (int i = 0; i < n; ++i) {
    s = s * 1664525u + 1013904223u;
    v[i] = Complex((s >> 8) / Real(1 << 24) - 0.5, ((s >> 4) & 0xffffff) / Real(1 << 24) - 0.5);
  }
  v.normalize();
  VecXc w = v;
  Real smax = 0.0;
  for (int it = 0; it < 200; ++it) {
    w = A.adjoint() * (A * w);
    const Real next = std::sqrt(w.norm());
    w.normalize();
    if (it > 8 && std::abs(next - smax) < 1e-12 * next) {
      smax = next;
      break;
    }
    smax = next;
  }
  VecXc z = v;
  Real inv = 0.0;
  for (int it = 0; it < 200; ++it) {
    z = lu.solve(lu.adjoint().solve(z));
    const Real next = std::sqrt(z.norm());
    z.normalize();
    if (it > 8 && std::abs(next - inv) < 1e-12 * next) {
      inv = next;
      break;
    }
    inv = next;
  }
  return smax * inv;
}

}  // namespace smoothscat
