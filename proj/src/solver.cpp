#include "smoothscat/solver.hpp"

#include <chrono>
#include <cmath>

#include "smoothscat/fields.hpp"

namespace smoothscat {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::shared_ptr<const BoundaryMesh> build_mesh(const GeometrySpec& geometry,
                                               const Wavenumber& k,
                                               Real mesh_tol) {
  if (std::holds_alternative<SmoothedGeometry>(geometry)) {
    const auto& g = std::get<SmoothedGeometry>(geometry);
    auto curve = std::make_shared<PiecewiseCurve>(
        round_polygon(g.polygon, g.h, g.kernel));
    return std::make_shared<BoundaryMesh>(
        discretize(curve, mesh_tol, k.wavelength()));
  }
  if (std::holds_alternative<CornerReferenceGeometry>(geometry)) {
    const auto& g = std::get<CornerReferenceGeometry>(geometry);
    return std::make_shared<BoundaryMesh>(
        corner_reference_mesh(g.polygon, k, g.depth_scale));
  }
  const auto& g = std::get<CurveGeometry>(geometry);
  return std::make_shared<BoundaryMesh>(
      discretize(g.curve, mesh_tol, k.wavelength()));
}

BoundaryMesh corner_reference_mesh(const Polygon& p, const Wavenumber& k,
                                   Real depth_scale) {
  if (!(depth_scale > 0.0 && depth_scale < 0.5))
    throw std::invalid_argument("corner_reference_mesh: bad depth scale");
  const int n = p.size();
  std::vector<Segment> segs;
  segs.reserve(n);
  for (int i = 0; i < n; ++i)
    segs.push_back(LineSegment{p.vertex(i), p.vertex(i + 1)});
  auto curve = std::make_shared<PiecewiseCurve>(std::move(segs));

  const int depth = static_cast<int>(std::ceil(std::log2(1.0 / depth_scale)));
  std::vector<PanelInterval> seed;
  for (int s = 0; s < n; ++s) {
    const Real L = curve->natural_length(s);
    // dyadic grading toward both endpoints, innermost cell ~ depth_scale * L
    Real a = 0.0;
    for (int j = depth; j >= 1; --j) {
      const Real b = L * std::pow(0.5, j);
      seed.push_back({s, a, b});
      a = b;
    }
    Real b = L;
    std::vector<PanelInterval> right;
    for (int j = depth; j >= 1; --j) {
      const Real aa = L - L * std::pow(0.5, j);
      right.push_back({s, aa, b});
      b = aa;
    }
    for (auto it = right.rbegin(); it != right.rend(); ++it) seed.push_back(*it);
  }
  return mesh_from_intervals(std::move(curve), std::move(seed), 1e-10,
                             k.wavelength(), /*must_weight=*/true);
}

VecXc boundary_data(const ScatteringProblem& problem, const BoundaryMesh& mesh) {
  const int n = mesh.num_nodes();
  VecXc f(n);
  const bool dirichlet = problem.bc == BoundaryCondition::dirichlet;
  if (std::holds_alternative<PlaneWaveIncidence>(problem.incidence)) {
    const Real phi = std::get<PlaneWaveIncidence>(problem.incidence).phi;
    for (int j = 0; j < n; ++j) {
      const PlaneWaveField w = plane_wave(phi, problem.k, mesh.node(j));
      if (dirichlet) {
        f[j] = -w.value;
      } else {
        const Vec2 nx = mesh.normal(j);
        f[j] = -(w.gradient[0] * nx.x() + w.gradient[1] * nx.y());
      }
    }
  } else {
    const Vec2 x0 = std::get<PointSourceIncidence>(problem.incidence).x0;
    for (int j = 0; j < n; ++j) {
      if (dirichlet)
        f[j] = kernel_slp(mesh.node(j), x0, problem.k);
      else
        f[j] = kernel_sprime(mesh.node(j), x0, mesh.normal(j), problem.k);
    }
  }
  return f;
}

SolveResult solve(const ScatteringProblem& problem, const SolveOptions& options) {
  SolveResult out;
  auto t0 = Clock::now();
  std::shared_ptr<const BoundaryMesh> mesh =
      build_mesh(problem.geometry, problem.k, problem.mesh_tol);
  out.mesh_seconds = seconds_since(t0);
  out.nodes = mesh->num_nodes();
  if (out.nodes > options.node_budget)
    throw std::invalid_argument(
        "solve: mesh has " + std::to_string(out.nodes) +
        " nodes, above the node budget " + std::to_string(options.node_budget));

  const Formulation f = problem.bc == BoundaryCondition::dirichlet
                            ? Formulation::dirichlet_cfie
                            : Formulation::neumann_single_layer;

  t0 = Clock::now();
  NystromMatrix m = assemble(*mesh, f, problem.k, problem.alpha, problem.beta,
                             options.jobs);
  out.assemble_seconds = seconds_since(t0);

  VecXc rhs = boundary_data(problem, *mesh);
  l2_weight(m, rhs, mesh->weights());

  t0 = Clock::now();
  Eigen::PartialPivLU<MatXc> lu(m.A);
  const VecXc sigma_tilde = lu.solve(rhs);
  out.solve_seconds = seconds_since(t0);

  out.residual = (m.A * sigma_tilde - rhs).norm() / rhs.norm();
  if (!(out.residual < 1e-9) || !sigma_tilde.allFinite())
    throw NearResonanceError(
        "solve: system is singular to working precision at k = (" +
        std::to_string(problem.k.k.real()) + ", " +
        std::to_string(problem.k.k.imag()) + "); weighted residual " +
        std::to_string(out.residual));

  out.density.mesh = mesh;
  out.density.sigma = l2_unweight(sigma_tilde, mesh->weights());
  out.density.formulation = f;
  out.density.k = problem.k;
  out.density.alpha = problem.alpha;
  out.density.beta = problem.beta;
  return out;
}

Real verify_known_solution(const ScatteringProblem& problem, Real radius,
                           int num_test_points, const SolveOptions& options) {
  if (!std::holds_alternative<PointSourceIncidence>(problem.incidence))
    throw std::invalid_argument(
        "verify_known_solution: problem must use point-source incidence");
  const Vec2 x0 = std::get<PointSourceIncidence>(problem.incidence).x0;
  const SolveResult res = solve(problem, options);

  const Vec2 c = interior_point(*res.density.mesh);
  std::vector<Vec2> targets(num_test_points);
  for (int i = 0; i < num_test_points; ++i) {
    const Real th = 2.0 * pi * i / num_test_points;
    targets[i] = c + radius * Vec2(std::cos(th), std::sin(th));
  }
  const VecXc u = eval_field(res.density, targets);
  Real max_err = 0.0, max_ref = 0.0;
  for (int i = 0; i < num_test_points; ++i) {
    const Complex exact = kernel_slp(targets[i], x0, problem.k);
    max_err = std::max(max_err, std::abs(u[i] - exact));
    max_ref = std::max(max_ref, std::abs(exact));
  }
  return max_err / max_ref;
}

}  // namespace smoothscat
