#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "smoothscat/layerpot.hpp"

namespace smoothscat {

struct Density {
  std::shared_ptr<const BoundaryMesh> mesh;
  VecXc sigma;  // point values at the mesh nodes
  Formulation formulation = Formulation::dirichlet_cfie;
  Wavenumber k{Complex(1.0, 0.0)};
  Real alpha = 1.2, beta = 0.8;
};

enum class BoundaryCondition { dirichlet, neumann };

struct PlaneWaveIncidence {
  Real phi = 0.0;  // direction of travel
};
struct PointSourceIncidence {
  Vec2 x0;  // interior source for known-solution verification
};
using Incidence = std::variant<PlaneWaveIncidence, PointSourceIncidence>;

struct CurveGeometry {
  std::shared_ptr<const PiecewiseCurve> curve;  // discs and custom curves
};
struct SmoothedGeometry {
  Polygon polygon;
  Real h = 0.1;
  SmoothingKernel kernel;
};
struct CornerReferenceGeometry {
  Polygon polygon;
  Real depth_scale = 1e-10;
};
using GeometrySpec =
    std::variant<CurveGeometry, SmoothedGeometry, CornerReferenceGeometry>;

struct ScatteringProblem {
  GeometrySpec geometry;
  BoundaryCondition bc = BoundaryCondition::dirichlet;
  Wavenumber k{Complex(1.0, 0.0)};
  Incidence incidence = PlaneWaveIncidence{};
  Real mesh_tol = 1e-10;
  Real alpha = 1.2, beta = 0.8;
};

struct SolveOptions {
  int node_budget = 20000;  // dense memory guard, ~16 n^2 bytes
  int jobs = 0;             // 0: hardware concurrency
};

struct SolveResult {
  Density density;
  Real residual = 0.0;  // ||A sigma_tilde - b|| / ||b|| of the weighted system
  int nodes = 0;
  double mesh_seconds = 0.0;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
};

// Build the mesh for a geometry specification at the problem's wavelength.
std::shared_ptr<const BoundaryMesh> build_mesh(const GeometrySpec& geometry,
                                               const Wavenumber& k,
                                               Real mesh_tol);

// Dyadically graded mesh on the exact polygon, refined toward every corner to
// depth_scale times the edge length; flagged for mandatory L2 weighting.
BoundaryMesh corner_reference_mesh(const Polygon& p, const Wavenumber& k,
                                   Real depth_scale = 1e-10);

// Assemble (L2-weighted), solve by dense LU with partial pivoting, unweight.
SolveResult solve(const ScatteringProblem& problem,
                  const SolveOptions& options = {});

// Max relative error of the solved field against g_k(., x0) on a circle of
// radius R about the interior point (the known-solution protocol). The
// problem must carry point-source incidence.
Real verify_known_solution(const ScatteringProblem& problem, Real radius,
                           int num_test_points,
                           const SolveOptions& options = {});

// Right-hand side (boundary data) of a problem on a given mesh.
VecXc boundary_data(const ScatteringProblem& problem, const BoundaryMesh& mesh);

}  // namespace smoothscat
