#pragma once

#include <vector>

#include "smoothscat/solver.hpp"

namespace smoothscat {

struct PlaneWaveField {
  Complex value;
  Eigen::Vector2cd gradient;
};

// u_phi^inc(x) = e^{ik(x cos phi + y sin phi)} and its gradient.
PlaneWaveField plane_wave(Real phi, const Wavenumber& k, const Vec2& x);

// Scattered field of the density's representation at exterior targets via the
// plain 16-point panel rule. Targets closer than two panel lengths to the
// boundary are rejected.
VecXc eval_field(const Density& density, const std::vector<Vec2>& targets);

enum class CrossSectionKind { mono_static, bi_static, far_field };

struct CrossSection {
  CrossSectionKind kind = CrossSectionKind::bi_static;
  Real radius = 0.0;  // mono/bi static only
  Vec2 center = Vec2::Zero();
  VecX thetas;   // strictly increasing in [0, 2pi)
  VecXc values;  // complex scattered field samples
};

// Scattered field on the circle of given radius about the region's area
// centroid, at m uniform angles.
CrossSection cross_section_near(const Density& density, Real radius, int m);

// Far-field signature sqrt(1/(8 pi k)) e^{i pi/4} * int e^{-ik rhat.y} sigma ds
// (radial phase/decay factor removed).
CrossSection cross_section_far(const Density& density, int m);

// Backscatter section: the value at angle theta uses incidence phi = theta+pi.
// Runs m independent solves of the base problem.
CrossSection mono_static_section(const ScatteringProblem& base, Real radius,
                                 int m, const SolveOptions& options = {});

// 10 log10 |u|; zero magnitudes map to -inf with a warning on stderr.
VecX to_db(const CrossSection& c);

struct SectionError {
  Real rmse = 0.0;
  Real rel_l2 = 0.0;
};

// Complex-difference RMSE and relative l2 error (b is the reference).
SectionError compare(const CrossSection& a, const CrossSection& b);

struct ConvergenceRow {
  Real h = 0.0;
  int nodes = 0;
  Real rmse = 0.0;
  Real rel_l2 = 0.0;
};

struct ConvergenceRecord {
  std::vector<ConvergenceRow> rows;  // h strictly decreasing
  Real fitted_order = 0.0;
};

// Least-squares slope of log(rel_l2) against log(h); needs >= 3 rows.
Real fit_order(const ConvergenceRecord& record);

struct ConvergenceStudyConfig {
  std::vector<Real> h_values;  // strictly decreasing
  Real radius = 10.0;          // bi-static section radius
  int samples = 360;
  Real reference_depth_scale = 1e-10;
};

// Solve the smoothed problem for every h plus the corner-reference problem,
// compare bi-static sections against the reference, and fit the order.
ConvergenceRecord convergence_study(const Polygon& polygon,
                                    const SmoothingKernel& kernel,
                                    BoundaryCondition bc, const Wavenumber& k,
                                    Real phi, const ConvergenceStudyConfig& cfg,
                                    const SolveOptions& options = {},
                                    std::vector<int>* reference_nodes = nullptr);

}  // namespace smoothscat
