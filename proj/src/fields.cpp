#include "smoothscat/fields.hpp"

#include <cmath>
#include <future>
#include <iostream>

#include "smoothscat/specfun.hpp"

namespace smoothscat {

PlaneWaveField plane_wave(Real phi, const Wavenumber& k, const Vec2& x) {
  const Vec2 dir(std::cos(phi), std::sin(phi));
  PlaneWaveField out;
  out.value = std::exp(iu * k.k * dir.dot(x));
  out.gradient[0] = iu * k.k * dir.x() * out.value;
  out.gradient[1] = iu * k.k * dir.y() * out.value;
  return out;
}

namespace {

Complex representation_kernel(const Density& d, const Vec2& x, const Vec2& y,
                              const Vec2& ny) {
  switch (d.formulation) {
    case Formulation::dirichlet_cfie: {
      const Complex eta = iu * (d.k.k * d.alpha + d.beta);
      const Vec2 diff = y - x;
      const Real r = diff.norm();
      const Hankel01 h = hankel1_01(d.k.k * r);
      return 0.25 * iu * h.h0 -
             eta * 0.25 * iu * d.k.k * h.h1 * diff.dot(ny) / r;
    }
    case Formulation::neumann_single_layer:
      return kernel_slp(x, y, d.k);
    case Formulation::laplace_dlp: {
      const Vec2 diff = x - y;
      return Complex(diff.dot(ny) / (2.0 * pi * diff.squaredNorm()), 0.0);
    }
  }
  return Complex(0.0, 0.0);
}

void check_target_distance(const Density& d, const Vec2& target) {
  const BoundaryMesh& mesh = *d.mesh;
  Real best = std::numeric_limits<Real>::max();
  int best_node = 0;
  for (int j = 0; j < mesh.num_nodes(); ++j) {
    const Real dist = (target - mesh.node(j)).norm();
    if (dist < best) {
      best = dist;
      best_node = j;
    }
  }
  const Real plen = mesh.panel(mesh.panel_of_node(best_node)).arclength;
  if (!(best > 2.0 * plen))
    throw NearBoundaryError("eval_field: target (" +
                            std::to_string(target.x()) + ", " +
                            std::to_string(target.y()) +
                            ") is within two panel lengths of the boundary");
}

}  // namespace

VecXc eval_field(const Density& density, const std::vector<Vec2>& targets) {
  const BoundaryMesh& mesh = *density.mesh;
  VecXc out(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) {
    check_target_distance(density, targets[t]);
    Complex sum(0.0, 0.0);
    for (int j = 0; j < mesh.num_nodes(); ++j) {
      sum += representation_kernel(density, targets[t], mesh.node(j),
                                   mesh.normal(j)) *
             density.sigma[j] * mesh.weight(j);
    }
    out[t] = sum;
  }
  return out;
}

namespace {

VecX uniform_angles(int m) {
  VecX th(m);
  for (int i = 0; i < m; ++i) th[i] = 2.0 * pi * i / m;
  return th;
}

}  // namespace

CrossSection cross_section_near(const Density& density, Real radius, int m) {
  if (m < 8)
    throw std::invalid_argument("cross_section_near: need at least 8 angles");
  const BoundaryMesh& mesh = *density.mesh;
  const Vec2 c = interior_point(mesh);
  Real rmax = 0.0;
  for (int j = 0; j < mesh.num_nodes(); ++j)
    rmax = std::max(rmax, (mesh.node(j) - c).norm());
  if (!(radius > rmax))
    throw std::invalid_argument(
        "cross_section_near: evaluation circle of radius " +
        std::to_string(radius) + " intersects the boundary (max extent " +
        std::to_string(rmax) + ")");

  CrossSection sec;
  sec.kind = CrossSectionKind::bi_static;
  sec.radius = radius;
  sec.center = c;
  sec.thetas = uniform_angles(m);
  std::vector<Vec2> targets(m);
  for (int i = 0; i < m; ++i)
    targets[i] =
        c + radius * Vec2(std::cos(sec.thetas[i]), std::sin(sec.thetas[i]));
  sec.values = eval_field(density, targets);
  return sec;
}

CrossSection cross_section_far(const Density& density, int m) {
  if (m < 8)
    throw std::invalid_argument("cross_section_far: need at least 8 angles");
  const BoundaryMesh& mesh = *density.mesh;
  const Complex k = density.k.k;
  const Complex eta = iu * (k * density.alpha + density.beta);
  CrossSection sec;
  sec.kind = CrossSectionKind::far_field;
  sec.center = interior_point(mesh);
  sec.thetas = uniform_angles(m);
  sec.values.resize(m);
  const Complex pref =
      std::sqrt(Complex(1.0, 0.0) / (8.0 * pi * k)) * std::exp(iu * pi / 4.0);
  for (int i = 0; i < m; ++i) {
    const Vec2 rhat(std::cos(sec.thetas[i]), std::sin(sec.thetas[i]));
    Complex sum(0.0, 0.0);
    for (int j = 0; j < mesh.num_nodes(); ++j) {
      const Vec2 y = mesh.node(j);
      Complex amp = std::exp(-iu * k * rhat.dot(y));
      if (density.formulation == Formulation::dirichlet_cfie)
        amp *= Complex(1.0, 0.0) + eta * (-iu * k * rhat.dot(mesh.normal(j)));
      sum += amp * density.sigma[j] * mesh.weight(j);
    }
    sec.values[i] = pref * sum;
  }
  return sec;
}

CrossSection mono_static_section(const ScatteringProblem& base, Real radius,
                                 int m, const SolveOptions& options) {
  if (m < 8)
    throw std::invalid_argument("mono_static_section: need at least 8 angles");
  CrossSection sec;
  sec.kind = CrossSectionKind::mono_static;
  sec.radius = radius;
  sec.thetas = uniform_angles(m);
  sec.values.resize(m);
  for (int i = 0; i < m; ++i) {
    ScatteringProblem p = base;
    p.incidence = PlaneWaveIncidence{sec.thetas[i] + pi};
    const SolveResult res = solve(p, options);
    const Vec2 c = interior_point(*res.density.mesh);
    sec.center = c;
    const Vec2 target =
        c + radius * Vec2(std::cos(sec.thetas[i]), std::sin(sec.thetas[i]));
    sec.values[i] = eval_field(res.density, {target})[0];
  }
  return sec;
}

VecX to_db(const CrossSection& c) {
  VecX out(c.values.size());
  bool warned = false;
  for (int i = 0; i < c.values.size(); ++i) {
    const Real mag = std::abs(c.values[i]);
    if (mag == 0.0) {
      if (!warned) {
        std::cerr << "to_db: zero magnitude sample mapped to -inf\n";
        warned = true;
      }
      out[i] = -std::numeric_limits<Real>::infinity();
    } else {
      out[i] = 10.0 * std::log10(mag);
    }
  }
  return out;
}

SectionError compare(const CrossSection& a, const CrossSection& b) {
  if (a.kind != b.kind)
    throw std::invalid_argument("compare: cross-section kinds differ");
  if (a.thetas.size() != b.thetas.size() ||
      (a.thetas - b.thetas).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("compare: angle grids differ");
  if (a.kind != CrossSectionKind::far_field &&
      std::abs(a.radius - b.radius) > 1e-12 * std::max(a.radius, b.radius))
    throw std::invalid_argument("compare: radii differ");
  SectionError err;
  const VecXc diff = a.values - b.values;
  err.rmse = std::sqrt(diff.squaredNorm() / diff.size());
  err.rel_l2 = diff.norm() / b.values.norm();
  return err;
}

Real fit_order(const ConvergenceRecord& record) {
  const int n = static_cast<int>(record.rows.size());
  if (n < 3)
    throw std::invalid_argument("fit_order: need at least 3 data points");
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const ConvergenceRow& row : record.rows) {
    if (!(row.h > 0.0) || !(row.rel_l2 > 0.0))
      throw std::invalid_argument("fit_order: rows need positive h and error");
    const Real x = std::log(row.h), y = std::log(row.rel_l2);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceRecord convergence_study(const Polygon& polygon,
                                    const SmoothingKernel& kernel,
                                    BoundaryCondition bc, const Wavenumber& k,
                                    Real phi, const ConvergenceStudyConfig& cfg,
                                    const SolveOptions& options,
                                    std::vector<int>* reference_nodes) {
  for (size_t i = 0; i + 1 < cfg.h_values.size(); ++i)
    if (!(cfg.h_values[i] > cfg.h_values[i + 1]))
      throw std::invalid_argument(
          "convergence_study: h list must be strictly decreasing");

  ScatteringProblem ref;
  ref.geometry = CornerReferenceGeometry{polygon, cfg.reference_depth_scale};
  ref.bc = bc;
  ref.k = k;
  ref.incidence = PlaneWaveIncidence{phi};
  const SolveResult ref_res = solve(ref, options);
  const CrossSection ref_sec =
      cross_section_near(ref_res.density, cfg.radius, cfg.samples);
  if (reference_nodes) reference_nodes->push_back(ref_res.nodes);

  ConvergenceRecord rec;
  for (Real h : cfg.h_values) {
    ScatteringProblem p;
    p.geometry = SmoothedGeometry{polygon, h, kernel};
    p.bc = bc;
    p.k = k;
    p.incidence = PlaneWaveIncidence{phi};
    const SolveResult res = solve(p, options);
    const CrossSection sec =
        cross_section_near(res.density, cfg.radius, cfg.samples);
    const SectionError err = compare(sec, ref_sec);
    rec.rows.push_back({h, res.nodes, err.rmse, err.rel_l2});
  }
  rec.fitted_order = fit_order(rec);
  return rec;
}

}  // namespace smoothscat
