#include "smoothscat/panels.hpp"

#include <algorithm>
#include <cmath>

#include "smoothscat/quadrature.hpp"

namespace smoothscat {

namespace {

Real interval_arclength(const PiecewiseCurve& c, const PanelInterval& iv) {
  const GaussRule& rule = gauss_legendre(32);
  const Real half = 0.5 * (iv.u1 - iv.u0), mid = 0.5 * (iv.u0 + iv.u1);
  Real sum = 0.0;
  for (int i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * c.speed_natural(iv.seg, mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace

Real resolution_estimate(const PiecewiseCurve& c, const PanelInterval& iv) {
  const int m = 2 * panel_order;
  const GaussRule& rule = gauss_legendre(m);
  const Real half = 0.5 * (iv.u1 - iv.u0), mid = 0.5 * (iv.u0 + iv.u1);
  VecX fx(m), fy(m), fs(m);
  for (int i = 0; i < m; ++i) {
    const Real u = mid + half * rule.nodes[i];
    const Vec2 pt = c.point_natural(iv.seg, u);
    fx[i] = pt.x();
    fy[i] = pt.y();
    fs[i] = c.speed_natural(iv.seg, u);
  }
  const VecX cx = legendre_coefficients(fx);
  const VecX cy = legendre_coefficients(fy);
  const VecX cs = legendre_coefficients(fs);
  // positions share one variation scale (mean excluded, so translating the
  // geometry cannot mask unresolved content); the arclength density carries
  // its own O(1) scale
  Real pos_tail = 0.0, pos_scale = 0.0, s_tail = 0.0, s_scale = 0.0;
  for (int n = 0; n < m; ++n) {
    const Real p = std::max(std::abs(cx[n]), std::abs(cy[n]));
    if (n >= 1) pos_scale = std::max(pos_scale, p);
    if (n >= panel_order) pos_tail = std::max(pos_tail, p);
    s_scale = std::max(s_scale, std::abs(cs[n]));
    if (n >= panel_order) s_tail = std::max(s_tail, std::abs(cs[n]));
  }
  Real worst = 0.0;
  if (pos_scale > 0.0) worst = std::max(worst, pos_tail / pos_scale);
  if (s_scale > 0.0) worst = std::max(worst, s_tail / s_scale);
  return worst;
}

BoundaryMesh::BoundaryMesh(std::shared_ptr<const PiecewiseCurve> curve,
                           std::vector<Panel> panels, Real tol, Real lambda,
                           bool must_weight)
    : curve_(std::move(curve)),
      panels_(std::move(panels)),
      tol_(tol),
      lambda_(lambda),
      must_weight_(must_weight) {
  const int n = num_nodes();
  nodes_.resize(n, 2);
  normals_.resize(n, 2);
  weights_.resize(n);
  node_u_.resize(n);
  const GaussRule& rule = gauss_legendre(panel_order);
  for (int p = 0; p < num_panels(); ++p) {
    const Panel& pan = panels_[p];
    const Real half = 0.5 * (pan.u1 - pan.u0), mid = 0.5 * (pan.u0 + pan.u1);
    for (int i = 0; i < panel_order; ++i) {
      const int j = p * panel_order + i;
      const Real u = mid + half * rule.nodes[i];
      const CurvePoint cp = curve_->eval_natural(pan.seg, u);
      nodes_.row(j) = cp.position;
      normals_.row(j) = perp_right(cp.tangent);
      weights_[j] =
          rule.weights[i] * half * curve_->speed_natural(pan.seg, u);
      node_u_[j] = u;
    }
  }
}

namespace {

std::vector<PanelInterval> refine_to_resolution(const PiecewiseCurve& c,
                                                std::vector<PanelInterval> seed,
                                                Real tol) {
  Real total_nat = 0.0;
  for (int s = 0; s < c.num_segments(); ++s) total_nat += c.natural_length(s);

  std::vector<PanelInterval> done;
  std::vector<PanelInterval> stack = std::move(seed);
  // preserves curve order: process depth-first, pushing the right child last
  std::reverse(stack.begin(), stack.end());
  while (!stack.empty()) {
    PanelInterval iv = stack.back();
    stack.pop_back();
    if (resolution_estimate(c, iv) < tol) {
      done.push_back(iv);
      continue;
    }
    if (iv.u1 - iv.u0 < 1e-13 * total_nat)
      throw DegenerateGeometryError(
          "discretize: refinement below interval length 1e-13 without "
          "resolution");
    const Real um = 0.5 * (iv.u0 + iv.u1);
    stack.push_back({iv.seg, um, iv.u1});
    stack.push_back({iv.seg, iv.u0, um});
  }
  return done;
}

// 2:1 neighbor balancing (cyclic) and the 2*lambda cap, iterated until both
// hold on the actual arclengths. Returns whether anything was split.
bool cap_and_balance(const PiecewiseCurve& c, std::vector<PanelInterval>& ivs,
                     std::vector<Real>& arc, Real lambda) {
  auto bisect_at = [&](size_t i) {
    const PanelInterval iv = ivs[i];
    const Real um = 0.5 * (iv.u0 + iv.u1);
    const PanelInterval left{iv.seg, iv.u0, um};
    const PanelInterval right{iv.seg, um, iv.u1};
    ivs[i] = left;
    ivs.insert(ivs.begin() + i + 1, right);
    arc[i] = interval_arclength(c, left);
    arc.insert(arc.begin() + i + 1, interval_arclength(c, right));
  };

  const Real slack = 1.0 + 1e-12;
  bool any = false;
  for (int sweep = 0; sweep < 10000; ++sweep) {
    bool changed = false;
    for (size_t i = 0; i < ivs.size(); ++i) {
      if (arc[i] > 2.0 * lambda * slack) {
        bisect_at(i);
        changed = true;
      }
    }
    for (size_t i = 0; i < ivs.size(); ++i) {
      const size_t j = (i + 1) % ivs.size();
      if (arc[i] > 2.0 * arc[j] * slack) {
        bisect_at(i);
        changed = true;
      } else if (arc[j] > 2.0 * arc[i] * slack) {
        bisect_at(j);
        changed = true;
      }
    }
    any = any || changed;
    if (!changed) return any;
  }
  throw DegenerateGeometryError("discretize: balancing did not reach a fixed point");
}

BoundaryMesh build_mesh(std::shared_ptr<const PiecewiseCurve> curve,
                        std::vector<PanelInterval> seed, Real tol, Real lambda,
                        bool must_weight) {
  if (!(tol >= 1e-14 && tol <= 1e-6))
    throw std::invalid_argument("discretize: tol must lie in [1e-14, 1e-6]");
  if (!(lambda > 0.0))
    throw std::invalid_argument("discretize: lambda must be positive");
  const PiecewiseCurve& c = *curve;
  // alternate resolution refinement with balance/cap splits until both are
  // satisfied (a balance split can expose new unresolved children)
  std::vector<PanelInterval> ivs = std::move(seed);
  std::vector<Real> arc;
  for (int round = 0; round < 24; ++round) {
    ivs = refine_to_resolution(c, std::move(ivs), tol);
    arc.assign(ivs.size(), 0.0);
    for (size_t i = 0; i < ivs.size(); ++i)
      arc[i] = interval_arclength(c, ivs[i]);
    if (!cap_and_balance(c, ivs, arc, lambda)) break;
    if (round == 23)
      throw DegenerateGeometryError(
          "discretize: refinement and balancing did not converge together");
  }

  std::vector<Panel> panels(ivs.size());
  for (size_t i = 0; i < ivs.size(); ++i) {
    panels[i].seg = ivs[i].seg;
    panels[i].u0 = ivs[i].u0;
    panels[i].u1 = ivs[i].u1;
    panels[i].arclength = arc[i];
    panels[i].tail = resolution_estimate(c, ivs[i]);
  }
  return BoundaryMesh(std::move(curve), std::move(panels), tol, lambda,
                      must_weight);
}

}  // namespace

BoundaryMesh discretize(std::shared_ptr<const PiecewiseCurve> curve, Real tol,
                        Real lambda) {
  std::vector<PanelInterval> seed;
  for (int s = 0; s < curve->num_segments(); ++s)
    seed.push_back({s, 0.0, curve->natural_length(s)});
  return build_mesh(std::move(curve), std::move(seed), tol, lambda, false);
}

BoundaryMesh discretize(const PiecewiseCurve& curve, Real tol, Real lambda) {
  return discretize(std::make_shared<PiecewiseCurve>(curve), tol, lambda);
}

BoundaryMesh mesh_from_intervals(std::shared_ptr<const PiecewiseCurve> curve,
                                 std::vector<PanelInterval> seed, Real tol,
                                 Real lambda, bool must_weight) {
  return build_mesh(std::move(curve), std::move(seed), tol, lambda, must_weight);
}

Vec2 interior_point(const BoundaryMesh& mesh) {
  const int n = mesh.num_nodes();
  Real area = 0.0;
  Vec2 c = Vec2::Zero();
  for (int j = 0; j < n; ++j) {
    const Vec2 x = mesh.node(j);
    const Vec2 nn = mesh.normal(j);
    const Real w = mesh.weight(j);
    area += 0.5 * w * x.dot(nn);
    c.x() += 0.5 * w * x.x() * x.x() * nn.x();
    c.y() += 0.5 * w * x.y() * x.y() * nn.y();
  }
  c /= area;

  // winding number of the node polyline about c
  Real winding = 0.0;
  for (int j = 0; j < n; ++j) {
    const Vec2 a = mesh.node(j) - c;
    const Vec2 b = mesh.node((j + 1) % n) - c;
    winding += std::atan2(cross2(a, b), a.dot(b));
  }
  if (std::abs(winding - 2.0 * pi) < 1e-3) return c;

  // centroid exterior: horizontal ray cast through the mean y, take the
  // midpoint of the widest inside span
  Real ymid = 0.0;
  for (int j = 0; j < n; ++j) ymid += mesh.node(j).y();
  ymid /= n;
  std::vector<Real> xs;
  for (int j = 0; j < n; ++j) {
    const Vec2 a = mesh.node(j);
    const Vec2 b = mesh.node((j + 1) % n);
    if ((a.y() <= ymid) != (b.y() <= ymid)) {
      const Real t = (ymid - a.y()) / (b.y() - a.y());
      xs.push_back(a.x() + t * (b.x() - a.x()));
    }
  }
  std::sort(xs.begin(), xs.end());
  if (xs.size() < 2)
    throw DegenerateGeometryError("interior_point: ray cast found no interior span");
  Real best = -1.0;
  Vec2 pick = c;
  for (size_t i = 0; i + 1 < xs.size(); i += 2) {
    if (xs[i + 1] - xs[i] > best) {
      best = xs[i + 1] - xs[i];
      pick = Vec2(0.5 * (xs[i] + xs[i + 1]), ymid);
    }
  }
  return pick;
}

}  // namespace smoothscat
