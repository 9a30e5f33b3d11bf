#include "smoothscat/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "smoothscat/quadrature.hpp"
#include "smoothscat/specfun.hpp"

namespace smoothscat {

namespace {

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                        const Vec2& d) {
  auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    return cross2(q - p, r - p);
  };
  const Real o1 = orient(a, b, c), o2 = orient(a, b, d);
  const Real o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0));
}

}  // namespace

Polygon::Polygon(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() >= 2 &&
      (verts_.front() - verts_.back()).norm() < 1e-14)
    verts_.pop_back();  // accept an explicitly repeated first vertex
  const int n = static_cast<int>(verts_.size());
  if (n < 3) throw std::invalid_argument("Polygon: need at least 3 vertices");
  for (int i = 0; i < n; ++i) {
    if ((verts_[i] - verts_[(i + 1) % n]).norm() == 0.0)
      throw std::invalid_argument("Polygon: consecutive vertices coincide");
  }
  Real area2 = 0.0;
  for (int i = 0; i < n; ++i)
    area2 += cross2(verts_[i], verts_[(i + 1) % n]);
  if (area2 == 0.0)
    throw std::invalid_argument("Polygon: degenerate (zero area)");
  if (area2 < 0.0) std::reverse(verts_.begin(), verts_.end());
  // pairwise edge intersection, skipping adjacent edges
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(verts_[i], verts_[(i + 1) % n], verts_[j],
                             verts_[(j + 1) % n]))
        throw std::invalid_argument("Polygon: edges self-intersect");
    }
  }
}

const Vec2& Polygon::vertex(int i) const {
  const int n = size();
  return verts_[((i % n) + n) % n];
}

Real Polygon::signed_area() const {
  Real area2 = 0.0;
  for (int i = 0; i < size(); ++i)
    area2 += cross2(vertex(i), vertex(i + 1));
  return 0.5 * area2;
}

Real Polygon::min_edge_length() const {
  Real m = std::numeric_limits<Real>::max();
  for (int i = 0; i < size(); ++i)
    m = std::min(m, (vertex(i + 1) - vertex(i)).norm());
  return m;
}

Vec2 Polygon::area_centroid() const {
  Real a6 = 0.0;
  Vec2 c = Vec2::Zero();
  for (int i = 0; i < size(); ++i) {
    const Real w = cross2(vertex(i), vertex(i + 1));
    a6 += w;
    c += w * (vertex(i) + vertex(i + 1));
  }
  return c / (3.0 * a6);
}

SmoothingKernel SmoothingKernel::polynomial(int k) {
  if (k < 1)
    throw std::invalid_argument("SmoothingKernel: polynomial order must be >= 1");
  SmoothingKernel s;
  s.kind = KernelKind::polynomial;
  s.order = k;
  return s;
}

SmoothingKernel SmoothingKernel::gaussian(Real eps) {
  if (!(eps > 0.0 && eps <= 1e-6))
    throw std::invalid_argument("SmoothingKernel: gaussian eps must lie in (0, 1e-6]");
  SmoothingKernel s;
  s.kind = KernelKind::gaussian;
  s.eps = eps;
  return s;
}

namespace {

// c_k = Gamma(k+3/2) / (sqrt(pi) Gamma(k+1))
Real poly_norm_const(int k) {
  return std::exp(log_gamma(k + 1.5) - log_gamma(k + 1.0)) / std::sqrt(pi);
}

Real int_pow(Real b, int k) {
  Real r = 1.0;
  for (int i = 0; i < k; ++i) r *= b;
  return r;
}

// normalization constants are reused heavily during quadrature
Real poly_norm_cached(int k) {
  static std::array<Real, 65> cache = [] {
    std::array<Real, 65> c{};
    for (int j = 1; j < 65; ++j) c[j] = poly_norm_const(j);
    return c;
  }();
  if (k >= 1 && k < 65) return cache[k];
  return poly_norm_const(k);
}

// unit polynomial kernel psi_k on [-1,1]
Real psi_unit(int k, Real u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return poly_norm_cached(k) * int_pow((1.0 - u) * (1.0 + u), k);
}

// CDF of psi_k over [-1, u]; exact Gauss quadrature of the degree-2k integrand
Real psi_cdf(int k, Real u) {
  if (u <= -1.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const int npts = std::max(17, k + 2);
  const GaussRule& rule = gauss_legendre(npts);
  const Real ck = poly_norm_cached(k);
  const Real a = -1.0;
  Real sum = 0.0;
  for (int i = 0; i < npts; ++i) {
    const Real t = 0.5 * (a + u) + 0.5 * (u - a) * rule.nodes[i];
    sum += rule.weights[i] * ((std::abs(t) >= 1.0) ? 0.0 : ck * int_pow((1.0 - t) * (1.0 + t), k));
  }
  return 0.5 * (u - a) * sum;
}

// M(u) = int_{-1}^{u} t psi_k(t) dt  (closed form, stable product form)
Real psi_first_moment(int k, Real u) {
  if (u <= -1.0 || u >= 1.0) return 0.0;
  return -poly_norm_const(k) * int_pow((1.0 - u) * (1.0 + u), k + 1) /
         (2.0 * (k + 1));
}

}  // namespace

Real kernel_eval(const SmoothingKernel& kernel, Real x, Real h) {
  if (!(h > 0.0)) throw std::invalid_argument("kernel_eval: h must be positive");
  if (kernel.kind == KernelKind::polynomial)
    return psi_unit(kernel.order, x / h) / h;
  const Real u = x / h;
  return std::exp(-0.5 * u * u) / (h * std::sqrt(2.0 * pi));
}

Real kernel_fourier(const SmoothingKernel& kernel, Real xi) {
  if (kernel.kind == KernelKind::gaussian)
    return std::exp(-2.0 * pi * pi * xi * xi);
  const int k = kernel.order;
  const Real ax = std::abs(xi);
  const Real x = 2.0 * pi * ax;
  if (x < 1e-2) {
    // moments expansion; the x^8 remainder is below 1e-16 here
    const Real m2 = 1.0 / (2.0 * k + 3.0);
    const Real m4 = 3.0 / ((2.0 * k + 3.0) * (2.0 * k + 5.0));
    const Real m6 = 15.0 / ((2.0 * k + 3.0) * (2.0 * k + 5.0) * (2.0 * k + 7.0));
    const Real x2 = x * x;
    return 1.0 - x2 * m2 / 2.0 + x2 * x2 * m4 / 24.0 - x2 * x2 * x2 * m6 / 720.0;
  }
  // Gamma(k+3/2) (pi xi)^{-(k+1/2)} J_{k+1/2}(2 pi xi), combined in log space
  const Real jn = sph_bessel_j(k, x);
  if (jn == 0.0) return 0.0;
  const Real lg = log_gamma(k + 1.5) - (k + 0.5) * std::log(pi * ax) +
                  0.5 * std::log(4.0 * ax) + std::log(std::abs(jn));
  return std::copysign(std::exp(lg), jn);
}

Real gaussian_corner_profile(Real a, Real b, Real h, Real x) {
  if (!(h > 0.0))
    throw std::invalid_argument("gaussian_corner_profile: h must be positive");
  const Real u = x / h;
  return a * x * erf(u / std::sqrt(2.0)) + b +
         std::sqrt(2.0 / pi) * a * h * std::exp(-0.5 * u * u);
}

namespace {

// |profile - a|x|| at x > 0; decreasing in x, increasing in delta
Real gaussian_residual(Real a, Real delta, Real x) {
  return std::abs(gaussian_corner_profile(a, 0.0, delta, x) - std::abs(a) * x);
}

}  // namespace

Real select_delta(Real w, Real a, Real eps) {
  if (!(w > 0.0)) throw std::invalid_argument("select_delta: w must be positive");
  if (!(eps > 0.0 && eps <= 1e-6))
    throw std::invalid_argument("select_delta: eps must lie in (0, 1e-6]");
  if (a == 0.0) return w;  // flat graph is unchanged by convolution
  const Real x = 0.5 * w;
  if (gaussian_residual(a, w, x) <= eps) return w;
  Real lo = w * 1e-14, hi = w;
  if (gaussian_residual(a, lo, x) > eps)
    throw InfeasibleToleranceError("select_delta: no admissible delta in (0, w]");
  while ((hi - lo) > 1e-12 * hi) {
    const Real mid = 0.5 * (lo + hi);
    if (gaussian_residual(a, mid, x) <= eps)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Real gaussian_zone_halfwidth(Real a, Real delta, Real eps) {
  if (!(delta > 0.0))
    throw std::invalid_argument("gaussian_zone_halfwidth: delta must be positive");
  if (a == 0.0) return 0.0;
  Real lo = 0.0, hi = 40.0 * delta;
  if (gaussian_residual(a, delta, lo) <= eps) return 0.0;
  while ((hi - lo) > 1e-13 * hi) {
    const Real mid = 0.5 * (lo + hi);
    if (gaussian_residual(a, delta, mid) <= eps)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Real CornerSegment::value(Real x) const {
  if (kernel.kind == KernelKind::gaussian)
    return gaussian_corner_profile(slope, 0.0, scale, x);
  const Real u = x / scale;
  if (std::abs(u) >= 1.0) return slope * std::abs(x);
  const Real g = u * (2.0 * psi_cdf(kernel.order, u) - 1.0) -
                 2.0 * psi_first_moment(kernel.order, u);
  return slope * scale * g;
}

Real CornerSegment::deriv(Real x) const {
  if (kernel.kind == KernelKind::gaussian)
    return slope * erf(x / (scale * std::sqrt(2.0)));
  const Real u = x / scale;
  if (u <= -1.0) return -slope;
  if (u >= 1.0) return slope;
  return slope * (2.0 * psi_cdf(kernel.order, u) - 1.0);
}

Real CornerSegment::second(Real x) const {
  return 2.0 * slope * kernel_eval(kernel, x, scale);
}

PiecewiseCurve::PiecewiseCurve(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty())
    throw std::invalid_argument("PiecewiseCurve: no segments");
  const int n = num_segments();
  nat_len_.resize(n);
  seg_arc_.resize(n);
  seg_off_.resize(n);
  for (int i = 0; i < n; ++i) {
    const Segment& s = segments_[i];
    if (std::holds_alternative<LineSegment>(s)) {
      const auto& l = std::get<LineSegment>(s);
      nat_len_[i] = (l.p1 - l.p0).norm();
      seg_arc_[i] = nat_len_[i];
    } else if (std::holds_alternative<ArcSegment>(s)) {
      const auto& a = std::get<ArcSegment>(s);
      nat_len_[i] = a.radius * std::abs(a.ang1 - a.ang0);
      seg_arc_[i] = nat_len_[i];
    } else {
      const auto& c = std::get<CornerSegment>(s);
      nat_len_[i] = 2.0 * c.halfwidth;
      seg_arc_[i] = c.cell_s[c.cell_s.size() - 1];
    }
    seg_off_[i] = total_arc_;
    total_arc_ += seg_arc_[i];
  }
}

Vec2 PiecewiseCurve::point_natural(int seg, Real u) const {
  const Segment& s = segments_[seg];
  if (std::holds_alternative<LineSegment>(s)) {
    const auto& l = std::get<LineSegment>(s);
    return l.p0 + (u / nat_len_[seg]) * (l.p1 - l.p0);
  }
  if (std::holds_alternative<ArcSegment>(s)) {
    const auto& a = std::get<ArcSegment>(s);
    const Real ang = a.ang0 + (a.ang1 - a.ang0) * (u / nat_len_[seg]);
    return a.center + a.radius * Vec2(std::cos(ang), std::sin(ang));
  }
  const auto& c = std::get<CornerSegment>(s);
  return c.point(u - c.halfwidth);
}

Real PiecewiseCurve::speed_natural(int seg, Real u) const {
  const Segment& s = segments_[seg];
  if (std::holds_alternative<CornerSegment>(s))
    return std::get<CornerSegment>(s).speed(u - std::get<CornerSegment>(s).halfwidth);
  return 1.0;
}

CurvePoint PiecewiseCurve::eval_natural(int seg, Real u) const {
  const Segment& s = segments_[seg];
  CurvePoint out;
  if (std::holds_alternative<LineSegment>(s)) {
    const auto& l = std::get<LineSegment>(s);
    out.position = l.p0 + (u / nat_len_[seg]) * (l.p1 - l.p0);
    out.tangent = (l.p1 - l.p0).normalized();
    out.curvature = 0.0;
  } else if (std::holds_alternative<ArcSegment>(s)) {
    const auto& a = std::get<ArcSegment>(s);
    const Real dir = (a.ang1 >= a.ang0) ? 1.0 : -1.0;
    const Real ang = a.ang0 + dir * u / a.radius;
    const Vec2 rad(std::cos(ang), std::sin(ang));
    out.position = a.center + a.radius * rad;
    out.tangent = dir * perp_left(rad);
    out.curvature = dir / a.radius;
  } else {
    const auto& c = std::get<CornerSegment>(s);
    const Real x = u - c.halfwidth;
    const Real d = c.deriv(x);
    const Real sp = std::sqrt(1.0 + d * d);
    out.position = c.point(x);
    out.tangent = (c.xhat + d * c.yhat) / sp;
    out.curvature = c.orient * c.second(x) / (sp * sp * sp);
  }
  return out;
}

Real PiecewiseCurve::arclength_natural(int seg, Real u) const {
  const Segment& s = segments_[seg];
  if (!std::holds_alternative<CornerSegment>(s)) return u;
  const auto& c = std::get<CornerSegment>(s);
  const Real x = u - c.halfwidth;
  // locate the table cell, then quadrature over the partial cell
  const int ncells = static_cast<int>(c.cell_x.size()) - 1;
  int lo = 0, hi = ncells;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (c.cell_x[mid] <= x)
      lo = mid;
    else
      hi = mid;
  }
  const GaussRule& rule = gauss_legendre(16);
  Real sum = 0.0;
  const Real a = c.cell_x[lo];
  for (int i = 0; i < 16; ++i) {
    const Real t = 0.5 * (a + x) + 0.5 * (x - a) * rule.nodes[i];
    sum += rule.weights[i] * c.speed(t);
  }
  return c.cell_s[lo] + 0.5 * (x - a) * sum;
}

CurvePoint curve_eval(const PiecewiseCurve& c, Real t) {
  const Real L = c.total_arclength();
  t = std::fmod(t, L);
  if (t < 0.0) t += L;
  // locate segment
  int seg = 0;
  {
    int lo = 0, hi = c.num_segments();
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (c.segment_offset(mid) <= t)
        lo = mid;
      else
        hi = mid;
    }
    seg = lo;
  }
  const Real s_local = t - c.segment_offset(seg);
  const Segment& s = c.segment(seg);
  if (!std::holds_alternative<CornerSegment>(s))
    return c.eval_natural(seg, s_local);

  // invert the corner arclength table: Newton with bisection fallback
  const auto& corner = std::get<CornerSegment>(s);
  const int ncells = static_cast<int>(corner.cell_s.size()) - 1;
  int lo = 0, hi = ncells;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    if (corner.cell_s[mid] <= s_local)
      lo = mid;
    else
      hi = mid;
  }
  Real xa = corner.cell_x[lo], xb = corner.cell_x[lo + 1];
  Real x = 0.5 * (xa + xb);
  for (int it = 0; it < 60; ++it) {
    const Real u = x + corner.halfwidth;
    const Real err = c.arclength_natural(seg, u) - s_local;
    if (std::abs(err) < 1e-14 * (1.0 + corner.halfwidth)) break;
    if (err > 0.0)
      xb = x;
    else
      xa = x;
    const Real step = err / corner.speed(x);
    Real xn = x - step;
    if (!(xn > xa && xn < xb)) xn = 0.5 * (xa + xb);
    x = xn;
  }
  return c.eval_natural(seg, x + corner.halfwidth);
}

namespace {

CornerSegment build_corner(const Vec2& v, const Vec2& xhat, const Vec2& yhat,
                           Real orient, Real slope, const SmoothingKernel& kernel,
                           Real scale, Real halfwidth, Real zone_edge) {
  CornerSegment c;
  c.vertex = v;
  c.xhat = xhat;
  c.yhat = yhat;
  c.orient = orient;
  c.slope = slope;
  c.kernel = kernel;
  c.scale = scale;
  c.halfwidth = halfwidth;
  c.zone_edge = zone_edge;
  const int ncells = 64;
  c.cell_x.resize(ncells + 1);
  c.cell_s.resize(ncells + 1);
  const GaussRule& rule = gauss_legendre(24);
  c.cell_s[0] = 0.0;
  for (int i = 0; i <= ncells; ++i)
    c.cell_x[i] = -halfwidth + 2.0 * halfwidth * i / ncells;
  for (int i = 0; i < ncells; ++i) {
    const Real a = c.cell_x[i], b = c.cell_x[i + 1];
    Real sum = 0.0;
    for (int q = 0; q < rule.nodes.size(); ++q) {
      const Real t = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes[q];
      sum += rule.weights[q] * c.speed(t);
    }
    c.cell_s[i + 1] = c.cell_s[i] + 0.5 * (b - a) * sum;
  }
  return c;
}

}  // namespace

PiecewiseCurve round_polygon(const Polygon& p, Real h,
                             const SmoothingKernel& kernel) {
  if (!(h > 0.0)) throw std::invalid_argument("round_polygon: h must be positive");
  const Real min_edge = p.min_edge_length();
  if (!(h < 0.5 * min_edge))
    throw std::invalid_argument(
        "round_polygon: h = " + std::to_string(h) +
        " must be smaller than half the minimum edge length (min edge = " +
        std::to_string(min_edge) + ")");

  const int n = p.size();
  struct CornerInfo {
    bool flat = false;
    CornerSegment seg;
    Real zone_edge = 0.0;
  };
  std::vector<CornerInfo> corners(n);

  for (int i = 0; i < n; ++i) {
    const Vec2 v = p.vertex(i);
    const Vec2 r1 = (p.vertex(i - 1) - v).normalized();
    const Vec2 r2 = (p.vertex(i + 1) - v).normalized();
    const Vec2 sum = r1 + r2;
    if (sum.norm() < 1e-13) {
      corners[i].flat = true;  // collinear edges: nothing to round
      continue;
    }
    const Vec2 yhat = sum.normalized();
    Vec2 xhat = (r2 - r2.dot(yhat) * yhat);
    if (xhat.norm() < 1e-15) {
      corners[i].flat = true;  // cusp-like; excluded by polygon validity
      continue;
    }
    xhat.normalize();
    const Real sinw = r2.dot(xhat);
    const Real cosw = r2.dot(yhat);
    const Real slope = cosw / sinw;  // cot of the half opening angle
    const Real orient = cross2(xhat, yhat) > 0.0 ? 1.0 : -1.0;

    Real scale, halfwidth, zone_edge;
    if (kernel.kind == KernelKind::polynomial) {
      scale = h * sinw;
      halfwidth = scale;
      zone_edge = h;
    } else {
      scale = h * sinw;
      halfwidth = gaussian_zone_halfwidth(slope, scale, kernel.eps);
      zone_edge = halfwidth / sinw;
      if (!(zone_edge < 0.5 * min_edge))
        throw std::invalid_argument(
            "round_polygon: gaussian zone " + std::to_string(zone_edge) +
            " exceeds half the minimum edge length (min edge = " +
            std::to_string(min_edge) + "); reduce h");
    }
    if (halfwidth <= 0.0) {
      corners[i].flat = true;
      continue;
    }
    corners[i].zone_edge = zone_edge;
    corners[i].seg = build_corner(v, xhat, yhat, orient, slope, kernel, scale,
                                  halfwidth, zone_edge);
  }

  std::vector<Segment> segs;
  for (int i = 0; i < n; ++i) {
    if (!corners[i].flat) segs.push_back(corners[i].seg);
    // straight piece from vertex i toward vertex i+1
    const Vec2 a = p.vertex(i);
    const Vec2 b = p.vertex(i + 1);
    const Vec2 dir = (b - a).normalized();
    const Vec2 p0 = a + corners[i].zone_edge * dir;
    const Vec2 p1 = b - corners[(i + 1) % n].zone_edge * dir;
    if ((p1 - p0).norm() > 1e-14) segs.push_back(LineSegment{p0, p1});
  }
  return PiecewiseCurve(std::move(segs));
}

PiecewiseCurve make_circle(const Vec2& center, Real radius) {
  if (!(radius > 0.0))
    throw std::invalid_argument("make_circle: radius must be positive");
  std::vector<Segment> segs;
  for (int q = 0; q < 4; ++q)
    segs.push_back(ArcSegment{center, radius, q * pi / 2.0, (q + 1) * pi / 2.0});
  return PiecewiseCurve(std::move(segs));
}

}  // namespace smoothscat
