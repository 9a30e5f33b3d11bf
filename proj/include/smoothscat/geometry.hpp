#pragma once

#include <variant>
#include <vector>

#include "smoothscat/types.hpp"

namespace smoothscat {

// Simple closed polygon, stored counterclockwise (reordered on construction).
class Polygon {
 public:
  explicit Polygon(std::vector<Vec2> vertices);

  int size() const { return static_cast<int>(verts_.size()); }
  const Vec2& vertex(int i) const;  // index wraps
  const std::vector<Vec2>& vertices() const { return verts_; }
  Real signed_area() const;
  Real min_edge_length() const;
  Vec2 area_centroid() const;

 private:
  std::vector<Vec2> verts_;
};

enum class KernelKind { polynomial, gaussian };

struct SmoothingKernel {
  KernelKind kind = KernelKind::polynomial;
  int order = 8;     // polynomial only
  Real eps = 1e-15;  // gaussian truncation

  static SmoothingKernel polynomial(int k);
  static SmoothingKernel gaussian(Real eps = 1e-15);
};

// phi_h(x) = (1/h) phi(x/h); zero outside [-h,h] for the polynomial kind.
Real kernel_eval(const SmoothingKernel& kernel, Real x, Real h);

// Fourier transform with the convention  F[f](xi) = int f(x) e^{-2 pi i xi x} dx;
// equals 1 at xi = 0 for both kinds.
Real kernel_fourier(const SmoothingKernel& kernel, Real xi);

// Closed-form Gaussian convolution of a|x| + b at scale h.
Real gaussian_corner_profile(Real a, Real b, Real h, Real x);

// Largest delta in (0, w] such that the Gaussian profile matches a|x| + b at
// x = +-w/2 to within eps (absolute). Bisection to relative tolerance 1e-12.
Real select_delta(Real w, Real a, Real eps);

// Smallest x >= 0 beyond which the Gaussian profile at scale delta deviates
// from a|x| by at most eps.
Real gaussian_zone_halfwidth(Real a, Real delta, Real eps);

struct LineSegment {
  Vec2 p0, p1;
};

struct ArcSegment {
  Vec2 center;
  Real radius = 1.0;
  Real ang0 = 0.0, ang1 = 0.0;  // traversed ang0 -> ang1, CCW if ang1 > ang0
};

// Rounded corner stored as an even graph y = F(x) over the support line
// perpendicular to the angle bisector at the vertex.
struct CornerSegment {
  Vec2 vertex;
  Vec2 xhat, yhat;          // graph frame
  Real orient = 1.0;        // +1 right-handed frame (convex), -1 reflex
  Real slope = 0.0;         // a = cot(half opening angle), always > 0
  SmoothingKernel kernel;
  Real scale = 0.0;         // kernel scale in graph coordinates
  Real halfwidth = 0.0;     // x_w: graph runs over [-x_w, x_w]
  Real zone_edge = 0.0;     // replaced distance along each edge
  VecX cell_x;              // arclength table cell boundaries
  VecX cell_s;              // cumulative arclength at boundaries

  Real value(Real x) const;
  Real deriv(Real x) const;
  Real second(Real x) const;
  Real speed(Real x) const { Real d = deriv(x); return std::sqrt(1.0 + d * d); }
  Vec2 point(Real x) const { return vertex + x * xhat + value(x) * yhat; }
};

using Segment = std::variant<LineSegment, ArcSegment, CornerSegment>;

struct CurvePoint {
  Vec2 position;
  Vec2 tangent;    // unit
  Real curvature;  // signed, CCW positive
};

// Closed parametric curve: straight edges, circular arcs, rounded corners.
class PiecewiseCurve {
 public:
  explicit PiecewiseCurve(std::vector<Segment> segments);

  int num_segments() const { return static_cast<int>(segments_.size()); }
  const Segment& segment(int i) const { return segments_[i]; }
  Real natural_length(int i) const { return nat_len_[i]; }
  Real segment_arclength(int i) const { return seg_arc_[i]; }
  Real segment_offset(int i) const { return seg_off_[i]; }
  Real total_arclength() const { return total_arc_; }

  // evaluation in a segment's natural parameter u in [0, natural_length(i)]
  CurvePoint eval_natural(int seg, Real u) const;
  Vec2 point_natural(int seg, Real u) const;
  Real speed_natural(int seg, Real u) const;
  // arclength from the start of segment seg to natural parameter u
  Real arclength_natural(int seg, Real u) const;

 private:
  std::vector<Segment> segments_;
  std::vector<Real> nat_len_;
  std::vector<Real> seg_arc_;
  std::vector<Real> seg_off_;
  Real total_arc_ = 0.0;
};

// Position, unit tangent and signed curvature at arclength t (wrapped).
CurvePoint curve_eval(const PiecewiseCurve& c, Real t);

// Convolutional rounding of every polygon corner; straight parts are kept
// exactly. h must be less than half the minimum edge length.
PiecewiseCurve round_polygon(const Polygon& p, Real h,
                             const SmoothingKernel& kernel);

PiecewiseCurve make_circle(const Vec2& center, Real radius);

}  // namespace smoothscat
