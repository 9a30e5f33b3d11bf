#pragma once

#include <memory>
#include <vector>

#include "smoothscat/geometry.hpp"
#include "smoothscat/types.hpp"

namespace smoothscat {

inline constexpr int panel_order = 16;  // Gauss-Legendre nodes per panel

struct PanelInterval {
  int seg = 0;
  Real u0 = 0.0, u1 = 0.0;  // natural parameter range within the segment
};

struct Panel {
  int seg = 0;
  Real u0 = 0.0, u1 = 0.0;
  Real arclength = 0.0;
  Real tail = 0.0;  // resolution estimate at build time
};

// Relative magnitude of the Legendre coefficients a 16-node panel cannot
// represent (orders 16..31 of a 32-point expansion), taken over the two
// coordinate functions and the arclength density.
Real resolution_estimate(const PiecewiseCurve& c, const PanelInterval& iv);

// Ordered Gauss-Legendre panels along a closed curve with nodes, outward
// normals and arclength weights.
class BoundaryMesh {
 public:
  BoundaryMesh(std::shared_ptr<const PiecewiseCurve> curve,
               std::vector<Panel> panels, Real tol, Real lambda,
               bool must_weight);

  const PiecewiseCurve& curve() const { return *curve_; }
  std::shared_ptr<const PiecewiseCurve> curve_ptr() const { return curve_; }
  int num_panels() const { return static_cast<int>(panels_.size()); }
  int num_nodes() const { return num_panels() * panel_order; }
  const Panel& panel(int p) const { return panels_[p]; }
  int panel_of_node(int j) const { return j / panel_order; }

  Vec2 node(int j) const { return nodes_.row(j); }
  Vec2 normal(int j) const { return normals_.row(j); }
  Real weight(int j) const { return weights_[j]; }
  Real node_param(int j) const { return node_u_[j]; }  // natural parameter
  const VecX& weights() const { return weights_; }

  Real tol() const { return tol_; }
  Real lambda() const { return lambda_; }
  bool must_weight() const { return must_weight_; }
  Real total_arclength() const { return weights_.sum(); }

  bool adjacent_panels(int p, int q) const {
    const int n = num_panels();
    return p == q || (p + 1) % n == q || (q + 1) % n == p;
  }

 private:
  std::shared_ptr<const PiecewiseCurve> curve_;
  std::vector<Panel> panels_;
  Eigen::Matrix<Real, Eigen::Dynamic, 2> nodes_;
  Eigen::Matrix<Real, Eigen::Dynamic, 2> normals_;
  VecX weights_;
  VecX node_u_;
  Real tol_ = 0.0;
  Real lambda_ = 0.0;
  bool must_weight_ = false;
};

// Adaptive decomposition: recursive bisection until every panel resolves to
// tol, then cyclic 2:1 arclength balancing and the 2*lambda wavelength cap,
// iterated to a fixed point.
BoundaryMesh discretize(std::shared_ptr<const PiecewiseCurve> curve,
                        Real tol, Real lambda);
BoundaryMesh discretize(const PiecewiseCurve& curve, Real tol, Real lambda);

// Mesh from caller-provided seed intervals (used by the corner-reference
// construction); runs the same resolution/balance/cap pipeline.
BoundaryMesh mesh_from_intervals(std::shared_ptr<const PiecewiseCurve> curve,
                                 std::vector<PanelInterval> seed, Real tol,
                                 Real lambda, bool must_weight);

// Area centroid of the bounded region, with a ray-cast fallback when the
// centroid is exterior (non-star-shaped geometry).
Vec2 interior_point(const BoundaryMesh& mesh);

}  // namespace smoothscat
