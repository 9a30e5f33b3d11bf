#include "smoothscat/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace smoothscat {

using nlohmann::json;

GeometryFile read_geometry_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open geometry file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("bad geometry JSON in " + path + ": " + e.what());
  }
  GeometryFile out;
  if (j.contains("vertices")) {
    std::vector<Vec2> verts;
    for (const auto& v : j["vertices"])
      verts.emplace_back(v.at(0).get<Real>(), v.at(1).get<Real>());
    out.polygon = Polygon(std::move(verts));
  } else if (j.contains("circle")) {
    const auto& c = j["circle"];
    out.circle = {Vec2(c.at("center").at(0).get<Real>(),
                       c.at("center").at(1).get<Real>()),
                  c.at("radius").get<Real>()};
  } else {
    throw std::invalid_argument("geometry file " + path +
                                " needs \"vertices\" or \"circle\"");
  }
  return out;
}

std::string config_hash(const std::string& canonical) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

namespace {

std::string csv_header(const std::string& hash, const std::string& columns) {
  std::ostringstream os;
  os << "# version=" << artifact_version << " config_hash=" << hash << "\n";
  os << columns << "\n";
  return os.str();
}

json meta_block(const std::string& hash) {
  return json{{"version", artifact_version}, {"config_hash", hash}};
}

std::string fmt(Real v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_curve_json(const std::string& path, const PiecewiseCurve& curve,
                      const std::string& hash) {
  json segs = json::array();
  for (int i = 0; i < curve.num_segments(); ++i) {
    const Segment& s = curve.segment(i);
    json js;
    if (std::holds_alternative<LineSegment>(s)) {
      const auto& l = std::get<LineSegment>(s);
      js = {{"kind", "line"},
            {"p0", {l.p0.x(), l.p0.y()}},
            {"p1", {l.p1.x(), l.p1.y()}}};
    } else if (std::holds_alternative<ArcSegment>(s)) {
      const auto& a = std::get<ArcSegment>(s);
      js = {{"kind", "arc"},
            {"center", {a.center.x(), a.center.y()}},
            {"radius", a.radius},
            {"ang0", a.ang0},
            {"ang1", a.ang1}};
    } else {
      const auto& c = std::get<CornerSegment>(s);
      js = {{"kind", "corner"},
            {"vertex", {c.vertex.x(), c.vertex.y()}},
            {"xhat", {c.xhat.x(), c.xhat.y()}},
            {"yhat", {c.yhat.x(), c.yhat.y()}},
            {"orient", c.orient},
            {"slope", c.slope},
            {"kernel",
             c.kernel.kind == KernelKind::polynomial
                 ? json{{"kind", "polynomial"}, {"order", c.kernel.order}}
                 : json{{"kind", "gaussian"}, {"eps", c.kernel.eps}}},
            {"scale", c.scale},
            {"halfwidth", c.halfwidth},
            {"zone_width", 2.0 * c.halfwidth},
            {"zone_edge", c.zone_edge}};
    }
    js["arclength"] = curve.segment_arclength(i);
    segs.push_back(js);
  }
  json j = {{"meta", meta_block(hash)},
            {"total_arclength", curve.total_arclength()},
            {"segments", segs}};
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_polyline_csv(const std::string& path, const PiecewiseCurve& curve,
                        int samples, const std::string& hash) {
  std::ostringstream os;
  os << csv_header(hash, "t,x,y,curvature");
  const Real L = curve.total_arclength();
  for (int i = 0; i < samples; ++i) {
    const Real t = L * i / samples;
    const CurvePoint cp = curve_eval(curve, t);
    os << fmt(t) << "," << fmt(cp.position.x()) << "," << fmt(cp.position.y())
       << "," << fmt(cp.curvature) << "\n";
  }
  write_text_atomic(path, os.str());
}

void write_mesh_csv(const std::string& path, const BoundaryMesh& mesh,
                    const std::string& hash) {
  std::ostringstream os;
  os << csv_header(hash, "panel,x,y,nx,ny,weight");
  for (int j = 0; j < mesh.num_nodes(); ++j) {
    os << mesh.panel_of_node(j) << "," << fmt(mesh.node(j).x()) << ","
       << fmt(mesh.node(j).y()) << "," << fmt(mesh.normal(j).x()) << ","
       << fmt(mesh.normal(j).y()) << "," << fmt(mesh.weight(j)) << "\n";
  }
  write_text_atomic(path, os.str());
}

void write_density_csv(const std::string& path, const Density& density,
                       const std::string& hash) {
  std::ostringstream os;
  os << csv_header(hash, "x,y,re_sigma,im_sigma,weight");
  const BoundaryMesh& mesh = *density.mesh;
  for (int j = 0; j < mesh.num_nodes(); ++j) {
    os << fmt(mesh.node(j).x()) << "," << fmt(mesh.node(j).y()) << ","
       << fmt(density.sigma[j].real()) << "," << fmt(density.sigma[j].imag())
       << "," << fmt(mesh.weight(j)) << "\n";
  }
  write_text_atomic(path, os.str());
}

void write_solve_meta_json(const std::string& path, const SolveResult& result,
                           Real verification_error, bool verified,
                           const std::string& hash) {
  json j = {{"meta", meta_block(hash)},
            {"nodes", result.nodes},
            {"residual", result.residual},
            {"mesh_seconds", result.mesh_seconds},
            {"assemble_seconds", result.assemble_seconds},
            {"solve_seconds", result.solve_seconds}};
  if (verified) j["verification_error"] = verification_error;
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_xsection_csv(const std::string& path, const CrossSection& section,
                        const std::string& hash) {
  std::ostringstream os;
  std::string kind = section.kind == CrossSectionKind::mono_static
                         ? "mono-static"
                         : (section.kind == CrossSectionKind::bi_static
                                ? "bi-static"
                                : "far-field");
  os << "# version=" << artifact_version << " config_hash=" << hash
     << " kind=" << kind;
  if (section.kind != CrossSectionKind::far_field)
    os << " radius=" << fmt(section.radius) << " center=" << fmt(section.center.x())
       << "/" << fmt(section.center.y());
  os << "\n";
  os << "theta,re_u,im_u,db\n";
  const VecX db = to_db(section);
  for (int i = 0; i < section.thetas.size(); ++i) {
    os << fmt(section.thetas[i]) << "," << fmt(section.values[i].real()) << ","
       << fmt(section.values[i].imag()) << "," << fmt(db[i]) << "\n";
  }
  write_text_atomic(path, os.str());
}

void write_convergence_json(const std::string& path,
                            const ConvergenceRecord& record,
                            int reference_nodes, const std::string& hash) {
  json rows = json::array();
  for (const ConvergenceRow& r : record.rows)
    rows.push_back(
        {{"h", r.h}, {"n", r.nodes}, {"rmse", r.rmse}, {"rel_l2", r.rel_l2}});
  rows.push_back({{"h", 0.0}, {"n", reference_nodes}});
  json j = {{"meta", meta_block(hash)},
            {"rows", rows},
            {"fitted_order", record.fitted_order}};
  write_text_atomic(path, j.dump(2) + "\n");
}

void write_matrix_dump(const std::string& path, const MatXc& A) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const int64_t rows = A.rows(), cols = A.cols();
  out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  for (int64_t i = 0; i < rows; ++i) {
    for (int64_t j = 0; j < cols; ++j) {
      const double re = A(i, j).real(), im = A(i, j).imag();
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
}

}  // namespace smoothscat
