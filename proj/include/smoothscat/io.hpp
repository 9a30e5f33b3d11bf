#pragma once

#include <optional>
#include <string>

#include "smoothscat/fields.hpp"
#include "smoothscat/solver.hpp"

namespace smoothscat {

// geometry input: {"vertices": [[x,y],...]} or {"circle": {"center":[x,y],"radius":r}}
struct GeometryFile {
  std::optional<Polygon> polygon;
  std::optional<std::pair<Vec2, Real>> circle;
};

GeometryFile read_geometry_json(const std::string& path);

// FNV-1a hash of a canonical config string, hex encoded
std::string config_hash(const std::string& canonical);

inline constexpr const char* artifact_version = "0.1.0";

// all writers are atomic (tmp file + rename) and stamp config hash + version
void write_text_atomic(const std::string& path, const std::string& content);

void write_curve_json(const std::string& path, const PiecewiseCurve& curve,
                      const std::string& hash);
void write_polyline_csv(const std::string& path, const PiecewiseCurve& curve,
                        int samples, const std::string& hash);
void write_mesh_csv(const std::string& path, const BoundaryMesh& mesh,
                    const std::string& hash);
void write_density_csv(const std::string& path, const Density& density,
                       const std::string& hash);
void write_solve_meta_json(const std::string& path, const SolveResult& result,
                           Real verification_error, bool verified,
                           const std::string& hash);
void write_xsection_csv(const std::string& path, const CrossSection& section,
                        const std::string& hash);
void write_convergence_json(const std::string& path,
                            const ConvergenceRecord& record,
                            int reference_nodes, const std::string& hash);

// binary matrix dump: two int64 dims then row-major re/im pairs (unstable
// debugging format)
void write_matrix_dump(const std::string& path, const MatXc& A);

}  // namespace smoothscat
