#pragma once

#include "minsurf/surface_family.hpp"
#include "minsurf/types.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minsurf {

struct Mesh {
  std::vector<SurfacePoint> vertices;
  /// Unit normals per vertex; zero vector at singular vertices.
  std::optional<std::vector<Vec3>> normals;
  /// Counterclockwise in the parameter plane, 0-based.
  std::vector<std::array<std::uint32_t, 3>> faces;
  int grid_u = 0;  ///< nu + 1 vertices along u
  int grid_v = 0;  ///< nv + 1 vertices along v

  /// Throws Error(InvalidMesh) on empty faces, bad indices or a size mismatch.
  void validate() const;

  /// Row-major vertex index of grid node (i, j).
  std::uint32_t index(int i, int j) const {
    return static_cast<std::uint32_t>(j) * static_cast<std::uint32_t>(grid_u) + static_cast<std::uint32_t>(i);
  }
};

/// nu x nv cells over `domain`, two triangles per cell, lower-left triangle first.
Mesh tessellate(const SurfaceSpec& spec, const SurfaceSelector& sel, const DomainRect& domain, int nu, int nv,
                bool with_normals);

struct CsvSample {
  ParamPoint pt;
  SurfacePoint position;
};

/// Grid samples (nu + 1) x (nv + 1), row-major, same nodes as tessellate.
std::vector<CsvSample> sample_grid(const SurfaceSpec& spec, const SurfaceSelector& sel, const DomainRect& domain,
                                   int nu, int nv);

void write_obj(const Mesh& mesh, std::ostream& sink);
void write_ply(const Mesh& mesh, std::ostream& sink);
void write_csv(std::span<const CsvSample> points, std::ostream& sink);

/// 17 significant digits, negative zero printed as 0.
std::string format_real(double x);

struct Frame {
  double phase = 0.0;
  Mesh mesh;
};

/// The six phases from t = 0 to t = pi/2 in steps of pi/10.
std::vector<double> default_frame_schedule();

std::vector<Frame> family_frames(const SurfaceSpec& spec, std::span<const double> schedule,
                                 const DomainRect& domain, int nu, int nv, bool with_normals = false);

/// frame_<index>_<round(1000 t)>.<extension>
std::string frame_filename(std::size_t index, double phase, const std::string& extension = "obj");

enum class MeshFormat { Obj, Ply };

/// Writes one file per frame into `dir` (created if missing); returns the paths.
/// Throws Error(Io) on filesystem failures.
std::vector<std::filesystem::path> write_frames(std::span<const Frame> frames, const std::filesystem::path& dir,
                                                MeshFormat format = MeshFormat::Obj);

/// Writes `mesh` to `path`. Throws Error(Io) if the file cannot be written.
void write_mesh_file(const Mesh& mesh, const std::filesystem::path& path, MeshFormat format);

}  // namespace minsurf
