#include "minsurf/mesh_io.hpp"

#include "minsurf/diffgeo.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>

namespace minsurf {

void Mesh::validate() const {
  if (grid_u < 2 || grid_v < 2) throw Error(ErrorCode::InvalidMesh, "mesh grid needs at least 2x2 vertices");
  const std::size_t expected = static_cast<std::size_t>(grid_u) * static_cast<std::size_t>(grid_v);
  if (vertices.size() != expected) throw Error(ErrorCode::InvalidMesh, "vertex count does not match grid");
  if (faces.empty()) throw Error(ErrorCode::InvalidMesh, "mesh has no faces");
  if (normals && normals->size() != vertices.size()) {
    throw Error(ErrorCode::InvalidMesh, "normal count does not match vertex count");
  }
  for (const auto& f : faces) {
    for (std::uint32_t idx : f) {
      if (idx >= vertices.size()) throw Error(ErrorCode::InvalidMesh, "face index out of range");
    }
  }
}

Mesh tessellate(const SurfaceSpec& spec, const SurfaceSelector& sel, const DomainRect& domain, int nu, int nv,
                bool with_normals) {
  domain.validate();
  if (nu < 1 || nv < 1) throw Error(ErrorCode::InvalidArgument, "tessellation needs nu, nv >= 1");
  Mesh mesh;
  mesh.grid_u = nu + 1;
  mesh.grid_v = nv + 1;
  const std::size_t count = static_cast<std::size_t>(mesh.grid_u) * static_cast<std::size_t>(mesh.grid_v);
  mesh.vertices.reserve(count);
  if (with_normals) mesh.normals.emplace().reserve(count);

  for (int j = 0; j <= nv; ++j) {
    const double v = lattice_coordinate(domain.v_min, domain.v_max, j, nv);
    for (int i = 0; i <= nu; ++i) {
      const ParamPoint pt{lattice_coordinate(domain.u_min, domain.u_max, i, nu), v};
      if (with_normals) {
        const SurfaceJet jet = surface_jet(spec, sel, pt);
        mesh.vertices.push_back(eval(spec, sel, pt));
        const CurvatureReport c = curvatures(jet);
        mesh.normals->push_back(c.singular ? Vec3::Zero() : c.unit_normal);
      } else {
        mesh.vertices.push_back(eval(spec, sel, pt));
      }
    }
  }

  mesh.faces.reserve(2 * static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  for (int j = 0; j < nv; ++j) {
    for (int i = 0; i < nu; ++i) {
      const std::uint32_t a = mesh.index(i, j);
      const std::uint32_t b = mesh.index(i + 1, j);
      const std::uint32_t c = mesh.index(i, j + 1);
      const std::uint32_t d = mesh.index(i + 1, j + 1);
      mesh.faces.push_back({a, b, c});
      mesh.faces.push_back({b, d, c});
    }
  }
  return mesh;
}

std::vector<CsvSample> sample_grid(const SurfaceSpec& spec, const SurfaceSelector& sel, const DomainRect& domain,
                                   int nu, int nv) {
  domain.validate();
  if (nu < 1 || nv < 1) throw Error(ErrorCode::InvalidArgument, "sampling needs nu, nv >= 1");
  std::vector<CsvSample> out;
  out.reserve(static_cast<std::size_t>(nu + 1) * static_cast<std::size_t>(nv + 1));
  for (int j = 0; j <= nv; ++j) {
    for (int i = 0; i <= nu; ++i) {
      const ParamPoint pt{lattice_coordinate(domain.u_min, domain.u_max, i, nu),
                          lattice_coordinate(domain.v_min, domain.v_max, j, nv)};
      out.push_back({pt, eval(spec, sel, pt)});
    }
  }
  return out;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

namespace {

void check_sink(std::ostream& sink) {
  if (!sink) throw Error(ErrorCode::Io, "write to output sink failed");
}

}  // namespace

void write_obj(const Mesh& mesh, std::ostream& sink) {
  mesh.validate();
  for (const Vec3& p : mesh.vertices) {
    sink << "v " << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z()) << '\n';
  }
  if (mesh.normals) {
    for (const Vec3& n : *mesh.normals) {
      sink << "vn " << format_real(n.x()) << ' ' << format_real(n.y()) << ' ' << format_real(n.z()) << '\n';
    }
  }
  for (const auto& f : mesh.faces) {
    if (mesh.normals) {
      sink << "f " << f[0] + 1 << "//" << f[0] + 1 << ' ' << f[1] + 1 << "//" << f[1] + 1 << ' ' << f[2] + 1
           << "//" << f[2] + 1 << '\n';
    } else {
      sink << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
    }
  }
  check_sink(sink);
}

void write_ply(const Mesh& mesh, std::ostream& sink) {
  mesh.validate();
  sink << "ply\nformat ascii 1.0\n";
  sink << "element vertex " << mesh.vertices.size() << '\n';
  sink << "property double x\nproperty double y\nproperty double z\n";
  if (mesh.normals) sink << "property double nx\nproperty double ny\nproperty double nz\n";
  sink << "element face " << mesh.faces.size() << '\n';
  sink << "property list uchar uint vertex_indices\n";
  sink << "end_header\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& p = mesh.vertices[i];
    sink << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z());
    if (mesh.normals) {
      const Vec3& n = (*mesh.normals)[i];
      sink << ' ' << format_real(n.x()) << ' ' << format_real(n.y()) << ' ' << format_real(n.z());
    }
    sink << '\n';
  }
  for (const auto& f : mesh.faces) sink << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
  check_sink(sink);
}

void write_csv(std::span<const CsvSample> points, std::ostream& sink) {
  sink << "u,v,x,y,z\n";
  for (const CsvSample& s : points) {
    sink << format_real(s.pt.u) << ',' << format_real(s.pt.v) << ',' << format_real(s.position.x()) << ','
         << format_real(s.position.y()) << ',' << format_real(s.position.z()) << '\n';
  }
  check_sink(sink);
}

std::vector<double> default_frame_schedule() {
  return {std::begin(kDeformationPhases), std::end(kDeformationPhases)};
}

std::vector<Frame> family_frames(const SurfaceSpec& spec, std::span<const double> schedule,
                                 const DomainRect& domain, int nu, int nv, bool with_normals) {
  if (schedule.empty()) throw Error(ErrorCode::InvalidArgument, "frame schedule must not be empty");
  std::vector<Frame> frames;
  frames.reserve(schedule.size());
  for (double t : schedule) {
    frames.push_back({t, tessellate(spec, SurfaceSelector::family(t), domain, nu, nv, with_normals)});
  }
  return frames;
}

std::string frame_filename(std::size_t index, double phase, const std::string& extension) {
  const long long mrad = std::llround(phase * 1000.0);
  return "frame_" + std::to_string(index) + "_" + std::to_string(mrad) + "." + extension;
}

void write_mesh_file(const Mesh& mesh, const std::filesystem::path& path, MeshFormat format) {
  mesh.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  if (format == MeshFormat::Obj) {
    write_obj(mesh, out);
  } else {
    write_ply(mesh, out);
  }
  out.close();
  if (!out) throw Error(ErrorCode::Io, "failed writing " + path.string());
}

std::vector<std::filesystem::path> write_frames(std::span<const Frame> frames, const std::filesystem::path& dir,
                                                MeshFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create directory " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> paths;
  const std::string ext = format == MeshFormat::Obj ? "obj" : "ply";
  for (std::size_t i = 0; i < frames.size(); ++i) {
    paths.push_back(dir / frame_filename(i, frames[i].phase, ext));
    write_mesh_file(frames[i].mesh, paths.back(), format);
  }
  return paths;
}

}  // namespace minsurf
