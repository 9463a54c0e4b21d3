#include "minsurf/mesh_io.hpp"

#include "minsurf/diffgeo.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace minsurf;

namespace {

int count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream is(text);
  std::string line;
  int n = 0;
  while (std::getline(is, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

std::vector<std::string> obj_vertex_tokens(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> out;
  while (std::getline(is, line))
    if (line.rfind("v ", 0) == 0) out.push_back(line.substr(2));
  return out;
}

std::vector<std::string> ply_vertex_tokens(const std::string& text, std::size_t count) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line) && line != "end_header") {
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count && std::getline(is, line); ++i) out.push_back(line);
  return out;
}

}  // namespace

TEST(Tessellate, SingleCell) {
  const auto m = tessellate(make_surface(3, 1.0), SurfaceSelector::base(), DomainRect::square(1), 1, 1, false);
  EXPECT_EQ(m.vertices.size(), 4u);
  EXPECT_EQ(m.faces.size(), 2u);
  EXPECT_LT((m.vertices[m.index(1, 1)] - Vec3(3, 3, 0)).norm(), 1e-14);
  EXPECT_NO_THROW(m.validate());
}

TEST(Tessellate, CountingFormulas) {
  const auto s = make_surface(4, 1.0);
  for (int nu : {1, 2, 7, 40})
    for (int nv : {1, 3, 40}) {
      const auto m = tessellate(s, SurfaceSelector::base(), DomainRect::square(1), nu, nv, false);
      EXPECT_EQ(m.vertices.size(), std::size_t(nu + 1) * std::size_t(nv + 1));
      EXPECT_EQ(m.faces.size(), 2u * std::size_t(nu) * std::size_t(nv));
    }
}

TEST(Tessellate, BranchPointNormalIsZero) {
  for (int res : {2, 10, 40}) {
    const auto m = tessellate(make_surface(5, 1.0), SurfaceSelector::base(), DomainRect::square(1), res, res, true);
    ASSERT_TRUE(m.normals.has_value());
    int zeros = 0;
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
      const double len = (*m.normals)[i].norm();
      if (len == 0.0) {
        ++zeros;
        EXPECT_EQ(m.vertices[i], Vec3::Zero());
      } else {
        EXPECT_NEAR(len, 1.0, 1e-12);
      }
    }
    EXPECT_EQ(zeros, 1) << res;
  }
}

TEST(Tessellate, WindingAgreesWithAnalyticNormal) {
  for (int n : {3, 4, 5, 8}) {
    const auto s = make_surface(n, 1.0);
    const DomainRect d = DomainRect::square(1);
    const int res = 24;
    const auto m = tessellate(s, SurfaceSelector::base(), d, res, res, false);
    for (int j = 0; j < res; ++j) {
      for (int i = 0; i < res; ++i) {
        for (int t = 0; t < 2; ++t) {
          const auto& f = m.faces[2 * (std::size_t(j) * res + i) + t];
          const Vec3 fn = (m.vertices[f[1]] - m.vertices[f[0]]).cross(m.vertices[f[2]] - m.vertices[f[0]]);
          // Parameter centroid of the face.
          const double cu = t == 0 ? i + 1.0 / 3 : i + 2.0 / 3;
          const double cv = t == 0 ? j + 1.0 / 3 : j + 2.0 / 3;
          const ParamPoint c{d.u_min + cu * d.width() / res, d.v_min + cv * d.height() / res};
          const auto rep = curvatures(surface_jet(s, SurfaceSelector::base(), c));
          // High-order branch point: flat triangles near it are dominated by curvature.
          const bool touches_origin = std::abs(c.u) < 0.25 && std::abs(c.v) < 0.25;
          if (rep.singular || touches_origin) continue;
          EXPECT_GT(fn.dot(rep.unit_normal), 0.0) << n << " " << i << " " << j << " " << t;
        }
      }
    }
  }
}

TEST(WriteObj, CountsAndFormat) {
  const auto m = tessellate(make_surface(3, 1.0), SurfaceSelector::base(), DomainRect::square(1), 1, 1, false);
  std::ostringstream os;
  write_obj(m, os);
  const std::string t = os.str();
  EXPECT_EQ(count_prefix(t, "v "), 4);
  EXPECT_EQ(count_prefix(t, "f "), 2);
  EXPECT_EQ(count_prefix(t, "vn "), 0);
  EXPECT_NE(t.find("f 1 2 3\n"), std::string::npos);
  EXPECT_NE(t.find("f 2 4 3\n"), std::string::npos);
  EXPECT_NE(t.find("v 3 3 0\n"), std::string::npos);
}

TEST(WriteObj, NormalsUseDoubleSlash) {
  const auto m = tessellate(make_surface(3, 1.0), SurfaceSelector::base(), DomainRect::square(1), 2, 2, true);
  std::ostringstream os;
  write_obj(m, os);
  EXPECT_EQ(count_prefix(os.str(), "vn "), 9);
  EXPECT_NE(os.str().find("f 1//1 2//2 4//4\n"), std::string::npos);
}

TEST(WritePly, Header) {
  const auto m = tessellate(make_surface(3, 1.0), SurfaceSelector::base(), DomainRect::square(1), 1, 1, false);
  std::ostringstream os;
  write_ply(m, os);
  const std::string t = os.str();
  EXPECT_EQ(t.rfind("ply\nformat ascii 1.0\n", 0), 0u);
  EXPECT_NE(t.find("element vertex 4\n"), std::string::npos);
  EXPECT_NE(t.find("element face 2\n"), std::string::npos);
  EXPECT_NE(t.find("3 0 1 2\n"), std::string::npos);
}

TEST(WriteMesh, RejectsEmptyMesh) {
  Mesh empty;
  std::ostringstream os;
  try {
    write_obj(empty, os);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidMesh);
  }
  EXPECT_THROW(write_ply(empty, os), Error);
  EXPECT_TRUE(os.str().empty());
  auto m = tessellate(make_surface(3, 1.0), SurfaceSelector::base(), DomainRect::square(1), 1, 1, false);
  m.faces[0][2] = 99;
  EXPECT_THROW(m.validate(), Error);
}

TEST(WriteMesh, ObjAndPlyAgreeOnVertices) {
  const auto m = tessellate(make_surface(6, 0.7), SurfaceSelector::family(0.4), DomainRect::square(1.3), 9, 7, false);
  std::ostringstream obj, ply;
  write_obj(m, obj);
  write_ply(m, ply);
  const auto a = obj_vertex_tokens(obj.str());
  const auto b = ply_vertex_tokens(ply.str(), m.vertices.size());
  ASSERT_EQ(a.size(), m.vertices.size());
  EXPECT_EQ(a, b);
  // 17 significant digits round-trip bit for bit.
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::istringstream is(a[i]);
    double x, y, z;
    is >> x >> y >> z;
    EXPECT_EQ(x, m.vertices[i].x() == 0.0 ? 0.0 : m.vertices[i].x());
    EXPECT_EQ(y, m.vertices[i].y() == 0.0 ? 0.0 : m.vertices[i].y());
    EXPECT_EQ(z, m.vertices[i].z() == 0.0 ? 0.0 : m.vertices[i].z());
  }
}

TEST(WriteCsv, HeaderAndRows) {
  const auto pts = sample_grid(make_surface(3, 1.0), SurfaceSelector::base(), DomainRect::square(1), 64, 64);
  std::ostringstream os;
  write_csv(pts, os);
  const std::string t = os.str();
  EXPECT_EQ(t.rfind("u,v,x,y,z\n", 0), 0u);
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), 1 + 4225);
  EXPECT_NE(t.find("\n1,1,3,3,0\n"), std::string::npos);
}

TEST(FormatReal, NegativeZeroAndPrecision) {
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(std::sqrt(3.0)), "1.7320508075688772");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}

TEST(FamilyFrames, DefaultScheduleEndpoints) {
  const auto s = make_surface(3, 1.0);
  const auto sched = default_frame_schedule();
  ASSERT_EQ(sched.size(), 6u);
  const DomainRect d = DomainRect::square(4);
  const auto frames = family_frames(s, sched, d, 64, 64);
  ASSERT_EQ(frames.size(), 6u);
  const auto base = tessellate(s, SurfaceSelector::base(), d, 64, 64, false);
  const auto conj = tessellate(s, SurfaceSelector::conjugate(), d, 64, 64, false);
  ASSERT_EQ(frames[0].mesh.vertices.size(), base.vertices.size());
  for (std::size_t i = 0; i < base.vertices.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const double a = frames[0].mesh.vertices[i][c], b = base.vertices[i][c];
      EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
    }
    const double scale = std::max(1.0, conj.vertices[i].cwiseAbs().maxCoeff());
    EXPECT_LT((frames[5].mesh.vertices[i] - conj.vertices[i]).cwiseAbs().maxCoeff() / scale, 1e-12);
  }
  EXPECT_EQ(frames[0].mesh.faces, base.faces);
}

TEST(FamilyFrames, QuarterPhaseIsBlend) {
  const auto s = make_surface(4, 1.0);
  const DomainRect d = DomainRect::square(1);
  const std::vector<double> sched{std::numbers::pi / 4};
  const auto frames = family_frames(s, sched, d, 8, 8);
  ASSERT_EQ(frames.size(), 1u);
  const auto r = tessellate(s, SurfaceSelector::base(), d, 8, 8, false);
  const auto c = tessellate(s, SurfaceSelector::conjugate(), d, 8, 8, false);
  for (std::size_t i = 0; i < r.vertices.size(); ++i) {
    const Vec3 want = std::numbers::sqrt2 / 2 * (r.vertices[i] + c.vertices[i]);
    EXPECT_LT((frames[0].mesh.vertices[i] - want).norm(), 1e-13);
  }
  EXPECT_THROW(family_frames(s, std::vector<double>{}, d, 8, 8), Error);
}

TEST(FamilyFrames, QuinticFramesAreIsometric) {
  const auto s = make_surface(5, 1.0);
  const auto grid = ParamGrid::square(4.0, 17);
  for (double t : default_frame_schedule()) {
    const auto rep = family_isometry_check(s, t, grid);
    EXPECT_LT(rep.max_form_deviation, 1e-9);
    EXPECT_LT(rep.max_gaussian_deviation, 1e-8);
  }
}

TEST(FamilyFrames, FileNamesAndWriting) {
  EXPECT_EQ(frame_filename(0, 0.0), "frame_0_0.obj");
  EXPECT_EQ(frame_filename(1, std::numbers::pi / 10), "frame_1_314.obj");
  EXPECT_EQ(frame_filename(5, std::numbers::pi / 2), "frame_5_1571.obj");
  EXPECT_EQ(frame_filename(2, 0.25, "ply"), "frame_2_250.ply");

  const auto dir = std::filesystem::temp_directory_path() / "minsurf_frames_test";
  std::filesystem::remove_all(dir);
  const auto frames = family_frames(make_surface(3, 1.0), default_frame_schedule(), DomainRect::square(4), 4, 4);
  const auto paths = write_frames(frames, dir);
  ASSERT_EQ(paths.size(), 6u);
  for (const auto& p : paths) EXPECT_TRUE(std::filesystem::exists(p));
  EXPECT_EQ(paths[3].filename(), "frame_3_942.obj");
  std::filesystem::remove_all(dir);
}

TEST(WriteMeshFile, IoErrorOnBadPath) {
  const auto m = tessellate(make_surface(3, 1.0), SurfaceSelector::base(), DomainRect::square(1), 1, 1, false);
  try {
    write_mesh_file(m, "/nonexistent_dir_minsurf/x.obj", MeshFormat::Obj);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}
