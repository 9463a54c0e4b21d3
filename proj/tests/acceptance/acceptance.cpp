// Prints one [PASS]/[FAIL] line per acceptance criterion; exit status is 0 iff all pass.

#include "minsurf/diffgeo.hpp"
#include "minsurf/mesh_io.hpp"
#include "minsurf/pq_kernel.hpp"
#include "minsurf/shape_analysis.hpp"
#include "minsurf/surface_family.hpp"

#include "../oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace minsurf;

namespace {

constexpr int kMinDegree = 3;
constexpr int kMaxDegree = 12;
const double kOmegas[] = {0.5, 1.0, 2.0};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double rel(const Vec3& a, const Vec3& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max({1.0, a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()});
}

// The sweep shared by criteria 1, 2, 4 and 5.
struct Sweep {
  double minimality = 0, isothermal = 0, cauchy_riemann = 0, isometry_form = 0, isometry_gaussian = 0;
  bool singular_sets_ok = true;
  std::string singular_note;
};

const Sweep& sweep() {
  static const Sweep s = [] {
    Sweep out;
    const auto selectors = default_selectors();
    const ParamGrid grid = ParamGrid::square(1.0, 41);
    for (int n = kMinDegree; n <= kMaxDegree; ++n) {
      for (double w : kOmegas) {
        const auto res = verify_surface(make_surface(n, w), selectors, grid);
        for (const auto& suite : res.suites) {
          double* slot = nullptr;
          if (suite.name == "minimality") slot = &out.minimality;
          if (suite.name == "isothermality") slot = &out.isothermal;
          if (suite.name == "cauchy-riemann") slot = &out.cauchy_riemann;
          if (suite.name == "family-isometry") slot = &out.isometry_form;
          if (suite.name == "gaussian-curvature") slot = &out.isometry_gaussian;
          if (slot) *slot = std::max(*slot, suite.worst);
        }
        const bool want_origin = n >= 4;
        const bool ok = want_origin ? res.singular_points.size() == 1 && res.singular_points[0] == ParamPoint{0, 0}
                                    : res.singular_points.empty();
        if (!ok && out.singular_sets_ok) {
          out.singular_sets_ok = false;
          out.singular_note = " unexpected singular set at n=" + std::to_string(n);
        }
      }
    }
    return out;
  }();
  return s;
}

Outcome c1_minimality() {
  const Sweep& s = sweep();
  return {s.minimality < 1e-8 && s.singular_sets_ok,
          "max |H| residual " + sci(s.minimality) + " < 1e-08; singular sets " +
              (s.singular_sets_ok ? "{(0,0)} for n>=4, none for n=3" : "wrong:" + s.singular_note)};
}

Outcome c2_isothermal() {
  const double w = sweep().isothermal;
  return {w < 1e-10, "max(|F|, |E-G|)/max(E,G) " + sci(w) + " < 1e-10"};
}

Outcome c3_closed_forms() {
  double enneper = 0, quintic = 0, quintic_literal = 0;
  const ParamGrid grid = ParamGrid::square(2.0, 41);
  for (double w : kOmegas) {
    const auto s3 = make_surface(3, w);
    const auto s5 = make_surface(5, w);
    for (int j = 0; j < grid.nv; ++j) {
      for (int i = 0; i < grid.nu; ++i) {
        const ParamPoint p = grid.at(i, j);
        const double u = p.u, v = p.v;
        const Vec3 e(-(u * u * u - 3 * u * v * v) + w * u, -(v * v * v - 3 * v * u * u) + w * v,
                     std::sqrt(3 * w) * (u * u - v * v));
        enneper = std::max(enneper, rel(eval_surface(s3, p), e));
        // Quintic closed form exactly as printed.
        const Vec3 q(-(std::pow(u, 5) - 10 * u * u * u * v * v + 5 * u * std::pow(v, 4)) + w * u * (u * u - 3 * v * v),
                     -(std::pow(v, 5) - 10 * v * v * v * u * u + 5 * v * std::pow(u, 4)) + w * v * (v * v - 3 * u * u),
                     std::sqrt(15 * w) / 2 * (std::pow(u, 4) - 6 * u * u * v * v + std::pow(v, 4)));
        // The printed Y carries the opposite sign, i.e. it is r(u, -v): same surface, mirrored parameter.
        quintic = std::max(quintic, rel(eval_surface(s5, {u, -v}), q));
        quintic_literal = std::max(quintic_literal, rel(eval_surface(s5, p), q));
      }
    }
  }
  return {enneper < 1e-12 && quintic < 1e-12,
          "enneper " + sci(enneper) + ", quintic vs printed form at (u,-v) " + sci(quintic) +
              " < 1e-12 (literal same-parameter comparison " + sci(quintic_literal) + ", Y sign flipped)"};
}

Outcome c4_cauchy_riemann() {
  const double w = sweep().cauchy_riemann;
  return {w < 1e-12, "max residual " + sci(w) + " < 1e-12"};
}

Outcome c5_isometry() {
  const Sweep& s = sweep();
  return {s.isometry_form < 1e-9 && s.isometry_gaussian < 1e-8,
          "first form " + sci(s.isometry_form) + " < 1e-09, K " + sci(s.isometry_gaussian) + " < 1e-08"};
}

Outcome c6_symmetries() {
  double worst = 0;
  std::size_t cases = 0;
  const ParamGrid grid = ParamGrid::square(2.0, 41);
  for (int n = kMinDegree; n <= kMaxDegree; ++n) {
    for (double w : kOmegas) {
      const auto spec = make_surface(n, w);
      for (const auto& c : expected_symmetries(classify(n))) {
        worst = std::max(worst, verify_symmetry(spec, c, grid));
        ++cases;
      }
    }
  }
  return {worst < 1e-12, std::to_string(cases) + " cases, max residual " + sci(worst) + " < 1e-12"};
}

Outcome c7_lines() {
  double residual = 0, angle = 0, z = 0;
  for (int n : {3, 7, 11}) {
    const auto rep = check_straight_lines(make_surface(n, 1.0), 101);
    for (const LineFit* f : {&rep.diagonal, &rep.anti_diagonal}) {
      residual = std::max(residual, f->residual);
      z = std::max(z, f->max_abs_z / f->scale);
    }
    angle = std::max(angle, std::abs(rep.angle - std::numbers::pi / 2));
  }
  return {residual < 1e-10 && angle < 1e-10 && z < 1e-12,
          "collinearity " + sci(residual) + " < 1e-10, |angle-90deg| " + sci(angle) + " rad < 1e-10, |z|/scale " +
              sci(z) + " < 1e-12"};
}

Outcome c8_self_intersections() {
  const auto spec = make_surface(5, 1.0);
  SelfIntersectionOptions opts;
  opts.domain = DomainRect::square(4.0);
  opts.grid_res = 128;
  const auto res = find_self_intersections(spec, SurfaceSelector::base(), opts);
  const auto cases = expected_symmetries(classify(5));
  const PlaneCheck check = hits_on_symmetry_planes(res.hits, cases, 1e-6);
  const double worst = check.worst ? check.worst->plane_distance : 0.0;

  bool control_fails = false;
  if (!res.hits.empty()) {
    std::vector<SelfIntersectionHit> displaced{res.hits[res.hits.size() / 2]};
    const Vec3 p = displaced[0].position;
    // Push the point well off every one of the four planes.
    displaced[0].position = p + 0.1 * std::max(1.0, p.norm()) * Vec3(1.0, 0.35, 0.0);
    if (nearest_plane_distance(displaced[0].position, cases) > 1e-6) {
      control_fails = !hits_on_symmetry_planes(displaced, cases, 1e-6).ok;
    }
  }
  return {!res.hits.empty() && check.ok && control_fails,
          std::to_string(res.hits.size()) + " hits, worst plane distance " + sci(worst) +
              " < 1e-06, displaced control " + (control_fails ? "rejected" : "NOT rejected")};
}

Outcome c9_oracles() {
  double worst = 0;
  std::size_t points = 0;
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      const ParamPoint p{-2.0 + 4.0 * a / 9.0, -2.0 + 4.0 * b / 9.0};
      ++points;
      const auto table = pq_eval_recurrence(16, p);
      for (int n = 0; n <= 16; ++n) {
        const double scale = std::pow(std::max({1.0, std::abs(p.u), std::abs(p.v)}), n);
        const PQValue d = pq_eval_direct(n, p);
        const std::complex<double> c = oracle::complex_power(n, p.u, p.v);
        for (double e : {d.p - table[n].p, d.q - table[n].q, d.p - c.real(), d.q - c.imag(), table[n].p - c.real(),
                         table[n].q - c.imag()}) {
          worst = std::max(worst, std::abs(e) / scale);
        }
      }
    }
  }
  bool identity = true;
  std::size_t pairs = 0;
  for (int n = 0; n <= 30; ++n) {
    const auto row = oracle::pascal_row(n);
    const auto next = oracle::pascal_row(n + 1);
    for (int k = 0; 2 * k + 1 <= n + 1; ++k) {
      const std::int64_t lhs = row[2 * k] + (2 * k + 1 <= n ? row[2 * k + 1] : 0);
      identity = identity && binomial_identity_holds(n, k) && lhs == next[2 * k + 1];
      ++pairs;
    }
  }
  return {worst < 1e-12 && identity, "3-way max relative diff " + sci(worst) + " < 1e-12 over " +
                                         std::to_string(points) + " points, n<=16; binomial identity " +
                                         (identity ? "exact" : "BROKEN") + " for " + std::to_string(pairs) +
                                         " (n,k), n<=30"};
}

// Independent of the analytic jets: differences of point evaluations only.
double fd_error(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint p) {
  const auto r = [&](double u, double v) { return eval(spec, sel, {u, v}); };
  const double m = std::max({1.0, std::abs(p.u), std::abs(p.v)});
  const double h1 = 1e-5 * m, h2 = 1e-4 * m;
  const SurfaceJet jet = surface_jet(spec, sel, p);
  const Vec3 du = (r(p.u + h1, p.v) - r(p.u - h1, p.v)) / (2 * h1);
  const Vec3 dv = (r(p.u, p.v + h1) - r(p.u, p.v - h1)) / (2 * h1);
  const Vec3 c = r(p.u, p.v);
  const Vec3 duu = (r(p.u + h2, p.v) - 2 * c + r(p.u - h2, p.v)) / (h2 * h2);
  const Vec3 dvv = (r(p.u, p.v + h2) - 2 * c + r(p.u, p.v - h2)) / (h2 * h2);
  const Vec3 duv =
      (r(p.u + h2, p.v + h2) - r(p.u + h2, p.v - h2) - r(p.u - h2, p.v + h2) + r(p.u - h2, p.v - h2)) /
      (4 * h2 * h2);
  const auto e = [](const Vec3& analytic, const Vec3& numeric) {
    return (analytic - numeric).cwiseAbs().maxCoeff() / std::max(1.0, analytic.cwiseAbs().maxCoeff());
  };
  return std::max({e(jet.d_u, du), e(jet.d_v, dv), e(jet.d_uu, duu), e(jet.d_uv, duv), e(jet.d_vv, dvv)});
}

Outcome c10_jets() {
  auto gen = oracle::rng();
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double low = 0, high = 0;
  const SurfaceSelector selectors[] = {SurfaceSelector::base(), SurfaceSelector::conjugate(),
                                       SurfaceSelector::family(std::numbers::pi / 5)};
  for (int n = kMinDegree; n <= kMaxDegree; ++n) {
    const auto spec = make_surface(n, 1.0);
    for (int k = 0; k < 25; ++k) {
      const ParamPoint p{coord(gen), coord(gen)};
      for (const auto& sel : selectors) {
        double& slot = n >= 10 ? high : low;
        slot = std::max(slot, fd_error(spec, sel, p));
      }
    }
  }
  return {low < 1e-6 && high < 1e-5,
          "n<10: " + sci(low) + " < 1e-06, n>=10: " + sci(high) + " < 1e-05 (25 points/degree, 3 selectors)"};
}

std::string obj_text(const Mesh& m) {
  std::ostringstream os;
  write_obj(m, os);
  return os.str();
}

std::string ply_text(const Mesh& m) {
  std::ostringstream os;
  write_ply(m, os);
  return os.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c11_mesh() {
  bool counts = true;
  const auto s7 = make_surface(7, 1.0);
  for (int nu : {1, 4, 17, 64})
    for (int nv : {1, 9, 64}) {
      const Mesh m = tessellate(s7, SurfaceSelector::base(), DomainRect::square(1.0), nu, nv, false);
      counts = counts && m.vertices.size() == std::size_t(nu + 1) * (nv + 1) && m.faces.size() == 2u * nu * nv;
      for (const auto& f : m.faces)
        for (auto idx : f) counts = counts && idx < m.vertices.size();
    }

  const auto s3 = make_surface(3, 1.0);
  const DomainRect fig = DomainRect::square(4.0);
  const auto frames = family_frames(s3, default_frame_schedule(), fig, 64, 64);
  const Mesh base = tessellate(s3, SurfaceSelector::base(), fig, 64, 64, false);
  bool frame0 = frames.size() == 6 && frames[0].mesh.faces == base.faces &&
                frames[0].mesh.vertices.size() == base.vertices.size();
  for (std::size_t i = 0; frame0 && i < base.vertices.size(); ++i)
    frame0 = std::memcmp(frames[0].mesh.vertices[i].data(), base.vertices[i].data(), 3 * sizeof(double)) == 0;

  const Mesh g1 = tessellate(s3, SurfaceSelector::base(), DomainRect::square(1.0), 4, 4, false);
  const Mesh g2 = tessellate(s3, SurfaceSelector::base(), DomainRect::square(1.0), 4, 4, false);
  const std::filesystem::path dir = MINSURF_GOLDEN_DIR;
  const bool golden = obj_text(g1) == obj_text(g2) && ply_text(g1) == ply_text(g2) &&
                      obj_text(g1) == slurp(dir / "enneper_n3_w1_4x4.obj") &&
                      ply_text(g1) == slurp(dir / "enneper_n3_w1_4x4.ply");
  return {counts && frame0 && golden, std::string("counts ") + (counts ? "ok" : "WRONG") + ", frame 0 " +
                                          (frame0 ? "bitwise equal to base" : "DIFFERS") + ", golden OBJ/PLY " +
                                          (golden ? "byte-stable" : "CHANGED")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "minimality", c1_minimality},
      {2, "isothermality", c2_isothermal},
      {3, "closed-form equivalence", c3_closed_forms},
      {4, "conjugacy", c4_cauchy_riemann},
      {5, "family isometry", c5_isometry},
      {6, "symmetries", c6_symmetries},
      {7, "straight lines", c7_lines},
      {8, "self-intersections on planes", c8_self_intersections},
      {9, "oracle equivalence", c9_oracles},
      {10, "jets vs finite differences", c10_jets},
      {11, "mesh contract", c11_mesh},
  };
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed, criteria.size(), secs);
  return failed == 0 ? 0 : 1;
}
