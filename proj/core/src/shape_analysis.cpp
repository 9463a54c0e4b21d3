#include "minsurf/shape_analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <unordered_map>

namespace minsurf {

int SymmetryClass::degree() const {
  switch (label) {
    case SymmetryLabel::FourKMinus1: return 4 * k - 1;
    case SymmetryLabel::FourK: return 4 * k;
    case SymmetryLabel::FourKPlus1: return 4 * k + 1;
    case SymmetryLabel::FourKPlus2: return 4 * k + 2;
  }
  return 0;
}

std::string SymmetryClass::name() const {
  switch (label) {
    case SymmetryLabel::FourKMinus1: return "4k-1";
    case SymmetryLabel::FourK: return "4k";
    case SymmetryLabel::FourKPlus1: return "4k+1";
    case SymmetryLabel::FourKPlus2: return "4k+2";
  }
  return "?";
}

SymmetryClass classify(int n) {
  if (n < 3) throw Error(ErrorCode::DegreeTooLow, "degree must be >= 3, got " + std::to_string(n));
  switch (n % 4) {
    case 3: return {SymmetryLabel::FourKMinus1, (n + 1) / 4};
    case 0: return {SymmetryLabel::FourK, n / 4};
    case 1: return {SymmetryLabel::FourKPlus1, (n - 1) / 4};
    default: return {SymmetryLabel::FourKPlus2, (n - 2) / 4};
  }
}

std::string to_string(SymmetryPlane plane) {
  switch (plane) {
    case SymmetryPlane::X0: return "X=0";
    case SymmetryPlane::Y0: return "Y=0";
    case SymmetryPlane::Z0: return "Z=0";
    case SymmetryPlane::XeqY: return "X=Y";
    case SymmetryPlane::XeqNegY: return "X=-Y";
  }
  return "?";
}

std::string to_string(Involution inv) {
  switch (inv) {
    case Involution::NegU: return "(-u,v)";
    case Involution::NegV: return "(u,-v)";
    case Involution::NegUV: return "(-u,-v)";
    case Involution::Swap: return "(v,u)";
    case Involution::NegSwap: return "(-v,-u)";
  }
  return "?";
}

ParamPoint apply(Involution inv, ParamPoint pt) {
  switch (inv) {
    case Involution::NegU: return {-pt.u, pt.v};
    case Involution::NegV: return {pt.u, -pt.v};
    case Involution::NegUV: return {-pt.u, -pt.v};
    case Involution::Swap: return {pt.v, pt.u};
    case Involution::NegSwap: return {-pt.v, -pt.u};
  }
  return pt;
}

Vec3 reflect(SymmetryPlane plane, const Vec3& p) {
  switch (plane) {
    case SymmetryPlane::X0: return {-p.x(), p.y(), p.z()};
    case SymmetryPlane::Y0: return {p.x(), -p.y(), p.z()};
    case SymmetryPlane::Z0: return {p.x(), p.y(), -p.z()};
    case SymmetryPlane::XeqY: return {p.y(), p.x(), p.z()};
    case SymmetryPlane::XeqNegY: return {-p.y(), -p.x(), p.z()};
  }
  return p;
}

Vec3 plane_normal(SymmetryPlane plane) {
  constexpr double h = std::numbers::sqrt2 / 2.0;
  switch (plane) {
    case SymmetryPlane::X0: return Vec3::UnitX();
    case SymmetryPlane::Y0: return Vec3::UnitY();
    case SymmetryPlane::Z0: return Vec3::UnitZ();
    case SymmetryPlane::XeqY: return {h, -h, 0.0};
    case SymmetryPlane::XeqNegY: return {h, h, 0.0};
  }
  return Vec3::Zero();
}

std::vector<SymmetryCase> expected_symmetries(const SymmetryClass& cls) {
  using P = SymmetryPlane;
  using I = Involution;
  switch (cls.label) {
    case SymmetryLabel::FourKMinus1: return {{P::X0, I::NegU}, {P::Y0, I::NegV}};
    case SymmetryLabel::FourK: return {{P::Z0, I::NegUV}, {P::Y0, I::NegV}};
    case SymmetryLabel::FourKPlus1:
      return {{P::X0, I::NegU}, {P::Y0, I::NegV}, {P::XeqNegY, I::Swap}, {P::XeqY, I::NegSwap}};
    case SymmetryLabel::FourKPlus2: return {{P::Z0, I::NegUV}, {P::Y0, I::NegV}};
  }
  return {};
}

double verify_symmetry(const SurfaceSpec& spec, const SymmetryCase& c, const ParamGrid& grid) {
  grid.validate();
  const SymmetryClass cls = classify(spec.degree());
  const auto cases = expected_symmetries(cls);
  if (std::find(cases.begin(), cases.end(), c) == cases.end()) {
    throw Error(ErrorCode::ClassMismatch, "symmetry " + to_string(c.plane) + " via " +
                                              to_string(c.involution) + " is not expected for class " +
                                              cls.name());
  }
  double worst = 0.0;
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const ParamPoint pt = grid.at(i, j);
      const Vec3 r = eval_surface(spec, pt);
      const Vec3 mirrored = eval_surface(spec, c.involute(pt));
      const double res = (c.reflect(r) - mirrored).norm() / std::max(1.0, r.norm());
      worst = std::max(worst, res);
    }
  }
  return worst;
}

namespace {

LineFit fit_chord(const std::vector<Vec3>& pts) {
  LineFit fit;
  fit.anchor = pts.front();
  const Vec3 chord = pts.back() - pts.front();
  const double len = chord.norm();
  fit.direction = len > 0.0 ? Vec3(chord / len) : Vec3::Zero();
  double worst = 0.0;
  for (const Vec3& p : pts) {
    const Vec3 rel = p - fit.anchor;
    const Vec3 off = rel - rel.dot(fit.direction) * fit.direction;
    worst = std::max(worst, off.norm());
    fit.max_abs_z = std::max(fit.max_abs_z, std::abs(p.z()));
    fit.scale = std::max(fit.scale, p.norm());
  }
  fit.residual = len > 0.0 ? worst / len : worst;
  return fit;
}

}  // namespace

LineReport check_straight_lines(const SurfaceSpec& spec, int samples) {
  const SymmetryClass cls = classify(spec.degree());
  if (cls.label != SymmetryLabel::FourKMinus1) {
    throw Error(ErrorCode::ClassMismatch,
                "straight-line check applies to class 4k-1 only, degree is in class " + cls.name());
  }
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "straight-line check needs >= 2 samples");
  std::vector<Vec3> diag, anti;
  diag.reserve(static_cast<std::size_t>(samples));
  anti.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = lattice_coordinate(-2.0, 2.0, k, samples - 1);
    diag.push_back(eval_surface(spec, {t, t}));
    anti.push_back(eval_surface(spec, {t, -t}));
  }
  LineReport rep;
  rep.diagonal = fit_chord(diag);
  rep.anti_diagonal = fit_chord(anti);
  rep.direction_dot = rep.diagonal.direction.dot(rep.anti_diagonal.direction);
  rep.angle = std::acos(std::clamp(rep.direction_dot, -1.0, 1.0));
  return rep;
}

double nearest_plane_distance(const Vec3& p, std::span<const SymmetryCase> cases) {
  double best = std::numeric_limits<double>::infinity();
  for (const SymmetryCase& c : cases) best = std::min(best, std::abs(p.dot(plane_normal(c.plane))));
  return best / std::max(1.0, p.norm());
}

RefinedPair refine_pair(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint a, ParamPoint b,
                        double stop_below, int max_iterations) {
  RefinedPair out{a, b, 0.0, 0.0, 0};
  auto separation = [&](ParamPoint pa, ParamPoint pb) {
    return (eval(spec, sel, pa) - eval(spec, sel, pb)).norm();
  };
  out.initial_separation = separation(a, b);
  out.separation = out.initial_separation;
  for (int it = 0; it < max_iterations && out.separation >= stop_below && out.separation > 0.0; ++it) {
    const SurfaceJet ja = surface_jet(spec, sel, out.a);
    const SurfaceJet jb = surface_jet(spec, sel, out.b);
    Eigen::Matrix<double, 3, 4> jac;
    jac.col(0) = ja.d_u;
    jac.col(1) = ja.d_v;
    jac.col(2) = -jb.d_u;
    jac.col(3) = -jb.d_v;
    const Vec3 residual = ja.position - jb.position;
    // Minimum-norm step: the system is rank deficient along the intersection curve.
    const Eigen::Vector4d step = -jac.completeOrthogonalDecomposition().solve(residual);
    if (!step.allFinite()) break;

    bool accepted = false;
    for (double alpha = 1.0; alpha >= 1e-8; alpha *= 0.5) {
      const ParamPoint na{out.a.u + alpha * step[0], out.a.v + alpha * step[1]};
      const ParamPoint nb{out.b.u + alpha * step[2], out.b.v + alpha * step[3]};
      const double s = separation(na, nb);
      if (s < out.separation) {
        out.a = na;
        out.b = nb;
        out.separation = s;
        accepted = true;
        break;
      }
    }
    out.iterations = it + 1;
    if (!accepted) break;
  }
  return out;
}

namespace {

struct CellKey {
  std::int64_t x, y, z;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 0x9E3779B97F4A7C15ULL;
    h ^= static_cast<std::uint64_t>(k.y) * 0xC2B2AE3D27D4EB4FULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(k.z) * 0x165667B19E3779F9ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

bool position_less(const SelfIntersectionHit& a, const SelfIntersectionHit& b) {
  if (a.position.x() != b.position.x()) return a.position.x() < b.position.x();
  if (a.position.y() != b.position.y()) return a.position.y() < b.position.y();
  return a.position.z() < b.position.z();
}

}  // namespace

SelfIntersectionResult find_self_intersections(const SurfaceSpec& spec, const SurfaceSelector& sel,
                                               const SelfIntersectionOptions& opts) {
  opts.domain.validate();
  if (opts.grid_res < 32) throw Error(ErrorCode::InvalidArgument, "self-intersection grid_res must be >= 32");

  const ParamGrid grid{opts.domain, opts.grid_res + 1, opts.grid_res + 1};
  std::vector<ParamPoint> params;
  std::vector<Vec3> pos;
  params.reserve(grid.size());
  pos.reserve(grid.size());
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      params.push_back(grid.at(i, j));
      pos.push_back(eval(spec, sel, params.back()));
      lo = lo.cwiseMin(pos.back());
      hi = hi.cwiseMax(pos.back());
    }
  }

  SelfIntersectionResult res;
  res.delta_param = opts.delta_param.value_or(0.05 * opts.domain.width());
  res.delta_pos = opts.delta_pos.value_or(1e-3 * (hi - lo).norm());
  if (!(res.delta_param > 0.0) || !(res.delta_pos > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "self-intersection tolerances must be > 0");
  }

  const double cell = 4.0 * res.delta_pos;
  auto key_of = [&](const Vec3& p) {
    return CellKey{static_cast<std::int64_t>(std::floor(p.x() / cell)),
                   static_cast<std::int64_t>(std::floor(p.y() / cell)),
                   static_cast<std::int64_t>(std::floor(p.z() / cell))};
  };
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells;
  for (std::size_t i = 0; i < pos.size(); ++i) cells[key_of(pos[i])].push_back(i);

  // Each sample keeps its nearest partner (in space) among samples in the same
  // or adjacent cells whose parameters are more than delta_param apart.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const CellKey k = key_of(pos[i]);
    std::size_t best = i;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it = cells.find({k.x + dx, k.y + dy, k.z + dz});
          if (it == cells.end()) continue;
          for (std::size_t j : it->second) {
            if (j == i || distance(params[i], params[j]) <= res.delta_param) continue;
            const double d = (pos[i] - pos[j]).norm();
            if (d < best_d) {
              best_d = d;
              best = j;
            }
          }
        }
      }
    }
    if (best != i) pairs.emplace_back(std::min(i, best), std::max(i, best));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  res.candidate_pairs = pairs.size();

  const auto cases = expected_symmetries(classify(spec.degree()));
  const double accept_below = res.delta_pos * 1e-3;
  std::vector<SelfIntersectionHit> raw;
  for (const auto& [i, j] : pairs) {
    const RefinedPair rp = refine_pair(spec, sel, params[i], params[j], opts.refine_stop, opts.max_iterations);
    if (!(rp.separation < accept_below)) continue;
    if (distance(rp.a, rp.b) <= res.delta_param) continue;
    if (!opts.domain.contains(rp.a) || !opts.domain.contains(rp.b)) continue;
    SelfIntersectionHit hit;
    hit.pt_a = rp.a;
    hit.pt_b = rp.b;
    hit.position = 0.5 * (eval(spec, sel, rp.a) + eval(spec, sel, rp.b));
    hit.separation = rp.separation;
    hit.plane_distance = nearest_plane_distance(hit.position, cases);
    raw.push_back(hit);
  }

  std::sort(raw.begin(), raw.end(), position_less);
  for (const SelfIntersectionHit& h : raw) {
    const bool dup = std::any_of(res.hits.begin(), res.hits.end(), [&](const SelfIntersectionHit& kept) {
      return (kept.position - h.position).norm() < res.delta_pos;
    });
    if (!dup) res.hits.push_back(h);
  }
  return res;
}

PlaneCheck hits_on_symmetry_planes(std::span<const SelfIntersectionHit> hits,
                                   std::span<const SymmetryCase> cases, double tol) {
  PlaneCheck out;
  double worst = -1.0;
  for (const SelfIntersectionHit& h : hits) {
    const double d = nearest_plane_distance(h.position, cases);
    if (!(d < tol)) out.ok = false;
    if (d > worst || std::isnan(d)) {
      worst = d;
      out.worst = h;
      out.worst->plane_distance = d;
    }
  }
  return out;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

std::string fmt_vec(const Vec3& v) { return "(" + fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()) + ")"; }

}  // namespace

void write_analysis_report(const AnalysisReport& r, std::ostream& out) {
  out << "degree: " << r.degree << "\n";
  out << "omega: " << fmt(r.omega) << "\n";
  out << "class: " << r.cls.name() << " (k=" << r.cls.k << ")\n";
  out << "symmetries: " << r.symmetries.size() << "\n";
  for (const SymmetryResidual& s : r.symmetries) {
    out << "  plane " << to_string(s.symmetry.plane) << " via " << to_string(s.symmetry.involution)
        << " residual=" << fmt(s.residual) << "\n";
  }
  if (r.lines) {
    const LineReport& l = *r.lines;
    out << "lines:\n";
    out << "  diagonal direction=" << fmt_vec(l.diagonal.direction) << " anchor=" << fmt_vec(l.diagonal.anchor)
        << " residual=" << fmt(l.diagonal.residual) << " max_abs_z=" << fmt(l.diagonal.max_abs_z) << "\n";
    out << "  anti_diagonal direction=" << fmt_vec(l.anti_diagonal.direction)
        << " anchor=" << fmt_vec(l.anti_diagonal.anchor) << " residual=" << fmt(l.anti_diagonal.residual)
        << " max_abs_z=" << fmt(l.anti_diagonal.max_abs_z) << "\n";
    out << "  angle_rad=" << fmt(l.angle) << " angle_deg=" << fmt(l.angle * 180.0 / std::numbers::pi) << "\n";
  }
  if (r.intersections) {
    const SelfIntersectionResult& si = *r.intersections;
    out << "self_intersections: hits=" << si.hits.size() << " candidates=" << si.candidate_pairs
        << " delta_param=" << fmt(si.delta_param) << " delta_pos=" << fmt(si.delta_pos) << "\n";
    out << "  u_a v_a u_b v_b x y z separation plane_distance\n";
    for (const SelfIntersectionHit& h : si.hits) {
      out << "  " << fmt(h.pt_a.u) << " " << fmt(h.pt_a.v) << " " << fmt(h.pt_b.u) << " " << fmt(h.pt_b.v) << " "
          << fmt(h.position.x()) << " " << fmt(h.position.y()) << " " << fmt(h.position.z()) << " "
          << fmt(h.separation) << " " << fmt(h.plane_distance) << "\n";
    }
  }
  if (r.plane_check) {
    out << "planes_check: " << (r.plane_check->ok ? "pass" : "fail");
    if (r.plane_check->worst) out << " worst_plane_distance=" << fmt(r.plane_check->worst->plane_distance);
    out << "\n";
  }
}

}  // namespace minsurf
