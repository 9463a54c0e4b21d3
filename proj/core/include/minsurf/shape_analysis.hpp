#pragma once

#include "minsurf/surface_family.hpp"
#include "minsurf/types.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minsurf {

// --- Classification ---------------------------------------------------------

enum class SymmetryLabel { FourKMinus1, FourK, FourKPlus1, FourKPlus2 };

struct SymmetryClass {
  SymmetryLabel label = SymmetryLabel::FourKMinus1;
  int k = 1;

  /// The degree this class and k describe (4k-1, 4k, 4k+1 or 4k+2).
  int degree() const;
  std::string name() const;  ///< "4k-1", "4k", "4k+1", "4k+2"

  friend bool operator==(const SymmetryClass&, const SymmetryClass&) = default;
};

/// Class of degree n >= 3 by n mod 4. Throws Error(DegreeTooLow) otherwise.
SymmetryClass classify(int n);

// --- Symmetry cases ---------------------------------------------------------

enum class SymmetryPlane { X0, Y0, Z0, XeqY, XeqNegY };

/// Parameter-plane involutions: (-u,v), (u,-v), (-u,-v), (v,u), (-v,-u).
enum class Involution { NegU, NegV, NegUV, Swap, NegSwap };

std::string to_string(SymmetryPlane plane);
std::string to_string(Involution inv);

ParamPoint apply(Involution inv, ParamPoint pt);

/// Mirror image of p across the plane.
Vec3 reflect(SymmetryPlane plane, const Vec3& p);

/// Unit normal of the plane (all planes pass through the origin).
Vec3 plane_normal(SymmetryPlane plane);

struct SymmetryCase {
  SymmetryPlane plane;
  Involution involution;

  Vec3 reflect(const Vec3& p) const { return minsurf::reflect(plane, p); }
  ParamPoint involute(ParamPoint pt) const { return apply(involution, pt); }

  friend bool operator==(const SymmetryCase&, const SymmetryCase&) = default;
};

/// Symmetry planes of the base surface and the parameter involution realizing each.
std::vector<SymmetryCase> expected_symmetries(const SymmetryClass& cls);

/// max over the grid of |reflect(r(p)) - r(involution(p))| / max(1, |r(p)|).
/// Throws Error(ClassMismatch) if `c` is not expected for the surface's class.
double verify_symmetry(const SurfaceSpec& spec, const SymmetryCase& c, const ParamGrid& grid);

// --- Straight lines ---------------------------------------------------------

struct LineFit {
  Vec3 direction = Vec3::Zero();  ///< unit, oriented from first to last sample
  Vec3 anchor = Vec3::Zero();     ///< first sample
  double residual = 0.0;          ///< max distance to the chord / chord length
  double max_abs_z = 0.0;         ///< max |Z| over the samples
  double scale = 1.0;             ///< max(1, max |sample|)
};

struct LineReport {
  LineFit diagonal;       ///< r(t, t)
  LineFit anti_diagonal;  ///< r(t, -t)
  double angle = 0.0;     ///< radians between the fitted directions
  double direction_dot = 0.0;
};

/// Samples r(t, t) and r(t, -t) for t on [-2, 2]. Class 4k-1 only; otherwise
/// throws Error(ClassMismatch).
LineReport check_straight_lines(const SurfaceSpec& spec, int samples);

// --- Self-intersections -----------------------------------------------------

struct SelfIntersectionHit {
  ParamPoint pt_a;
  ParamPoint pt_b;
  SurfacePoint position = SurfacePoint::Zero();
  double separation = 0.0;
  double plane_distance = 0.0;  ///< to the nearest expected plane, / max(1, |position|)
};

struct SelfIntersectionOptions {
  DomainRect domain = DomainRect::square(1.0);
  int grid_res = 128;
  std::optional<double> delta_param;  ///< default 0.05 * domain width
  std::optional<double> delta_pos;    ///< default 1e-3 * bounding-box diagonal
  int max_iterations = 50;
  /// Refinement stops once the separation falls below this. The default keeps
  /// going until no damped step decreases it, which puts the hit midpoint on
  /// its plane to rounding level. Hits are accepted below 1e-3 * delta_pos.
  double refine_stop = 0.0;
};

struct SelfIntersectionResult {
  std::vector<SelfIntersectionHit> hits;  ///< sorted by position
  std::size_t candidate_pairs = 0;
  double delta_param = 0.0;
  double delta_pos = 0.0;
};

/// Spatial hashing of grid samples, damped Gauss-Newton refinement of close
/// pairs with separated parameters, then deduplication.
SelfIntersectionResult find_self_intersections(const SurfaceSpec& spec, const SurfaceSelector& sel,
                                               const SelfIntersectionOptions& opts);

/// Normalized distance from p to the nearest plane among the cases.
double nearest_plane_distance(const Vec3& p, std::span<const SymmetryCase> cases);

/// Damped Gauss-Newton on |r(a) - r(b)|^2 until the separation drops below
/// `stop_below`, no step decreases it, or max_iterations is reached. Steps are
/// only accepted when the separation decreases.
struct RefinedPair {
  ParamPoint a;
  ParamPoint b;
  double initial_separation = 0.0;
  double separation = 0.0;
  int iterations = 0;
};
RefinedPair refine_pair(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint a, ParamPoint b,
                        double stop_below, int max_iterations);

struct PlaneCheck {
  bool ok = true;
  std::optional<SelfIntersectionHit> worst;
};

/// True iff every hit's plane_distance (recomputed against `cases`) is below tol.
PlaneCheck hits_on_symmetry_planes(std::span<const SelfIntersectionHit> hits,
                                   std::span<const SymmetryCase> cases, double tol);

// --- Report -----------------------------------------------------------------

struct SymmetryResidual {
  SymmetryCase symmetry;
  double residual = 0.0;
};

struct AnalysisReport {
  int degree = 0;
  double omega = 0.0;
  SymmetryClass cls;
  std::vector<SymmetryResidual> symmetries;
  std::optional<LineReport> lines;
  std::optional<SelfIntersectionResult> intersections;
  std::optional<PlaneCheck> plane_check;
};

/// Structured text: classification, symmetry residuals, line report and hit table.
void write_analysis_report(const AnalysisReport& report, std::ostream& out);

}  // namespace minsurf
