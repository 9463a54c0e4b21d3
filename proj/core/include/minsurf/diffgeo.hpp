#pragma once

#include "minsurf/surface_family.hpp"
#include "minsurf/types.hpp"

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace minsurf {

/// Normalized area-element threshold below which a point counts as a branch point.
inline constexpr double kSingularityEpsilon = 1e-14;

struct FundamentalForms {
  double e = 0.0, f = 0.0, g = 0.0;   // first form
  double l = 0.0, m = 0.0, nn = 0.0;  // second form (zero from first_form)
  double area_element = 0.0;          // sqrt(EG - F^2), clamped at 0
};

struct CurvatureReport {
  double mean = 0.0;      ///< H; NaN when singular
  double gaussian = 0.0;  ///< K; NaN when singular
  Vec3 unit_normal = Vec3::Zero();
  bool singular = false;
  /// |EN - 2FM + GL| / ((E + G) sqrt(L^2 + 2M^2 + N^2)). For a conformal
  /// parameterization this is |H| / sqrt(k1^2 + k2^2), dimensionless. 0 at
  /// planar points (second form zero) and at singular points.
  double mean_residual = 0.0;
  FundamentalForms forms;
};

FundamentalForms first_form(const SurfaceJet& jet);
CurvatureReport curvatures(const SurfaceJet& jet);

/// EG - F^2 <= eps (E + G)^2, which includes E = G = 0.
bool is_singular(const FundamentalForms& forms);

struct IsothermalResidual {
  double f_rel = 0.0;   ///< |F| / max(E, G, eps)
  double eg_rel = 0.0;  ///< |E - G| / max(E, G, eps)
  bool singular = false;
};

IsothermalResidual isothermal_residual(const SurfaceSpec& spec, const SurfaceSelector& sel,
                                       ParamPoint pt);

/// Per coordinate X, Y, Z: max(|c_u - cs_v|, |c_v + cs_u|) / max(1, |c_u|, |c_v|, |cs_u|, |cs_v|).
std::array<double, 3> cauchy_riemann_residual(const SurfaceSpec& spec, ParamPoint pt);

struct IsometryReport {
  double max_form_deviation = 0.0;      ///< max over E, F, G of |X_t - X_0| / max(E_0, G_0)
  double max_gaussian_deviation = 0.0;  ///< max |K_t - K_0| / max(|K_0|, |K_t|)
  std::size_t checked = 0;
  std::size_t singular_skipped = 0;
  ParamPoint worst_form_point;
  ParamPoint worst_gaussian_point;
};

/// Compares C_t's first fundamental form and Gaussian curvature with t = 0 at
/// every non-singular grid point.
IsometryReport family_isometry_check(const SurfaceSpec& spec, double t, const ParamGrid& grid);

/// Default central-difference step for a parameter point.
double default_fd_step(ParamPoint pt);

/// Max relative error between analytic partials and central differences.
/// First partials are differenced from positions, second partials from the
/// analytic first partials. Each partial is normalized by max(1, |analytic vector|).
double fd_jet_check(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint pt, double h);

// --- Certification sweeps --------------------------------------------------

enum class ResidualKind { Minimality, IsothermalF, IsothermalEG, CauchyRiemann, IsometryForm, IsometryGaussian, JetFd };

const char* to_string(ResidualKind kind);

struct ResidualRecord {
  SurfaceSelector selector;
  ParamPoint pt;
  ResidualKind kind = ResidualKind::Minimality;
  double value = 0.0;
};

/// Writes one line per record: "<selector> <t> <u> <v> <kind> <value>".
/// An empty record list writes nothing (pass).
void write_verification_report(std::span<const ResidualRecord> records, std::ostream& out);

struct SuiteTolerances {
  double minimality = 1e-8;
  double isothermal = 1e-10;
  double cauchy_riemann = 1e-12;
  double isometry_form = 1e-9;
  double isometry_gaussian = 1e-8;
  /// Jet-vs-FD tolerance; degrees >= 10 use jet_fd_high_degree.
  double jet_fd = 1e-6;
  double jet_fd_high_degree = 1e-5;
};

struct SuiteSummary {
  std::string name;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  SurfaceSelector worst_selector;
  ParamPoint worst_point;
  bool passed() const { return worst < tolerance; }
};

struct VerificationResult {
  std::vector<SuiteSummary> suites;
  std::vector<ResidualRecord> failures;
  /// Distinct grid points flagged singular (shared by every selector).
  std::vector<ParamPoint> singular_points;
  bool passed() const;
};

/// The default selector set: base, conjugate and the six deformation phases.
std::vector<SurfaceSelector> default_selectors();

/// Runs minimality, isothermality, Cauchy-Riemann, family isometry and
/// jet-vs-FD suites for `selectors` over `grid`.
VerificationResult verify_surface(const SurfaceSpec& spec, std::span<const SurfaceSelector> selectors,
                                  const ParamGrid& grid, const SuiteTolerances& tol = {});

}  // namespace minsurf
