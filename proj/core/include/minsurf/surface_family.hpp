#pragma once

// Degree-n polynomial minimal surfaces r(u,v), their conjugates s(u,v), and the
// associate family C_t = cos(t) r + sin(t) s.
//
//   r = (-P_n + w P_{n-2},  Q_n + w Q_{n-2},  c P_{n-1})
//   s = (-Q_n + w Q_{n-2}, -P_n - w P_{n-2},  c Q_{n-1})
//   c = 2 sqrt(n (n-2) w) / (n-1)

#include "minsurf/pq_kernel.hpp"
#include "minsurf/types.hpp"

#include <numbers>
#include <string>

namespace minsurf {

/// Validated (n, omega) pair. Immutable after construction.
class SurfaceSpec {
 public:
  int degree() const { return degree_; }
  double omega() const { return omega_; }
  double z_coefficient() const { return z_coefficient_; }

  /// omega == 0: the image collapses into the plane Z = 0.
  bool degenerate_planar() const { return omega_ == 0.0; }

 private:
  friend SurfaceSpec make_surface(int n, double omega);
  SurfaceSpec(int n, double omega, double zc) : degree_(n), omega_(omega), z_coefficient_(zc) {}

  int degree_;
  double omega_;
  double z_coefficient_;
};

/// Throws Error(DegreeTooLow) for n < 3 and Error(NegativeOmega) for omega < 0.
SurfaceSpec make_surface(int n, double omega);

enum class Variant { Base, Conjugate, Family };

struct SurfaceSelector {
  Variant variant = Variant::Base;
  double phase = 0.0;  ///< t; only meaningful for Family

  static SurfaceSelector base() { return {Variant::Base, 0.0}; }
  static SurfaceSelector conjugate() { return {Variant::Conjugate, 0.0}; }
  static SurfaceSelector family(double t) { return {Variant::Family, t}; }

  /// Phase reduced to [0, 2*pi).
  double reported_phase() const;
  std::string label() const;
};

struct SurfaceJet {
  SurfacePoint position = SurfacePoint::Zero();
  Vec3 d_u = Vec3::Zero();
  Vec3 d_v = Vec3::Zero();
  Vec3 d_uu = Vec3::Zero();
  Vec3 d_uv = Vec3::Zero();
  Vec3 d_vv = Vec3::Zero();
};

SurfacePoint eval_surface(const SurfaceSpec& spec, ParamPoint pt);
SurfacePoint eval_conjugate(const SurfaceSpec& spec, ParamPoint pt);
SurfacePoint eval_family(const SurfaceSpec& spec, double t, ParamPoint pt);
SurfacePoint eval(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint pt);

/// Position and analytic first/second partials, all assembled from one
/// recurrence sweep through the derivative rules of P_k, Q_k.
SurfaceJet surface_jet(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint pt);

/// Base and conjugate jets from a single sweep.
struct ConjugatePairJet {
  SurfaceJet base;
  SurfaceJet conjugate;
};
ConjugatePairJet conjugate_pair_jet(const SurfaceSpec& spec, ParamPoint pt);

/// cos(t) a + sin(t) b, returning a (or b) untouched when the other weight is
/// exactly zero so that t = 0 reproduces the base surface bit for bit.
Vec3 blend(const Vec3& a, const Vec3& b, double cos_t, double sin_t);

/// Hand-expanded special cases, kept independent of the P/Q machinery.
namespace closed_form {

/// Classical Enneper form (n = 3).
SurfacePoint enneper(double omega, ParamPoint pt);

/// Quintic (n = 5) in the printed convention, whose Y axis is mirrored with
/// respect to the generic construction: quintic(w, u, v) == M_y r(u, v).
SurfacePoint quintic(double omega, ParamPoint pt);

}  // namespace closed_form

/// The six phases 0, pi/10, pi/5, 3pi/10, 2pi/5, pi/2 of the r -> s deformation.
inline constexpr double kDeformationPhases[6] = {
    0.0,
    std::numbers::pi / 10.0,
    std::numbers::pi / 5.0,
    3.0 * std::numbers::pi / 10.0,
    2.0 * std::numbers::pi / 5.0,
    std::numbers::pi / 2.0,
};

}  // namespace minsurf
