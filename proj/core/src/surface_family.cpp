#include "minsurf/surface_family.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <vector>

namespace minsurf {

SurfaceSpec make_surface(int n, double omega) {
  if (n < 3) throw Error(ErrorCode::DegreeTooLow, "degree must be >= 3, got " + std::to_string(n));
  if (!std::isfinite(omega)) throw Error(ErrorCode::InvalidArgument, "omega must be finite");
  if (omega < 0.0) throw Error(ErrorCode::NegativeOmega, "omega must be >= 0");
  const double nn = n;
  const double zc = 2.0 * std::sqrt(nn * (nn - 2.0) * omega) / (nn - 1.0);
  return SurfaceSpec(n, omega, zc);
}

double SurfaceSelector::reported_phase() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(phase, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

std::string SurfaceSelector::label() const {
  switch (variant) {
    case Variant::Base: return "base";
    case Variant::Conjugate: return "conjugate";
    case Variant::Family: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "family(t=%.6g)", reported_phase());
      return buf;
    }
  }
  return "unknown";
}

Vec3 blend(const Vec3& a, const Vec3& b, double cos_t, double sin_t) {
  if (sin_t == 0.0) return cos_t * a;
  if (cos_t == 0.0) return sin_t * b;
  return cos_t * a + sin_t * b;
}

namespace {

// Degrees 0..n; the surface never needs more.
class Sweep {
 public:
  Sweep(int n, ParamPoint pt) : table_(static_cast<std::size_t>(n) + 1) { pq_sweep(pt, table_); }

  PQJet jet(int k) const {
    if (k < 0) return zero_jet(k);
    return pq_jet_from_table(k, table_);
  }
  PQValue value(int k) const {
    if (k < 0) return {k, 0.0, 0.0};
    return table_[static_cast<std::size_t>(k)];
  }

 private:
  static PQJet zero_jet(int k) {
    PQJet j;
    j.degree = k;
    j.p = 0.0;
    return j;
  }
  std::vector<PQValue> table_;
};

// One coordinate as a P-part and Q-part combination: a P_i + b Q_j.
struct Term {
  double coef;
  bool is_p;
  int degree;
};

void accumulate(const Sweep& sw, const Term& t, int axis, SurfaceJet& jet) {
  if (t.coef == 0.0 || t.degree < 0) return;
  const PQJet j = sw.jet(t.degree);
  const double c = t.coef;
  if (t.is_p) {
    jet.position[axis] += c * j.p;
    jet.d_u[axis] += c * j.p_u;
    jet.d_v[axis] += c * j.p_v;
    jet.d_uu[axis] += c * j.p_uu;
    jet.d_uv[axis] += c * j.p_uv;
    jet.d_vv[axis] += c * j.p_vv;
  } else {
    jet.position[axis] += c * j.q;
    jet.d_u[axis] += c * j.q_u;
    jet.d_v[axis] += c * j.q_v;
    jet.d_uu[axis] += c * j.q_uu;
    jet.d_uv[axis] += c * j.q_uv;
    jet.d_vv[axis] += c * j.q_vv;
  }
}

SurfaceJet base_jet(const SurfaceSpec& spec, const Sweep& sw) {
  const int n = spec.degree();
  const double w = spec.omega();
  SurfaceJet jet;
  accumulate(sw, {-1.0, true, n}, 0, jet);
  accumulate(sw, {w, true, n - 2}, 0, jet);
  accumulate(sw, {1.0, false, n}, 1, jet);
  accumulate(sw, {w, false, n - 2}, 1, jet);
  accumulate(sw, {spec.z_coefficient(), true, n - 1}, 2, jet);
  return jet;
}

SurfaceJet conjugate_jet(const SurfaceSpec& spec, const Sweep& sw) {
  const int n = spec.degree();
  const double w = spec.omega();
  SurfaceJet jet;
  accumulate(sw, {-1.0, false, n}, 0, jet);
  accumulate(sw, {w, false, n - 2}, 0, jet);
  accumulate(sw, {-1.0, true, n}, 1, jet);
  accumulate(sw, {-w, true, n - 2}, 1, jet);
  accumulate(sw, {spec.z_coefficient(), false, n - 1}, 2, jet);
  return jet;
}

SurfaceJet blend_jets(const SurfaceJet& a, const SurfaceJet& b, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {blend(a.position, b.position, c, s), blend(a.d_u, b.d_u, c, s),
          blend(a.d_v, b.d_v, c, s),           blend(a.d_uu, b.d_uu, c, s),
          blend(a.d_uv, b.d_uv, c, s),         blend(a.d_vv, b.d_vv, c, s)};
}

}  // namespace

SurfacePoint eval_surface(const SurfaceSpec& spec, ParamPoint pt) {
  const Sweep sw(spec.degree(), pt);
  const int n = spec.degree();
  const double w = spec.omega();
  const PQValue pn = sw.value(n), pn1 = sw.value(n - 1), pn2 = sw.value(n - 2);
  return {-pn.p + w * pn2.p, pn.q + w * pn2.q, spec.z_coefficient() * pn1.p};
}

SurfacePoint eval_conjugate(const SurfaceSpec& spec, ParamPoint pt) {
  const Sweep sw(spec.degree(), pt);
  const int n = spec.degree();
  const double w = spec.omega();
  const PQValue pn = sw.value(n), pn1 = sw.value(n - 1), pn2 = sw.value(n - 2);
  return {-pn.q + w * pn2.q, -pn.p - w * pn2.p, spec.z_coefficient() * pn1.q};
}

SurfacePoint eval_family(const SurfaceSpec& spec, double t, ParamPoint pt) {
  return blend(eval_surface(spec, pt), eval_conjugate(spec, pt), std::cos(t), std::sin(t));
}

SurfacePoint eval(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint pt) {
  switch (sel.variant) {
    case Variant::Base: return eval_surface(spec, pt);
    case Variant::Conjugate: return eval_conjugate(spec, pt);
    case Variant::Family: return eval_family(spec, sel.phase, pt);
  }
  return eval_surface(spec, pt);
}

ConjugatePairJet conjugate_pair_jet(const SurfaceSpec& spec, ParamPoint pt) {
  const Sweep sw(spec.degree(), pt);
  return {base_jet(spec, sw), conjugate_jet(spec, sw)};
}

SurfaceJet surface_jet(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint pt) {
  const Sweep sw(spec.degree(), pt);
  switch (sel.variant) {
    case Variant::Base: return base_jet(spec, sw);
    case Variant::Conjugate: return conjugate_jet(spec, sw);
    case Variant::Family: return blend_jets(base_jet(spec, sw), conjugate_jet(spec, sw), sel.phase);
  }
  return base_jet(spec, sw);
}

namespace closed_form {

SurfacePoint enneper(double omega, ParamPoint pt) {
  const double u = pt.u, v = pt.v;
  return {-(u * u * u - 3.0 * u * v * v) + omega * u,
          -(v * v * v - 3.0 * v * u * u) + omega * v,
          std::sqrt(3.0 * omega) * (u * u - v * v)};
}

SurfacePoint quintic(double omega, ParamPoint pt) {
  const double u = pt.u, v = pt.v;
  const double u2 = u * u, v2 = v * v;
  return {-(u2 * u2 * u - 10.0 * u2 * u * v2 + 5.0 * u * v2 * v2) + omega * u * (u2 - 3.0 * v2),
          -(v2 * v2 * v - 10.0 * v2 * v * u2 + 5.0 * v * u2 * u2) + omega * v * (v2 - 3.0 * u2),
          std::sqrt(15.0 * omega) / 2.0 * (u2 * u2 - 6.0 * u2 * v2 + v2 * v2)};
}

}  // namespace closed_form

}  // namespace minsurf
