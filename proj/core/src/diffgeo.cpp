#include "minsurf/diffgeo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace minsurf {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double rel_max(const Vec3& analytic, const Vec3& approx) {
  const double scale = std::max(1.0, analytic.cwiseAbs().maxCoeff());
  return (analytic - approx).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

FundamentalForms first_form(const SurfaceJet& jet) {
  FundamentalForms ff;
  ff.e = jet.d_u.dot(jet.d_u);
  ff.f = jet.d_u.dot(jet.d_v);
  ff.g = jet.d_v.dot(jet.d_v);
  // |r_u x r_v|^2 == EG - F^2 without the cancellation.
  ff.area_element = jet.d_u.cross(jet.d_v).norm();
  return ff;
}

bool is_singular(const FundamentalForms& forms) {
  const double det = forms.area_element * forms.area_element;
  const double trace = forms.e + forms.g;
  return det <= kSingularityEpsilon * trace * trace;
}

CurvatureReport curvatures(const SurfaceJet& jet) {
  CurvatureReport rep;
  rep.forms = first_form(jet);
  if (is_singular(rep.forms)) {
    rep.singular = true;
    rep.mean = kNaN;
    rep.gaussian = kNaN;
    return rep;
  }
  const Vec3 cross = jet.d_u.cross(jet.d_v);
  const double det = cross.squaredNorm();
  rep.unit_normal = cross / std::sqrt(det);

  FundamentalForms& ff = rep.forms;
  ff.l = jet.d_uu.dot(rep.unit_normal);
  ff.m = jet.d_uv.dot(rep.unit_normal);
  ff.nn = jet.d_vv.dot(rep.unit_normal);

  const double en = ff.e * ff.nn;
  const double fm = ff.f * ff.m;
  const double gl = ff.g * ff.l;
  const double numerator = en - 2.0 * fm + gl;
  rep.mean = numerator / (2.0 * det);
  rep.gaussian = (ff.l * ff.nn - ff.m * ff.m) / det;
  const double second_norm = std::sqrt(ff.l * ff.l + 2.0 * ff.m * ff.m + ff.nn * ff.nn);
  const double magnitude = (ff.e + ff.g) * second_norm;
  rep.mean_residual = magnitude > 0.0 ? std::abs(numerator) / magnitude : 0.0;
  return rep;
}

IsothermalResidual isothermal_residual(const SurfaceSpec& spec, const SurfaceSelector& sel,
                                       ParamPoint pt) {
  const FundamentalForms ff = first_form(surface_jet(spec, sel, pt));
  const double scale = std::max({ff.e, ff.g, kTiny});
  return {std::abs(ff.f) / scale, std::abs(ff.e - ff.g) / scale, is_singular(ff)};
}

std::array<double, 3> cauchy_riemann_residual(const SurfaceSpec& spec, ParamPoint pt) {
  const auto [r, s] = conjugate_pair_jet(spec, pt);
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    const double scale = std::max({1.0, std::abs(r.d_u[c]), std::abs(r.d_v[c]), std::abs(s.d_u[c]),
                                   std::abs(s.d_v[c])});
    const double a = std::abs(r.d_u[c] - s.d_v[c]);
    const double b = std::abs(r.d_v[c] + s.d_u[c]);
    out[static_cast<std::size_t>(c)] = std::max(a, b) / scale;
  }
  return out;
}

namespace {

struct FormDeviation {
  double form = 0.0;
  double gaussian = 0.0;
};

FormDeviation compare_forms(const CurvatureReport& ref, const CurvatureReport& other) {
  const FundamentalForms& a = ref.forms;
  const FundamentalForms& b = other.forms;
  const double scale = std::max({a.e, a.g, kTiny});
  const double form =
      std::max({std::abs(b.e - a.e), std::abs(b.f - a.f), std::abs(b.g - a.g)}) / scale;
  const double kscale = std::max(std::abs(ref.gaussian), std::abs(other.gaussian));
  const double gaussian = kscale > 0.0 ? std::abs(other.gaussian - ref.gaussian) / kscale : 0.0;
  return {form, gaussian};
}

}  // namespace

IsometryReport family_isometry_check(const SurfaceSpec& spec, double t, const ParamGrid& grid) {
  grid.validate();
  IsometryReport rep;
  const SurfaceSelector fam = SurfaceSelector::family(t);
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const ParamPoint pt = grid.at(i, j);
      const CurvatureReport c0 = curvatures(surface_jet(spec, SurfaceSelector::base(), pt));
      if (c0.singular) {
        ++rep.singular_skipped;
        continue;
      }
      const CurvatureReport ct = curvatures(surface_jet(spec, fam, pt));
      const FormDeviation d = compare_forms(c0, ct);
      ++rep.checked;
      if (d.form > rep.max_form_deviation) {
        rep.max_form_deviation = d.form;
        rep.worst_form_point = pt;
      }
      if (ct.singular || d.gaussian > rep.max_gaussian_deviation) {
        rep.max_gaussian_deviation = ct.singular ? std::numeric_limits<double>::infinity() : d.gaussian;
        rep.worst_gaussian_point = pt;
      }
    }
  }
  return rep;
}

double default_fd_step(ParamPoint pt) {
  return 1e-5 * std::max({1.0, std::abs(pt.u), std::abs(pt.v)});
}

double fd_jet_check(const SurfaceSpec& spec, const SurfaceSelector& sel, ParamPoint pt, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be > 0");
  const SurfaceJet jet = surface_jet(spec, sel, pt);

  const ParamPoint up{pt.u + h, pt.v}, um{pt.u - h, pt.v};
  const ParamPoint vp{pt.u, pt.v + h}, vm{pt.u, pt.v - h};
  const double du = up.u - um.u;
  const double dv = vp.v - vm.v;

  const Vec3 fd_u = (eval(spec, sel, up) - eval(spec, sel, um)) / du;
  const Vec3 fd_v = (eval(spec, sel, vp) - eval(spec, sel, vm)) / dv;

  const SurfaceJet ju_p = surface_jet(spec, sel, up), ju_m = surface_jet(spec, sel, um);
  const SurfaceJet jv_p = surface_jet(spec, sel, vp), jv_m = surface_jet(spec, sel, vm);
  const Vec3 fd_uu = (ju_p.d_u - ju_m.d_u) / du;
  const Vec3 fd_uv = (jv_p.d_u - jv_m.d_u) / dv;
  const Vec3 fd_vu = (ju_p.d_v - ju_m.d_v) / du;
  const Vec3 fd_vv = (jv_p.d_v - jv_m.d_v) / dv;

  return std::max({rel_max(jet.d_u, fd_u), rel_max(jet.d_v, fd_v), rel_max(jet.d_uu, fd_uu),
                   rel_max(jet.d_uv, fd_uv), rel_max(jet.d_uv, fd_vu), rel_max(jet.d_vv, fd_vv)});
}

const char* to_string(ResidualKind kind) {
  switch (kind) {
    case ResidualKind::Minimality: return "minimality";
    case ResidualKind::IsothermalF: return "isothermal_f";
    case ResidualKind::IsothermalEG: return "isothermal_eg";
    case ResidualKind::CauchyRiemann: return "cauchy_riemann";
    case ResidualKind::IsometryForm: return "isometry_form";
    case ResidualKind::IsometryGaussian: return "isometry_gaussian";
    case ResidualKind::JetFd: return "jet_fd";
  }
  return "unknown";
}

void write_verification_report(std::span<const ResidualRecord> records, std::ostream& out) {
  char buf[256];
  for (const ResidualRecord& r : records) {
    const char* sel = r.selector.variant == Variant::Base        ? "base"
                      : r.selector.variant == Variant::Conjugate ? "conjugate"
                                                                 : "family";
    const double t = r.selector.variant == Variant::Family ? r.selector.reported_phase() : 0.0;
    std::snprintf(buf, sizeof buf, "%s %.17g %.17g %.17g %s %.17g\n", sel, t, r.pt.u + 0.0,
                  r.pt.v + 0.0, to_string(r.kind), r.value);
    out << buf;
  }
}

bool VerificationResult::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteSummary& s) { return s.passed(); });
}

std::vector<SurfaceSelector> default_selectors() {
  std::vector<SurfaceSelector> out{SurfaceSelector::base(), SurfaceSelector::conjugate()};
  for (double t : kDeformationPhases) out.push_back(SurfaceSelector::family(t));
  return out;
}

namespace {

void observe(SuiteSummary& s, std::vector<ResidualRecord>& failures, const SurfaceSelector& sel,
             ParamPoint pt, ResidualKind kind, double value) {
  ++s.checked;
  // NaN counts as a failure.
  const bool bad = !(value < s.tolerance);
  if (!(value <= s.worst) ) {
    s.worst = std::isnan(value) ? std::numeric_limits<double>::infinity() : value;
    s.worst_selector = sel;
    s.worst_point = pt;
  }
  if (bad) failures.push_back({sel, pt, kind, value});
}

}  // namespace

VerificationResult verify_surface(const SurfaceSpec& spec, std::span<const SurfaceSelector> selectors,
                                  const ParamGrid& grid, const SuiteTolerances& tol) {
  grid.validate();
  VerificationResult res;
  SuiteSummary minimality{"minimality", 0, 0, 0.0, tol.minimality, {}, {}};
  SuiteSummary isothermal{"isothermality", 0, 0, 0.0, tol.isothermal, {}, {}};
  SuiteSummary cr{"cauchy-riemann", 0, 0, 0.0, tol.cauchy_riemann, {}, {}};
  SuiteSummary iso_form{"family-isometry", 0, 0, 0.0, tol.isometry_form, {}, {}};
  SuiteSummary iso_k{"gaussian-curvature", 0, 0, 0.0, tol.isometry_gaussian, {}, {}};
  SuiteSummary jetfd{"jet-fd", 0, 0, 0.0,
                     spec.degree() >= 10 ? tol.jet_fd_high_degree : tol.jet_fd, {}, {}};

  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const ParamPoint pt = grid.at(i, j);
      const CurvatureReport base = curvatures(surface_jet(spec, SurfaceSelector::base(), pt));
      if (base.singular) res.singular_points.push_back(pt);

      const auto crr = cauchy_riemann_residual(spec, pt);
      observe(cr, res.failures, SurfaceSelector::base(), pt, ResidualKind::CauchyRiemann,
              std::max({crr[0], crr[1], crr[2]}));

      for (const SurfaceSelector& sel : selectors) {
        const SurfaceJet jet = surface_jet(spec, sel, pt);
        const CurvatureReport rep = curvatures(jet);
        observe(jetfd, res.failures, sel, pt, ResidualKind::JetFd,
                fd_jet_check(spec, sel, pt, default_fd_step(pt)));
        if (rep.singular) {
          ++minimality.skipped;
          ++isothermal.skipped;
          if (sel.variant != Variant::Base) {
            ++iso_form.skipped;
            ++iso_k.skipped;
          }
          continue;
        }
        observe(minimality, res.failures, sel, pt, ResidualKind::Minimality, rep.mean_residual);

        const double scale = std::max({rep.forms.e, rep.forms.g, kTiny});
        observe(isothermal, res.failures, sel, pt, ResidualKind::IsothermalF,
                std::abs(rep.forms.f) / scale);
        --isothermal.checked;  // one check per (point, selector)
        observe(isothermal, res.failures, sel, pt, ResidualKind::IsothermalEG,
                std::abs(rep.forms.e - rep.forms.g) / scale);

        if (sel.variant != Variant::Base && !base.singular) {
          const FormDeviation d = compare_forms(base, rep);
          observe(iso_form, res.failures, sel, pt, ResidualKind::IsometryForm, d.form);
          observe(iso_k, res.failures, sel, pt, ResidualKind::IsometryGaussian, d.gaussian);
        }
      }
    }
  }
  res.suites = {minimality, isothermal, cr, iso_form, iso_k, jetfd};
  return res;
}

}  // namespace minsurf
