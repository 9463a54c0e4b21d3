#pragma once

#include "settings.hpp"

#include "minsurf/diffgeo.hpp"
#include "minsurf/mesh_io.hpp"
#include "minsurf/surface_family.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace minsurf::cli {

enum class Command { Eval, Verify, Analyze, Mesh, Frames };

enum class OutputFormat { Obj, Ply, Csv };

struct RunConfig {
  Command command = Command::Eval;
  int degree = 0;
  double omega = 1.0;
  std::optional<SurfaceSelector> selector;  ///< unset: command default
  DomainRect domain;
  int nu = 64;
  int nv = 64;
  SuiteTolerances tolerances;
  double tol_symmetry = 1e-12;
  double tol_self_intersection = 1e-6;
  std::optional<double> delta_param;
  std::optional<double> delta_pos;
  std::string output;
  OutputFormat format = OutputFormat::Obj;
  bool normals = false;
  std::string report;
  ParamPoint point;
  bool jet = false;
  bool forms = false;
  bool curvature = false;
};

/// Applies command defaults, then layered settings. Throws Error on bad input.
RunConfig resolve_config(Command command, const LayeredSettings& settings);

SurfaceSpec build_surface(const RunConfig& cfg, const LayeredSettings& settings);

int cmd_eval(const RunConfig& cfg, const SurfaceSpec& spec, std::ostream& out);
int cmd_verify(const RunConfig& cfg, const SurfaceSpec& spec, std::ostream& out);
int cmd_analyze(const RunConfig& cfg, const SurfaceSpec& spec, std::ostream& out);
int cmd_mesh(const RunConfig& cfg, const SurfaceSpec& spec, std::ostream& out);
int cmd_frames(const RunConfig& cfg, const SurfaceSpec& spec, std::ostream& out);

}  // namespace minsurf::cli
