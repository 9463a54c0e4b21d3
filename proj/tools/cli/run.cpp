#include "minsurf/cli.hpp"

#include "commands.hpp"
#include "settings.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <ostream>

namespace minsurf::cli {

namespace {

enum class Kind { Value, List, Flag };

struct OptionDef {
  std::string key;
  std::string names;
  Kind kind;
  std::string help;
  int min_items = 1;
  int max_items = 1;
};

const std::vector<OptionDef>& option_table() {
  static const std::vector<OptionDef> defs = {
      {"degree", "-n,--degree", Kind::Value, "polynomial degree n >= 3"},
      {"omega", "-w,--omega", Kind::Value, "shape parameter omega >= 0 (default 1)"},
      {"conjugate", "--conjugate", Kind::Flag, "use the conjugate surface"},
      {"phase", "--phase", Kind::Value, "use the associate family member at phase t"},
      {"u", "-u", Kind::Value, "parameter u"},
      {"v", "-v", Kind::Value, "parameter v"},
      {"jet", "--jet", Kind::Flag, "also print first and second partials"},
      {"forms", "--forms", Kind::Flag, "also print E F G L M N"},
      {"curvature", "--curvature", Kind::Flag, "also print H, K and the unit normal"},
      {"domain", "--domain", Kind::List, "umin umax vmin vmax", 4, 4},
      {"grid", "--grid", Kind::List, "N or NU NV", 1, 2},
      {"format", "--format", Kind::Value, "obj, ply or csv"},
      {"output", "-o,--output", Kind::Value, "output file or directory"},
      {"normals", "--normals", Kind::Flag, "write vertex normals"},
      {"report", "--report", Kind::Value, "write out-of-tolerance records to this file"},
      {"delta-param", "--delta-param", Kind::Value, "min parameter distance of a self-intersection pair"},
      {"delta-pos", "--delta-pos", Kind::Value, "spatial hash scale for candidate pairs"},
      {"tol-minimality", "--tol-minimality", Kind::Value, "mean curvature residual tolerance"},
      {"tol-isothermal", "--tol-isothermal", Kind::Value, "F and E-G residual tolerance"},
      {"tol-cauchy-riemann", "--tol-cauchy-riemann", Kind::Value, "Cauchy-Riemann residual tolerance"},
      {"tol-isometry", "--tol-isometry", Kind::Value, "family first form deviation tolerance"},
      {"tol-gaussian", "--tol-gaussian", Kind::Value, "family Gaussian curvature deviation tolerance"},
      {"tol-jet-fd", "--tol-jet-fd", Kind::Value, "jet vs finite difference tolerance"},
      {"tol-symmetry", "--tol-symmetry", Kind::Value, "symmetry residual tolerance"},
      {"tol-self-intersection", "--tol-self-intersection", Kind::Value, "hit to plane distance tolerance"},
  };
  return defs;
}

struct SubcommandDef {
  Command command;
  std::string name;
  std::string help;
  std::vector<std::string> keys;
};

const std::vector<SubcommandDef>& subcommands() {
  static const std::vector<SubcommandDef> defs = {
      {Command::Eval, "eval", "evaluate one parameter point",
       {"degree", "omega", "conjugate", "phase", "u", "v", "jet", "forms", "curvature"}},
      {Command::Verify, "verify", "run the certification suites over a sample grid",
       {"degree", "omega", "conjugate", "phase", "domain", "grid", "report", "tol-minimality", "tol-isothermal",
        "tol-cauchy-riemann", "tol-isometry", "tol-gaussian", "tol-jet-fd"}},
      {Command::Analyze, "analyze", "classify, check symmetries, lines and self-intersections",
       {"degree", "omega", "domain", "grid", "delta-param", "delta-pos", "tol-symmetry", "tol-self-intersection"}},
      {Command::Mesh, "mesh", "tessellate one surface",
       {"degree", "omega", "conjugate", "phase", "domain", "grid", "format", "output", "normals"}},
      {Command::Frames, "frames", "write the associate family frame sequence",
       {"degree", "omega", "domain", "grid", "format", "output", "normals"}},
  };
  return defs;
}

const OptionDef& find_def(const std::string& key) {
  for (const auto& d : option_table())
    if (d.key == key) return d;
  throw std::logic_error("no option " + key);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : " ") + s;
  return out;
}

std::string first_long_name(const std::string& names) {
  const auto pos = names.find("--");
  if (pos != std::string::npos) return names.substr(pos);
  return names;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial minimal surfaces: evaluation, certification, analysis and meshing", "minsurf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "minsurf 0.1.0");

  std::string config_path;
  app.add_option("--config", config_path, "flat key = value defaults (flags > MINSURF_* env > file)");

  std::map<std::string, std::vector<std::string>> raw;
  std::vector<std::pair<CLI::App*, std::map<std::string, CLI::Option*>>> subs;
  for (const auto& sd : subcommands()) {
    CLI::App* sub = app.add_subcommand(sd.name, sd.help);
    sub->add_option("--config", config_path, "flat key = value defaults");
    std::map<std::string, CLI::Option*> opts;
    for (const auto& key : sd.keys) {
      const OptionDef& d = find_def(key);
      CLI::Option* o = nullptr;
      if (d.kind == Kind::Flag) {
        o = sub->add_flag(d.names, d.help);
      } else {
        o = sub->add_option(d.names, raw[key], d.help)->expected(d.min_items, d.max_items)->allow_extra_args(false);
        if (d.kind == Kind::List) o->allow_extra_args(true);
      }
      opts[key] = o;
    }
    if (opts.count("conjugate") && opts.count("phase")) opts["conjugate"]->excludes(opts["phase"]);
    subs.emplace_back(sub, std::move(opts));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kPass;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::size_t chosen = 0;
  for (; chosen < subs.size(); ++chosen)
    if (subs[chosen].first->parsed()) break;
  const SubcommandDef& sd = subcommands()[chosen];

  try {
    LayeredSettings settings;
    for (const auto& [key, opt] : subs[chosen].second) {
      if (opt->count() == 0) continue;
      const OptionDef& d = find_def(key);
      const std::string origin = first_long_name(d.names);
      settings.flags[key] = Setting{d.kind == Kind::Flag ? "true" : join(raw[key]), origin};
    }
    settings.env = read_environment();
    if (config_path.empty()) {
      if (const char* p = std::getenv("MINSURF_CONFIG")) config_path = p;
    }
    if (!config_path.empty()) settings.file = load_config_file(config_path);

    const RunConfig cfg = resolve_config(sd.command, settings);
    const SurfaceSpec spec = build_surface(cfg, settings);
    switch (sd.command) {
      case Command::Eval:
        return cmd_eval(cfg, spec, out);
      case Command::Verify:
        return cmd_verify(cfg, spec, out);
      case Command::Analyze:
        return cmd_analyze(cfg, spec, out);
      case Command::Mesh:
        return cmd_mesh(cfg, spec, out);
      case Command::Frames:
        return cmd_frames(cfg, spec, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Io ? kIo : kUsage;
  }
  return kUsage;
}

}  // namespace minsurf::cli
