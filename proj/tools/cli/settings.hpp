#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace minsurf::cli {

/// Where a value came from; used to name the culprit in error messages.
struct Setting {
  std::string value;
  std::string origin;
};

/// Every key accepted from any layer. Config files may not contain others.
const std::vector<std::string>& known_keys();
bool is_known_key(const std::string& key);

/// "tol-jet-fd" -> "MINSURF_TOL_JET_FD".
std::string env_name(const std::string& key);

/// Parses flat `key = value` text. `#` starts a comment; blank lines are skipped.
std::map<std::string, Setting> parse_config_text(const std::string& text, const std::string& label);
std::map<std::string, Setting> load_config_file(const std::string& path);

std::map<std::string, Setting> read_environment();

/// Three layers, highest precedence first: flags, environment, config file.
class LayeredSettings {
 public:
  std::map<std::string, Setting> flags;
  std::map<std::string, Setting> env;
  std::map<std::string, Setting> file;

  std::optional<Setting> get(const std::string& key) const;

  /// Topmost layer holding any of `keys`, restricted to those keys.
  std::map<std::string, Setting> top_layer_with(const std::vector<std::string>& keys) const;
};

double parse_real(const Setting& s);
int parse_int(const Setting& s);
bool parse_bool(const Setting& s);
std::vector<double> parse_reals(const Setting& s);

}  // namespace minsurf::cli
