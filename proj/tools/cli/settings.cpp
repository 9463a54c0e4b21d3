#include "settings.hpp"

#include "minsurf/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace minsurf::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

[[noreturn]] void bad(const Setting& s, const std::string& what) {
  throw Error(ErrorCode::InvalidArgument, s.origin + ": " + what + ", got '" + s.value + "'");
}

double to_real(const Setting& s, const std::string& tok) {
  double x = 0.0;
  const char* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, x);
  if (ec != std::errc() || p != end) bad(s, "expected a number");
  return x;
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "degree",         "omega",          "conjugate",         "phase",
      "u",              "v",              "jet",               "forms",
      "curvature",      "domain",         "grid",              "format",
      "output",         "normals",        "report",            "delta-param",
      "delta-pos",      "tol-minimality", "tol-isothermal",    "tol-cauchy-riemann",
      "tol-isometry",   "tol-gaussian",   "tol-jet-fd",        "tol-symmetry",
      "tol-self-intersection",
  };
  return keys;
}

bool is_known_key(const std::string& key) {
  const auto& k = known_keys();
  return std::find(k.begin(), k.end(), key) != k.end();
}

std::string env_name(const std::string& key) {
  std::string out = "MINSURF_";
  for (char c : key) out += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::map<std::string, Setting> parse_config_text(const std::string& text, const std::string& label) {
  std::map<std::string, Setting> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = label + ":" + std::to_string(lineno);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!is_known_key(key)) throw Error(ErrorCode::InvalidArgument, where + ": unknown key '" + key + "'");
    out[key] = Setting{trim(line.substr(eq + 1)), where + " (" + key + ")"};
  }
  return out;
}

std::map<std::string, Setting> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::map<std::string, Setting> read_environment() {
  std::map<std::string, Setting> out;
  for (const std::string& key : known_keys()) {
    const std::string name = env_name(key);
    if (const char* v = std::getenv(name.c_str())) out[key] = Setting{trim(v), name};
  }
  return out;
}

std::optional<Setting> LayeredSettings::get(const std::string& key) const {
  for (const auto* layer : {&flags, &env, &file}) {
    if (auto it = layer->find(key); it != layer->end()) return it->second;
  }
  return std::nullopt;
}

std::map<std::string, Setting> LayeredSettings::top_layer_with(const std::vector<std::string>& keys) const {
  for (const auto* layer : {&flags, &env, &file}) {
    std::map<std::string, Setting> hit;
    for (const auto& k : keys) {
      if (auto it = layer->find(k); it != layer->end()) hit.insert(*it);
    }
    if (!hit.empty()) return hit;
  }
  return {};
}

double parse_real(const Setting& s) {
  const auto t = tokens(s.value);
  if (t.size() != 1) bad(s, "expected one number");
  const double x = to_real(s, t[0]);
  if (!std::isfinite(x)) bad(s, "value must be finite");
  return x;
}

int parse_int(const Setting& s) {
  const auto t = tokens(s.value);
  if (t.size() != 1) bad(s, "expected one integer");
  int x = 0;
  const char* end = t[0].data() + t[0].size();
  auto [p, ec] = std::from_chars(t[0].data(), end, x);
  if (ec != std::errc() || p != end) bad(s, "expected an integer");
  return x;
}

bool parse_bool(const Setting& s) {
  std::string v = trim(s.value);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  bad(s, "expected a boolean");
}

std::vector<double> parse_reals(const Setting& s) {
  std::vector<double> out;
  for (const auto& t : tokens(s.value)) {
    const double x = to_real(s, t);
    if (!std::isfinite(x)) bad(s, "values must be finite");
    out.push_back(x);
  }
  return out;
}

}  // namespace minsurf::cli
