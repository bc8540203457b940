#include "rdf/run_config.hpp"
#include "rdf/errors.hpp"
#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <sstream>

namespace rdf {

namespace {
std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    out.push_back(trim(item));
  return out;
}

bool parse_double(const std::string &s, double &v) {
  if (s.empty())
    return false;
  char *end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(v);
}

bool parse_long(const std::string &s, long &v) {
  if (s.empty())
    return false;
  char *end = nullptr;
  v = std::strtol(s.c_str(), &end, 10);
  return end == s.c_str() + s.size();
}
} // namespace

//==============================================================================
KeyValueConfig KeyValueConfig::parse(std::istream &in, const std::string &source) {
  KeyValueConfig c;
  c.m_source = source;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty())
      continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos)
      throw InputError(fmt::format("{}:{}: expected 'key = value', got '{}'", source,
                                   line, text));
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty())
      throw InputError(fmt::format("{}:{}: missing key before '='", source, line));
    if (value.empty())
      throw InputError(fmt::format("{}:{}: missing value for '{}'", source, line, key));
    if (c.m_entries.count(key))
      throw InputError(fmt::format("{}:{}: duplicate key '{}' (first set on line {})",
                                   source, line, key, c.m_entries.at(key).line));
    c.m_entries[key] = {value, line};
  }
  return c;
}

KeyValueConfig KeyValueConfig::read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError(fmt::format("cannot open config file '{}'", path));
  return parse(in, path);
}

bool KeyValueConfig::has(const std::string &key) const {
  return m_entries.count(key) > 0;
}

void KeyValueConfig::fail(const std::string &key, const std::string &what) const {
  throw InputError(fmt::format("{}:{}: {} '{}': {}", m_source, m_entries.at(key).line,
                               "invalid value for", key, what));
}

std::string KeyValueConfig::get_string(const std::string &key,
                                       const std::string &fallback) const {
  const auto it = m_entries.find(key);
  return it == m_entries.end() ? fallback : it->second.value;
}

double KeyValueConfig::get_double(const std::string &key, double fallback) const {
  const auto it = m_entries.find(key);
  if (it == m_entries.end())
    return fallback;
  double v;
  if (!parse_double(it->second.value, v))
    fail(key, fmt::format("'{}' is not a finite number", it->second.value));
  return v;
}

long KeyValueConfig::get_int(const std::string &key, long fallback) const {
  const auto it = m_entries.find(key);
  if (it == m_entries.end())
    return fallback;
  long v;
  if (!parse_long(it->second.value, v))
    fail(key, fmt::format("'{}' is not an integer", it->second.value));
  return v;
}

bool KeyValueConfig::get_bool(const std::string &key, bool fallback) const {
  const auto it = m_entries.find(key);
  if (it == m_entries.end())
    return fallback;
  const auto &v = it->second.value;
  if (v == "true" || v == "1" || v == "yes")
    return true;
  if (v == "false" || v == "0" || v == "no")
    return false;
  fail(key, fmt::format("'{}' is not a boolean", v));
}

std::vector<long> KeyValueConfig::get_int_list(const std::string &key) const {
  std::vector<long> out;
  const auto it = m_entries.find(key);
  if (it == m_entries.end())
    return out;
  for (const auto &item : split(it->second.value, ',')) {
    long v;
    if (!parse_long(item, v))
      fail(key, fmt::format("'{}' is not an integer", item));
    out.push_back(v);
  }
  return out;
}

void KeyValueConfig::require_known(const std::set<std::string> &known) const {
  for (const auto &[key, entry] : m_entries)
    if (!known.count(key))
      throw InputError(fmt::format("{}:{}: unknown key '{}'", m_source, entry.line, key));
}

//==============================================================================
void RunConfig::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw InputError(fmt::format("--alpha must be positive, got {}", alpha));
  if (grid_points < 8)
    throw InputError(fmt::format("--grid-points must be >= 8, got {}", grid_points));
  if (r_min && !(*r_min > 0.0))
    throw InputError("--r-min must be positive");
  if (r_min && r_max && !(*r_max > *r_min))
    throw InputError("--r-max must exceed --r-min");
  if (!(tol > 0.0))
    throw InputError("--tol must be positive");
  if (format != "csv" && format != "json")
    throw InputError(fmt::format("--format must be csv or json, got '{}'", format));
}

std::vector<std::pair<int, int>> parse_states(const std::string &text) {
  std::vector<std::pair<int, int>> out;
  if (trim(text).empty())
    return out;
  for (const auto &item : split(text, ',')) {
    const auto colon = item.find(':');
    long n, k;
    if (colon == std::string::npos || !parse_long(trim(item.substr(0, colon)), n) ||
        !parse_long(trim(item.substr(colon + 1)), k))
      throw InputError(fmt::format("--states: expected n:kappa_D, got '{}'", item));
    out.emplace_back(int(n), int(k));
  }
  return out;
}

std::string resolve_output(const std::string &out, const std::string &stem,
                           const std::string &format) {
  if (!out.empty())
    return out;
  if (const char *dir = std::getenv("RDF_OUTPUT_DIR"); dir && *dir) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / (stem + "." + format)).string();
  }
  return "";
}

//==============================================================================
EvolveConfig EvolveConfig::from(const KeyValueConfig &kv) {
  kv.require_known({"mode", "n", "length", "dt", "steps", "output_every", "alpha",
                    "e", "initial", "packet_center", "packet_width", "packet_k0",
                    "plane_mode", "potential", "potential_v0", "potential_center",
                    "potential_width", "source", "source_charge", "source_center",
                    "source_width", "damping_width", "damping_strength",
                    "neutralize", "modes"});
  EvolveConfig c;
  c.mode = kv.get_string("mode", c.mode);
  auto positive_int = [&](const char *key, long fallback, long min) {
    const long v = kv.get_int(key, fallback);
    if (v < min)
      throw InputError(fmt::format("{}: must be >= {}, got {}", key, min, v));
    return std::size_t(v);
  };
  c.n = positive_int("n", long(c.n), 4);
  c.steps = positive_int("steps", long(c.steps), 0);
  c.output_every = positive_int("output_every", long(c.output_every), 1);
  c.plane_mode = positive_int("plane_mode", long(c.plane_mode), 0);
  c.length = kv.get_double("length", c.length);
  c.dt = kv.get_double("dt", c.dt);
  c.alpha = kv.get_double("alpha", c.alpha);
  c.e = kv.get_double("e", c.e);
  c.initial = kv.get_string("initial", c.initial);
  c.packet_center = kv.get_double("packet_center", c.packet_center);
  c.packet_width = kv.get_double("packet_width", c.packet_width);
  c.packet_k0 = kv.get_double("packet_k0", c.packet_k0);
  c.potential = kv.get_string("potential", c.potential);
  c.potential_v0 = kv.get_double("potential_v0", c.potential_v0);
  c.potential_center = kv.get_double("potential_center", c.potential_center);
  c.potential_width = kv.get_double("potential_width", c.potential_width);
  c.source = kv.get_string("source", c.source);
  c.source_charge = kv.get_double("source_charge", c.source_charge);
  c.source_center = kv.get_double("source_center", c.source_center);
  c.source_width = kv.get_double("source_width", c.source_width);
  c.damping_width = kv.get_double("damping_width", c.damping_width);
  c.damping_strength = kv.get_double("damping_strength", c.damping_strength);
  c.neutralize = kv.get_bool("neutralize", c.neutralize);
  c.modes = kv.get_int_list("modes");

  if (c.mode != "free" && c.mode != "external" && c.mode != "coupled")
    throw InputError(fmt::format("mode: expected free, external or coupled, got '{}'", c.mode));
  if (c.initial != "packet" && c.initial != "plane" && c.initial != "none")
    throw InputError(fmt::format("initial: expected packet, plane or none, got '{}'", c.initial));
  if (c.potential != "none" && c.potential != "constant" && c.potential != "gaussian")
    throw InputError(fmt::format("potential: expected none, constant or gaussian, got '{}'",
                                 c.potential));
  if (c.source != "none" && c.source != "gaussian")
    throw InputError(fmt::format("source: expected none or gaussian, got '{}'", c.source));
  if (c.n < 4 || (c.n & (c.n - 1)) != 0)
    throw InputError(fmt::format("n: must be a power of two >= 4, got {}", c.n));
  if (!(c.length > 0.0) || !(c.dt > 0.0) || !(c.alpha > 0.0))
    throw InputError("length, dt and alpha must be positive");
  if (c.initial == "plane" && c.plane_mode >= c.n)
    throw InputError("plane_mode must be below n");
  for (long m : c.modes)
    if (m < 0 || std::size_t(m) >= c.n)
      throw InputError(fmt::format("modes: bin {} outside [0, {})", m, c.n));
  return c;
}

double EvolveConfig::charge() const { return e != 0.0 ? e : -std::sqrt(alpha); }

} // namespace rdf
