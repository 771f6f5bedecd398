#include "gop/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gop/error.hpp"

namespace gop {

namespace {

template <typename T>
T parse_env(const char* name, const char* text) {
  T value{};
  const std::string_view s(text);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kParse,
                std::string("environment ") + name + "='" + text +
                    "' is not a valid number",
                name);
  }
  return value;
}

}  // namespace

void ServiceConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "alpha must lie in (0,1)",
                "alpha");
  }
  if (rbp_persistence && !(*rbp_persistence > 0.0 && *rbp_persistence < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "rbp_persistence must lie in (0,1)", "rbp_persistence");
  }
  if (mc_replicates < 100) {
    throw Error(ErrorKind::kInvalidArgument, "mc_replicates must be >= 100",
                "mc_replicates");
  }
  if (port < 0 || port > 65535) {
    throw Error(ErrorKind::kInvalidArgument, "port out of range", "port");
  }
  if (top_k == 0) {
    throw Error(ErrorKind::kInvalidArgument, "top_k must be >= 1", "top_k");
  }
}

ServiceConfig parse_config(std::string_view yaml_text,
                           const std::filesystem::path& base_dir) {
  ServiceConfig c;
  try {
    const YAML::Node root = YAML::Load(std::string(yaml_text));
    if (root.IsNull()) return c;
    if (!root.IsMap()) {
      throw Error(ErrorKind::kParse, "config: top level must be a mapping");
    }
    if (root["data_dir"]) c.data_dir = base_dir / root["data_dir"].as<std::string>();
    if (root["host"]) c.host = root["host"].as<std::string>();
    if (root["port"]) c.port = root["port"].as<int>();
    if (root["alpha"]) c.alpha = root["alpha"].as<double>();
    if (root["rbp_persistence"]) {
      c.rbp_persistence = root["rbp_persistence"].as<double>();
    }
    if (root["mc_replicates"]) c.mc_replicates = root["mc_replicates"].as<std::size_t>();
    if (root["seed"]) c.seed = root["seed"].as<std::uint64_t>();
    if (root["static_dir"]) {
      c.static_dir = base_dir / root["static_dir"].as<std::string>();
    }
    if (root["top_k"]) c.top_k = root["top_k"].as<std::size_t>();
  } catch (const YAML::Exception& e) {
    throw Error(ErrorKind::kParse, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ServiceConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

void apply_env_overrides(ServiceConfig& c, const EnvLookup& getenv) {
  if (const char* v = getenv("GOP_DATA_DIR")) c.data_dir = v;
  if (const char* v = getenv("GOP_HOST")) c.host = v;
  if (const char* v = getenv("GOP_PORT")) c.port = parse_env<int>("GOP_PORT", v);
  if (const char* v = getenv("GOP_ALPHA")) c.alpha = parse_env<double>("GOP_ALPHA", v);
  if (const char* v = getenv("GOP_RBP_P")) {
    c.rbp_persistence = parse_env<double>("GOP_RBP_P", v);
  }
  if (const char* v = getenv("GOP_MC_REPLICATES")) {
    c.mc_replicates = parse_env<std::size_t>("GOP_MC_REPLICATES", v);
  }
  if (const char* v = getenv("GOP_SEED")) c.seed = parse_env<std::uint64_t>("GOP_SEED", v);
  if (const char* v = getenv("GOP_STATIC_DIR")) c.static_dir = v;
  c.validate();
}

void apply_env_overrides(ServiceConfig& c) {
  apply_env_overrides(c, [](const char* name) { return std::getenv(name); });
}

}  // namespace gop
