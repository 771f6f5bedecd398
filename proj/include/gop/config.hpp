#pragma once
// Service configuration (YAML), shared by `gop serve` and `gop export`.
//
//   data_dir: data            # directory of collection manifests (*.yaml)
//   host: 127.0.0.1
//   port: 8080
//   alpha: 0.05               # Dunnett significance level
//   rbp_persistence: 0.8      # overrides manifests when ingesting runs
//   mc_replicates: 200000     # Monte Carlo replicates per critical value
//   seed: 12345
//   static_dir: ui/dist       # optional UI bundle served at /
//   top_k: 5
//
// Environment overrides: GOP_DATA_DIR, GOP_HOST, GOP_PORT, GOP_ALPHA,
// GOP_RBP_P, GOP_MC_REPLICATES, GOP_SEED, GOP_STATIC_DIR.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "gop/dunnett.hpp"

namespace gop {

struct ServiceConfig {
  std::filesystem::path data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  double alpha = 0.05;
  std::optional<double> rbp_persistence;
  std::size_t mc_replicates = kDefaultReplicates;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path static_dir;
  std::size_t top_k = 5;

  void validate() const;
};

ServiceConfig parse_config(std::string_view yaml_text,
                           const std::filesystem::path& base_dir = {});
ServiceConfig load_config(const std::filesystem::path& path);

using EnvLookup = std::function<const char*(const char*)>;
void apply_env_overrides(ServiceConfig& config, const EnvLookup& getenv);
void apply_env_overrides(ServiceConfig& config);

}  // namespace gop
