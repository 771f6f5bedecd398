#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <sstream>
#include <string>

#include "gop/grid.hpp"
#include "gop/measures.hpp"
#include "gop/synthetic.hpp"

namespace testutil {

inline std::filesystem::path fixtures() { return GOP_FIXTURES; }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  static std::mt19937_64 rng(std::random_device{}());
  auto p = std::filesystem::temp_directory_path() /
           ("gop-" + name + "-" + std::to_string(rng() % 1000000000));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline std::vector<gop::MeasureId> standard_measures() {
  return gop::MeasureRegistry::standard(0.8, 1).measures();
}

inline std::shared_ptr<const gop::ScoreGrid> paper_grid(
    std::uint64_t seed = 11, const std::string& id = "T07") {
  auto m = std::make_shared<const gop::CollectionManifest>(
      gop::synth::paper_manifest(id));
  const auto measures = standard_measures();
  return std::make_shared<const gop::ScoreGrid>(
      gop::synth::synthetic_grid(m, measures, seed));
}

inline std::shared_ptr<const gop::ScoreGrid> toy_grid(
    std::size_t a, std::size_t b, std::size_t c, std::size_t topics,
    std::uint64_t seed, const std::vector<std::size_t>& missing = {}) {
  auto m = std::make_shared<const gop::CollectionManifest>(
      gop::synth::toy_manifest(a, b, c, topics));
  const auto measures = standard_measures();
  return std::make_shared<const gop::ScoreGrid>(
      gop::synth::synthetic_grid(m, measures, seed, missing));
}

}  // namespace testutil
