#pragma once
// Deterministic synthetic grids and run collections shaped like the
// stoplist x stemmer x model grid (6 x 6 x 17 levels, 50 topics).
//
// Scores follow an additive component model with a handful of planted
// effects: indri is the strongest stoplist, krovetz the strongest stemmer
// (most of all under indri), lucene+krovetz is a weak pair and nolug/lovins
// trail the stemmers.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gop/grid.hpp"
#include "gop/manifest.hpp"

namespace gop::synth {

// Levels, sub-families and topic ids of the 612-system grid.
CollectionManifest paper_manifest(const std::string& collection_id = "T07",
                                  std::size_t topics = 50,
                                  int first_topic = 351);

// Small manifest with `stoplists` x `stemmers` x `models` levels named
// s0.., t0.., m0.. (models cycle through the three sub-families).
CollectionManifest toy_manifest(std::size_t stoplists, std::size_t stemmers,
                                std::size_t models, std::size_t topics,
                                const std::string& collection_id = "toy");

// Expected effectiveness of a system (before topic and noise terms).
double system_quality(const CollectionManifest& manifest,
                      const SystemConfig& config, std::uint64_t seed);

// Score tensor drawn from the component model. `loaded` systems default to
// all; scores of other systems are zero-filled and flagged absent.
ScoreGrid synthetic_grid(std::shared_ptr<const CollectionManifest> manifest,
                         std::span<const MeasureId> measures,
                         std::uint64_t seed,
                         const std::vector<std::size_t>& missing = {});

struct RunCollectionOptions {
  std::uint64_t seed = 7;
  std::size_t docs_per_topic = 40;
  int max_grade = 1;
  // System indices whose run files are not written.
  std::vector<std::size_t> missing;
};

// Writes qrels.txt, runs/<system>.run and manifest.yaml under `dir` and
// returns the manifest path.
std::filesystem::path write_run_collection(const std::filesystem::path& dir,
                                           const CollectionManifest& manifest,
                                           const RunCollectionOptions& options);

// YAML text for `manifest`, with data paths relative to its directory.
std::string manifest_yaml(const CollectionManifest& manifest,
                          const std::string& qrels, const std::string& runs,
                          const std::string& scores);

}  // namespace gop::synth
