// Writes a demo data directory: one score CSV + manifest per collection and
// a service config. With --runs, also writes TREC run files and qrels for the
// first collection so `gop ingest` has something to chew on.

#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"

#include "gop/error.hpp"
#include "gop/grid.hpp"
#include "gop/measures.hpp"
#include "gop/synthetic.hpp"

namespace {

const std::map<std::string, int> kFirstTopic = {
    {"T07", 351}, {"T08", 401}, {"T09", 451},
    {"T10", 501}, {"T14", 751}, {"T15", 801}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic grid-of-points data", "gop_synth"};
  std::string out_dir;
  std::vector<std::string> collections = {"T07", "T08", "T09",
                                          "T10", "T14", "T15"};
  std::uint64_t seed = 7;
  bool runs = false;
  app.add_option("--out", out_dir, "output directory")->required();
  app.add_option("--collections", collections)->delimiter(',');
  app.add_option("--seed", seed);
  app.add_flag("--runs", runs, "also write run files for the first collection");
  CLI11_PARSE(app, argc, argv);

  namespace fs = std::filesystem;
  try {
    const fs::path root(out_dir);
    fs::create_directories(root / "data");
    const auto measures = gop::MeasureRegistry::standard(0.8, 1).measures();
    std::uint64_t s = seed;
    for (const auto& id : collections) {
      auto it = kFirstTopic.find(id);
      const int first = it == kFirstTopic.end() ? 1 : it->second;
      auto manifest = std::make_shared<gop::CollectionManifest>(
          gop::synth::paper_manifest(id, 50, first));
      manifest->max_grade = 1;
      const auto grid = gop::synth::synthetic_grid(manifest, measures, s++);
      std::ofstream csv(root / "data" / (id + ".csv"), std::ios::binary);
      gop::export_scores(grid, csv);
      std::ofstream yaml(root / "data" / (id + ".yaml"));
      yaml << gop::synth::manifest_yaml(*manifest, "", "", id + ".csv");
      std::cerr << "wrote " << id << " (" << grid.system_count()
                << " systems)\n";
    }
    if (runs && !collections.empty()) {
      const auto& id = collections.front();
      auto it = kFirstTopic.find(id);
      auto manifest = gop::synth::paper_manifest(
          id, 50, it == kFirstTopic.end() ? 1 : it->second);
      gop::synth::RunCollectionOptions opts;
      opts.seed = seed;
      const auto path =
          gop::synth::write_run_collection(root / "runs" / id, manifest, opts);
      std::cerr << "wrote " << path.string() << "\n";
    }
    std::ofstream cfg(root / "config.yaml");
    cfg << "data_dir: data\nhost: 127.0.0.1\nport: 8080\nalpha: 0.05\n"
           "mc_replicates: 200000\nstatic_dir: ui/dist\ntop_k: 5\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
