#include <gtest/gtest.h>

#include <sstream>

#include "gop/cli.hpp"
#include "gop/service.hpp"
#include "helpers.hpp"

using namespace gop;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// data/<id>.yaml + <id>.csv and a config pointing at them.
std::filesystem::path make_site(const std::string& name) {
  const auto dir = testutil::temp_dir(name);
  const auto g = testutil::paper_grid(21);
  std::ostringstream csv;
  export_scores(*g, csv);
  testutil::spit(dir / "data" / "T07.csv", csv.str());
  testutil::spit(dir / "data" / "T07.yaml",
                 synth::manifest_yaml(g->manifest(), "", "", "T07.csv"));
  testutil::spit(dir / "config.yaml", "data_dir: data\nmc_replicates: 20000\n");
  return dir;
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"ingest", "--manifest", "x.yaml"}).code, kExitUsage);
  const auto r = cli({"stats", "--grid", "g.csv"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--axis"), std::string::npos);
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, IngestWritesCsvAndReport) {
  const auto dir = testutil::temp_dir("cli-ingest");
  synth::RunCollectionOptions opts;
  opts.missing = {2};
  const auto manifest = synth::write_run_collection(
      dir / "c", synth::toy_manifest(2, 2, 2, 4), opts);
  const auto r = cli({"ingest", "--manifest", manifest.string(), "--out",
                      (dir / "g.csv").string(), "--report",
                      (dir / "report.txt").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("7/8"), std::string::npos);
  const auto report = testutil::slurp(dir / "report.txt");
  EXPECT_NE(report.find("missing s0_t1_m0"), std::string::npos);

  auto m = std::make_shared<const CollectionManifest>(load_manifest(manifest));
  const auto g = ingest_grid(m, manifest_measures(*m, 1));
  std::ostringstream want;
  export_scores(g, want);
  EXPECT_EQ(testutil::slurp(dir / "g.csv"), want.str());
  std::filesystem::remove_all(dir);
}

TEST(Cli, IngestMissingManifest) {
  const auto r = cli({"ingest", "--manifest", "/no/such.yaml", "--out", "/tmp/x.csv"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("/no/such.yaml"), std::string::npos);
}

TEST(Cli, ExportEqualsApi) {
  const auto dir = make_site("cli-export");
  const std::string body =
      R"({"collection":"T07","measure":"nDCG","selected":[{"axis":"stemmer","level":"krovetz"}]})";
  testutil::spit(dir / "req.json", body);
  const auto r = cli({"export", "--config", (dir / "config.yaml").string(),
                      "--request", (dir / "req.json").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;

  auto config = load_config(dir / "config.yaml");
  Explorer e(config);
  for (auto& g : load_grids(config)) e.add_grid(g);
  e.set_ready(true);
  EXPECT_EQ(r.out, e.diagram(body).body);

  const auto t = cli({"export", "--config", (dir / "config.yaml").string(),
                      "--request", (dir / "req.json").string(), "--component",
                      "stoplist=indri", "--out", (dir / "t.json").string()});
  ASSERT_EQ(t.code, kExitOk) << t.err;
  EXPECT_EQ(testutil::slurp(dir / "t.json"),
            e.component_tooltip({{"axis", "stoplist"}, {"level", "indri"}, {"state", body}})
                .body);

  const auto l = cli({"export", "--config", (dir / "config.yaml").string(),
                      "--request", (dir / "req.json").string(), "--link",
                      "stoplist=indri", "stemmer=krovetz"});
  ASSERT_EQ(l.code, kExitOk) << l.err;
  EXPECT_EQ(l.out, e.link_tooltip({{"axisA", "stoplist"}, {"levelA", "indri"},
                                   {"axisB", "stemmer"}, {"levelB", "krovetz"},
                                   {"state", body}})
                       .body);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExportErrors) {
  const auto dir = make_site("cli-export-err");
  testutil::spit(dir / "bad.json", R"({"collection":"T07","measure":"Twist"})");
  auto r = cli({"export", "--config", (dir / "config.yaml").string(),
                "--request", (dir / "bad.json").string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("unknown_measure"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  r = cli({"export", "--config", (dir / "config.yaml").string(), "--request",
           (dir / "bad.json").string(), "--component", "indri"});
  EXPECT_EQ(r.code, kExitUsage);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ServeMissingDataDir) {
  const auto dir = testutil::temp_dir("cli-serve");
  testutil::spit(dir / "bad.yaml", "data_dir: nowhere\nport: 0\n");
  const auto r = cli({"serve", "--config", (dir / "bad.yaml").string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("nowhere"), std::string::npos);
  EXPECT_NE(r.err.find("does not exist"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Stats) {
  const auto dir = make_site("cli-stats");
  const auto csv = (dir / "data" / "T07.csv").string();
  const auto r = cli({"stats", "--grid", csv, "--axis", "stoplist", "--level",
                      "indri", "--measure", "AP", "--replicates", "20000"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* field : {"mean", "best", "top 5", "top group", "critical value"}) {
    EXPECT_NE(r.out.find(field), std::string::npos) << field;
  }
  EXPECT_NE(r.out.find("stoplist=indri"), std::string::npos);

  const auto j = cli({"stats", "--grid", csv, "--manifest",
                      (dir / "data" / "T07.yaml").string(), "--axis", "stemmer",
                      "--level", "krovetz", "--measure", "ERR", "--json",
                      "--replicates", "20000"});
  ASSERT_EQ(j.code, kExitOk) << j.err;
  const auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["n_systems"], 102);
  EXPECT_EQ(parsed["collection"], "T07");

  EXPECT_EQ(cli({"stats", "--grid", csv, "--axis", "stoplist", "--level",
                 "kstem", "--measure", "AP"}).code,
            kExitData);
  EXPECT_EQ(cli({"stats", "--grid", csv, "--axis", "stoplist", "--level",
                 "indri", "--measure", "Twist"}).code,
            kExitData);
  std::filesystem::remove_all(dir);
}
