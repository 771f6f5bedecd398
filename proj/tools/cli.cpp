#include "gop/cli.hpp"

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "gop/grid.hpp"
#include "gop/http_server.hpp"
#include "gop/service.hpp"

namespace gop {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<std::string, std::string> split_ref(const std::string& ref) {
  const auto eq = ref.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == ref.size()) {
    throw UsageError("expected axis=level, got '" + ref + "'");
  }
  return {ref.substr(0, eq), ref.substr(eq + 1)};
}

ServiceConfig service_config(const std::string& path) {
  auto config = load_config(path);
  apply_env_overrides(config);
  config.validate();
  return config;
}

void write_report(const CollectionManifest& m, const CompletenessReport& r,
                  std::ostream& os) {
  os << m.collection_id << ": " << r.loaded << "/" << r.expected
     << " systems (" << std::fixed << std::setprecision(1) << r.percent()
     << "%)\n";
  os << std::defaultfloat;
  for (const auto& c : r.missing) {
    os << "missing " << m.format_system_id(c) << "\n";
  }
  for (const auto& u : r.unrecognized) os << "unrecognized " << u << "\n";
}

// ingest

struct IngestArgs {
  std::string manifest;
  std::string out;
  std::string report;
};

int cmd_ingest(const IngestArgs& a, std::ostream&, std::ostream& err) {
  auto manifest =
      std::make_shared<const CollectionManifest>(load_manifest(a.manifest));
  const auto qrels = load_qrels(*manifest);
  const auto measures = manifest_measures(*manifest, qrels.max_grade());
  CompletenessReport report;
  const auto grid = ingest_grid(manifest, measures, &report);

  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + a.out, "out");
  export_scores(grid, out);
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + a.out, "out");

  if (!a.report.empty()) {
    std::ofstream rep(a.report);
    if (!rep) throw Error(ErrorKind::kIo, "cannot write " + a.report, "report");
    write_report(*manifest, report, rep);
  }
  write_report(*manifest, report, err);
  return kExitOk;
}

// serve

struct ServeArgs {
  std::string config;
  int port = -1;
  std::string host;
};

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const ServeArgs& a, std::ostream& out, std::ostream& err) {
  auto config = service_config(a.config);
  if (a.port >= 0) config.port = a.port;
  if (!a.host.empty()) config.host = a.host;
  std::error_code ec;
  if (!std::filesystem::is_directory(config.data_dir, ec)) {
    throw Error(ErrorKind::kIo,
                "data directory '" + config.data_dir.string() +
                    "' does not exist",
                "data_dir");
  }

  Explorer explorer(config);
  HttpServer server(explorer);
  const int port = server.bind(config.host, config.port);
  if (port < 0) {
    throw Error(ErrorKind::kIo, "cannot bind " + config.host + ":" +
                                    std::to_string(config.port));
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread listener([&server] { server.listen(); });
  out << "listening on http://" << config.host << ":" << port << std::endl;

  int code = kExitOk;
  try {
    for (auto& grid : load_grids(config)) {
      err << "loaded " << grid->collection_id() << " (" << grid->loaded_count()
          << "/" << grid->system_count() << " systems)\n";
      explorer.add_grid(std::move(grid));
    }
    explorer.set_ready(true);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    server.stop();
    code = kExitData;
  }
  listener.join();
  g_server = nullptr;
  return code;
}

// export

struct ExportArgs {
  std::string config;
  std::string request;
  std::string component;
  std::vector<std::string> link;
  std::string out;
};

int cmd_export(const ExportArgs& a, std::ostream& out, std::ostream& err) {
  const auto config = service_config(a.config);
  const std::string body = read_file(a.request);
  Explorer explorer(config);
  for (auto& grid : load_grids(config)) explorer.add_grid(std::move(grid));
  explorer.set_ready(true);

  ApiResponse response;
  if (!a.component.empty()) {
    const auto [axis, level] = split_ref(a.component);
    response = explorer.component_tooltip(
        {{"axis", axis}, {"level", level}, {"state", body}});
  } else if (!a.link.empty()) {
    const auto [axis_a, level_a] = split_ref(a.link.at(0));
    const auto [axis_b, level_b] = split_ref(a.link.at(1));
    response = explorer.link_tooltip({{"axisA", axis_a},
                                      {"levelA", level_a},
                                      {"axisB", axis_b},
                                      {"levelB", level_b},
                                      {"state", body}});
  } else {
    response = explorer.diagram(body);
  }

  if (response.status != 200) {
    err << response.body << "\n";
    return kExitData;
  }
  if (a.out.empty() || a.out == "-") {
    out << response.body;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::kIo, "cannot write " + a.out, "out");
    f << response.body;
  }
  return kExitOk;
}

// stats

struct StatsArgs {
  std::string grid;
  std::string manifest;
  std::string collection;
  std::string axis;
  std::string level;
  std::string measure;
  std::string topic;
  double alpha = 0.05;
  std::size_t replicates = kDefaultReplicates;
  std::uint64_t seed = kDefaultSeed;
  std::size_t top_k = 5;
  bool json = false;
};

std::string fmt(const nlohmann::ordered_json& v) {
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_tooltip(const nlohmann::ordered_json& t, std::ostream& os) {
  std::string constraint;
  for (const auto& c : t["constraint"]) {
    if (!constraint.empty()) constraint += " & ";
    constraint += c["axis"].get<std::string>() + "=" +
                  c["level"].get<std::string>();
  }
  os << "collection  " << fmt(t["collection"]) << "\n"
     << "measure     " << fmt(t["measure"]) << "\n"
     << "topic       " << (t["topic"].is_null() ? "all" : fmt(t["topic"]))
     << "\n"
     << "component   " << constraint << "\n"
     << "mean        " << fmt(t["mean"]) << "\n"
     << "systems     " << t["n_systems"].get<std::size_t>() << "\n";
  if (!t["best"].is_null()) {
    os << "best        " << fmt(t["best"]["system"]) << "  "
       << fmt(t["best"]["score"]) << "\n";
  }
  os << "\ntop " << t["top"].size() << "\n";
  std::size_t rank = 1;
  for (const auto& r : t["top"]) {
    os << "  " << std::setw(2) << rank++ << "  " << std::left << std::setw(36)
       << fmt(r["system"]) << std::right << fmt(r["score"]) << "\n";
  }
  const auto& d = t["dunnett"];
  os << "\ndunnett     control " << fmt(d["control"]) << ", alpha "
     << fmt(d["alpha"]) << ", df " << d["df"].get<std::size_t>()
     << ", critical value " << fmt(d["critical_value"]) << "\n";
  os << "top group   " << d["top_group"].size() << " systems\n";
  for (const auto& id : d["top_group"]) os << "  " << fmt(id) << "\n";
}

int cmd_stats(const StatsArgs& a, std::ostream& out, std::ostream&) {
  std::ifstream in(a.grid, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + a.grid, "grid");
  std::shared_ptr<const ScoreGrid> grid;
  if (!a.manifest.empty()) {
    auto m = std::make_shared<const CollectionManifest>(load_manifest(a.manifest));
    grid = std::make_shared<const ScoreGrid>(import_scores(in, m));
  } else {
    const std::string id = a.collection.empty()
                               ? std::filesystem::path(a.grid).stem().string()
                               : a.collection;
    grid = std::make_shared<const ScoreGrid>(import_scores(in, id));
  }

  ServiceConfig config;
  config.alpha = a.alpha;
  config.mc_replicates = a.replicates;
  config.seed = a.seed;
  config.top_k = a.top_k;
  Explorer explorer(config);
  explorer.add_grid(grid);
  explorer.set_ready(true);

  ExplorationRequest request;
  request.collection = grid->collection_id();
  request.measure = a.measure;
  if (!a.topic.empty()) request.topic = a.topic;
  const auto resolved = explorer.resolve_request(request);

  Axis axis;
  try {
    axis = parse_axis(a.axis);
  } catch (const Error& e) {
    throw Error(e.kind(), e.what(), "axis");
  }
  const auto level = grid->manifest().find_level(axis, a.level);
  if (!level) {
    throw Error(ErrorKind::kUnknownLevel,
                "unknown " + std::string(axis_name(axis)) + " level '" +
                    a.level + "'",
                "level");
  }
  const auto tooltip = explorer.tooltip_json(resolved, {{axis, *level}});
  if (a.json) {
    out << tooltip.dump(2) << "\n";
  } else {
    print_tooltip(tooltip, out);
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Grid-of-points component explorer", "gop"};
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ing = app.add_subcommand("ingest", "Evaluate run files into a score CSV");
  ing->add_option("--manifest", ingest.manifest, "collection manifest (YAML)")
      ->required();
  ing->add_option("--out", ingest.out, "score CSV to write")->required();
  ing->add_option("--report", ingest.report, "completeness report file");

  ServeArgs serve;
  auto* srv = app.add_subcommand("serve", "Serve the HTTP API and static UI");
  srv->add_option("--config", serve.config, "service config (YAML)")->required();
  srv->add_option("--port", serve.port, "override port (0 = any free port)");
  srv->add_option("--host", serve.host, "override host");

  ExportArgs exp;
  auto* ex = app.add_subcommand(
      "export", "Write the diagram or tooltip JSON for a request file");
  ex->add_option("--config", exp.config, "service config (YAML)")->required();
  ex->add_option("--request", exp.request, "exploration request (JSON)")
      ->required();
  auto* comp = ex->add_option("--component", exp.component,
                              "component tooltip, axis=level");
  auto* link = ex->add_option("--link", exp.link,
                              "link tooltip, axis=level axis=level")
                   ->expected(2);
  comp->excludes(link);
  ex->add_option("--out", exp.out, "output file (default stdout)");

  StatsArgs stats;
  auto* st = app.add_subcommand("stats", "Marginal mean, top systems and Dunnett top group");
  st->add_option("--grid", stats.grid, "score CSV")->required();
  st->add_option("--manifest", stats.manifest, "manifest for level order and families");
  st->add_option("--collection", stats.collection, "collection id (default: CSV stem)");
  st->add_option("--axis", stats.axis)->required();
  st->add_option("--level", stats.level)->required();
  st->add_option("--measure", stats.measure)->required();
  st->add_option("--topic", stats.topic, "single topic (default: average)");
  st->add_option("--alpha", stats.alpha)->check(CLI::Range(0.0, 1.0));
  st->add_option("--replicates", stats.replicates);
  st->add_option("--seed", stats.seed);
  st->add_option("--top", stats.top_k);
  st->add_flag("--json", stats.json, "print the tooltip JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'gop --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (*ing) return cmd_ingest(ingest, out, err);
    if (*srv) return cmd_serve(serve, out, err);
    if (*ex) return cmd_export(exp, out, err);
    if (*st) return cmd_stats(stats, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what();
    if (!e.field().empty()) err << " [" << e.field() << "]";
    err << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace gop
