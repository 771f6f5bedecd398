#include <algorithm>
#include <charconv>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include "gop/error.hpp"
#include "gop/grid.hpp"

namespace gop {

namespace {

constexpr std::string_view kHeader =
    "system,stoplist,stemmer,model,measure,topic,score";
constexpr std::size_t kColumns = 7;

Error row_error(std::size_t row, const std::string& what) {
  return Error(ErrorKind::kParse, "row " + std::to_string(row) + ": " + what);
}

bool split_row(std::string_view line,
               std::array<std::string_view, kColumns>& out) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::size_t col = 0;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (col >= kColumns) return false;
    if (pos == std::string_view::npos) {
      out[col++] = line.substr(start);
      break;
    }
    out[col++] = line.substr(start, pos - start);
    start = pos + 1;
  }
  return col == kColumns;
}

}  // namespace

void export_scores(const ScoreGrid& grid, std::ostream& out) {
  const auto& m = grid.manifest();
  out << kHeader << '\n';
  char buf[64];
  std::string line;
  for (std::size_t s = 0; s < grid.system_count(); ++s) {
    if (!grid.loaded(s)) continue;
    const auto config = grid.system(s);
    std::string prefix = m.format_system_id(config);
    for (Axis axis : kAllAxes) {
      prefix += ',';
      prefix += m.level_name(axis, config.level(axis));
    }
    for (std::size_t mi = 0; mi < grid.measure_count(); ++mi) {
      const auto& mname = grid.measures()[mi].name;
      for (std::size_t t = 0; t < grid.topic_count(); ++t) {
        auto res = std::to_chars(buf, buf + sizeof buf, grid.score(s, mi, t),
                                 std::chars_format::general, 17);
        line.assign(prefix);
        line += ',';
        line += mname;
        line += ',';
        line += grid.topic_ids()[t];
        line += ',';
        line.append(buf, res.ptr);
        line += '\n';
        out << line;
      }
    }
  }
}

ScoreGrid import_scores(std::istream& in,
                        std::shared_ptr<const CollectionManifest> manifest) {
  const auto& m = *manifest;
  std::string raw;
  if (!std::getline(in, raw)) {
    throw row_error(1, "missing header");
  }
  if (!raw.empty() && raw.back() == '\r') raw.pop_back();
  if (raw != kHeader) {
    throw row_error(1, "header must be '" + std::string(kHeader) + "'");
  }

  const auto registry = MeasureRegistry::standard(
      m.rbp_persistence, m.max_grade.value_or(1));
  std::vector<MeasureId> measures;
  // Cells are collected per measure first since the measure list is only
  // known once the whole file has been read.
  std::vector<std::vector<double>> per_measure;
  std::vector<std::vector<std::uint8_t>> filled;
  const std::size_t systems = m.grid_size();
  const std::size_t topics = m.topic_ids.size();

  std::unordered_map<std::string, std::size_t> system_cache;
  std::unordered_map<std::string, std::size_t> topic_lookup;
  for (std::size_t t = 0; t < topics; ++t) topic_lookup.emplace(m.topic_ids[t], t);

  std::array<std::string_view, kColumns> cols;
  std::size_t row = 1;
  std::string key;
  while (std::getline(in, raw)) {
    ++row;
    if (raw.empty() || raw == "\r") continue;
    if (!split_row(raw, cols)) {
      throw row_error(row, "expected 7 comma-separated columns");
    }

    key.assign(cols[0]);
    std::size_t sys;
    if (auto it = system_cache.find(key); it != system_cache.end()) {
      sys = it->second;
    } else {
      SystemConfig config;
      for (Axis axis : kAllAxes) {
        const auto name = cols[1 + axis_slot(axis)];
        const auto idx = m.find_level(axis, name);
        if (!idx) {
          throw Error(ErrorKind::kUnknownLevel,
                      "row " + std::to_string(row) + ": unknown " +
                          std::string(axis_name(axis)) + " level '" +
                          std::string(name) + "'",
                      std::string(axis_name(axis)));
        }
        config.levels[axis_slot(axis)] = static_cast<std::uint16_t>(*idx);
      }
      if (m.format_system_id(config) != key) {
        throw row_error(row, "system id '" + key +
                                 "' does not match its level columns");
      }
      sys = m.system_index(config);
      system_cache.emplace(key, sys);
    }

    std::size_t mi = measures.size();
    for (std::size_t i = 0; i < measures.size(); ++i) {
      if (measures[i].name == cols[4]) {
        mi = i;
        break;
      }
    }
    if (mi == measures.size()) {
      try {
        measures.push_back(registry.find(cols[4]));
      } catch (const Error& e) {
        throw Error(e.kind(), "row " + std::to_string(row) + ": " + e.what(),
                    "measure");
      }
      measures.back().name = std::string(cols[4]);
      per_measure.emplace_back(systems * topics, 0.0);
      filled.emplace_back(systems * topics, 0);
    }

    key.assign(cols[5]);
    auto tit = topic_lookup.find(key);
    if (tit == topic_lookup.end()) {
      throw row_error(row, "dimension mismatch: topic '" + key +
                               "' is not in the manifest");
    }

    double value = 0.0;
    const auto sv = cols[6];
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (ec != std::errc{} || ptr != sv.data() + sv.size()) {
      throw row_error(row, "non-numeric score '" + std::string(sv) + "'");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
      throw row_error(row, "score outside [0,1]");
    }
    const std::size_t cell = sys * topics + tit->second;
    if (filled[mi][cell]) throw row_error(row, "duplicate cell");
    filled[mi][cell] = 1;
    per_measure[mi][cell] = value;
  }

  if (measures.empty()) {
    throw Error(ErrorKind::kInsufficientData, "score file has no rows");
  }

  std::vector<std::uint8_t> loaded(systems, 0);
  for (std::size_t s = 0; s < systems; ++s) {
    std::size_t count = 0;
    for (std::size_t mi = 0; mi < measures.size(); ++mi) {
      for (std::size_t t = 0; t < topics; ++t) count += filled[mi][s * topics + t];
    }
    if (count == 0) continue;
    if (count != measures.size() * topics) {
      throw Error(ErrorKind::kParse,
                  "dimension mismatch: system " + m.system_id(s) + " has " +
                      std::to_string(count) + " of " +
                      std::to_string(measures.size() * topics) + " cells");
    }
    loaded[s] = 1;
  }

  const std::size_t nm = measures.size();
  std::vector<double> scores(systems * nm * topics, 0.0);
  for (std::size_t s = 0; s < systems; ++s) {
    for (std::size_t mi = 0; mi < nm; ++mi) {
      std::copy_n(per_measure[mi].begin() + s * topics, topics,
                  scores.begin() + (s * nm + mi) * topics);
    }
  }
  return ScoreGrid(std::move(manifest), std::move(measures), std::move(scores),
                   std::move(loaded));
}

ScoreGrid import_scores(std::istream& in, const std::string& collection_id) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  auto manifest = std::make_shared<CollectionManifest>();
  manifest->collection_id = collection_id;
  std::vector<std::string> topics;
  {
    std::istringstream scan(text);
    std::string raw;
    std::getline(scan, raw);  // header, validated by the second pass
    std::array<std::string_view, kColumns> cols;
    std::size_t row = 1;
    std::unordered_map<std::string, int> seen_topic;
    while (std::getline(scan, raw)) {
      ++row;
      if (raw.empty() || raw == "\r") continue;
      if (!split_row(raw, cols)) {
        throw row_error(row, "expected 7 comma-separated columns");
      }
      for (Axis axis : kAllAxes) {
        auto& levels = manifest->levels[axis_slot(axis)];
        const auto name = cols[1 + axis_slot(axis)];
        if (std::find(levels.begin(), levels.end(), name) == levels.end()) {
          levels.emplace_back(name);
        }
      }
      if (seen_topic.emplace(std::string(cols[5]), 0).second) {
        topics.emplace_back(cols[5]);
      }
    }
  }
  std::sort(topics.begin(), topics.end(),
            [](const std::string& a, const std::string& b) {
              return topic_less(a, b);
            });
  manifest->topic_ids = std::move(topics);
  manifest->model_families.assign(manifest->level_count(Axis::kModel),
                                  ModelFamily::kProbabilistic);
  manifest->validate();

  std::istringstream again(text);
  return import_scores(again, std::move(manifest));
}

}  // namespace gop
