#include "lmopt/model_io.hpp"

#include "lmopt/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

namespace lmopt {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

std::string hex64(std::uint64_t v) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(v));
  return buffer;
}

void write_table(const CountTable::Map& map, const fs::path& path) {
  std::vector<std::pair<NgramKey, std::uint64_t>> entries(map.begin(), map.end());
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first.ids < b.first.ids; });
  auto out = open_out(path);
  for (const auto& [key, value] : entries) {
    for (int i = 0; i < key.len; ++i) {
      if (i) out << '\t';
      out << key.ids[i];
    }
    if (key.len) out << '\t';
    out << value << '\n';
  }
}

void read_table(CountTable& table, const fs::path& path, int id_columns, bool contexts) {
  auto in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    NgramKey key;
    key.len = static_cast<std::uint8_t>(id_columns);
    for (int i = 0; i < id_columns; ++i) {
      if (!(fields >> key.ids[i]))
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    }
    std::uint64_t value = 0;
    if (!(fields >> value))
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    if (contexts)
      table.add_raw_context(key, value);
    else
      table.add_raw(key, value);
  }
}

}  // namespace

void save_model(const NgramModel& model, const fs::path& dir, std::uint64_t seed,
                std::uint64_t corpus_hash) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  nlohmann::ordered_json header;
  header["format"] = 1;
  header["order"] = model.max_order();
  header["thresholds"] = std::vector<std::uint64_t>(model.thresholds().begin(),
                                                    model.thresholds().end());
  header["seed"] = seed;
  header["corpus_hash"] = hex64(corpus_hash);
  header["model_hash"] = hex64(model.content_hash());
  open_out(dir / "header.json") << header.dump(2) << '\n';

  {
    auto out = open_out(dir / "vocab.tsv");
    const Vocabulary& vocab = model.vocab();
    for (TokenId id = 0; id < vocab.size(); ++id)
      out << vocab.token(id) << '\t' << id << '\t' << vocab.count(id) << '\n';
  }

  for (int j = 1; j <= model.max_order(); ++j) {
    const CountTable& table = model.table(j);
    write_table(table.counts(), dir / ("ngrams." + std::to_string(j) + ".tsv"));
    write_table(table.context_totals(), dir / ("contexts." + std::to_string(j) + ".tsv"));
  }
}

NgramModel load_model(const fs::path& dir) {
  nlohmann::json header;
  try {
    open_in(dir / "header.json") >> header;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad model header in " + dir.string() + ": " + e.what());
  }
  const int order = header.at("order").get<int>();
  auto thresholds = header.at("thresholds").get<std::vector<std::uint64_t>>();
  if (order < 1 || order > kMaxOrder ||
      thresholds.size() != static_cast<std::size_t>(order))
    throw IoError("bad model header in " + dir.string());

  std::vector<std::string> texts;
  std::vector<std::uint64_t> counts;
  {
    auto in = open_in(dir / "vocab.tsv");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto tab1 = line.find('\t');
      const auto tab2 = line.find('\t', tab1 + 1);
      if (tab1 == std::string::npos || tab2 == std::string::npos)
        throw IoError(dir.string() + "/vocab.tsv: malformed row");
      texts.push_back(line.substr(0, tab1));
      counts.push_back(std::stoull(line.substr(tab2 + 1)));
    }
  }
  Vocabulary vocab = Vocabulary::from_entries(std::move(texts), std::move(counts),
                                              thresholds[0]);

  std::vector<CountTable> tables;
  for (int j = 1; j <= order; ++j) {
    CountTable table(j);
    read_table(table, dir / ("ngrams." + std::to_string(j) + ".tsv"), j, false);
    read_table(table, dir / ("contexts." + std::to_string(j) + ".tsv"), j - 1, true);
    tables.push_back(std::move(table));
  }
  return NgramModel(order, std::move(vocab), std::move(tables), std::move(thresholds));
}

}  // namespace lmopt
