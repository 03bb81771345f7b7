#include "lmopt/ngram_model.hpp"

#include "lmopt/errors.hpp"
#include "lmopt/numeric.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace lmopt {

Vocabulary::Vocabulary(const Corpus& train, std::uint64_t min_unigram_count) {
  min_count_ = min_unigram_count;

  // Raw counts per corpus token id, markers included.
  std::vector<std::uint64_t> raw(train.distinct_tokens(), 0);
  for (const Sentence& sentence : train.sentences())
    for (const TokenId id : sentence.tokens) ++raw[id];

  const auto reserve = [&](const std::string& text) {
    const auto id = static_cast<TokenId>(texts_.size());
    texts_.push_back(text);
    counts_.push_back(0);
    ids_.emplace(texts_.back(), id);
    return id;
  };
  reserve(Corpus::kBosText);
  reserve(Corpus::kEosText);
  reserve(kUnkText);
  counts_[kBosId] = raw.size() > Corpus::kBos ? raw[Corpus::kBos] : 0;
  counts_[kEosId] = raw.size() > Corpus::kEos ? raw[Corpus::kEos] : 0;

  // Kept tokens ranked by count (ties broken lexicographically) so ids are
  // stable across runs; everything else merges into unk.
  std::vector<TokenId> kept;
  std::uint64_t unk_mass = 0;
  for (TokenId raw_id = 2; raw_id < raw.size(); ++raw_id) {
    if (raw[raw_id] == 0) continue;
    if (raw[raw_id] >= min_unigram_count && train.token_text(raw_id) != kUnkText)
      kept.push_back(raw_id);
    else
      unk_mass += raw[raw_id];  // literal "<unk>" text merges here too
  }
  std::sort(kept.begin(), kept.end(), [&](TokenId a, TokenId b) {
    if (raw[a] != raw[b]) return raw[a] > raw[b];
    return train.token_text(a) < train.token_text(b);
  });
  counts_[kUnkId] = unk_mass;
  for (const TokenId raw_id : kept) {
    const TokenId id = reserve(train.token_text(raw_id));
    counts_[id] = raw[raw_id];
  }
}

TokenId Vocabulary::id(std::string_view token) const {
  const auto it = ids_.find(token);
  return it == ids_.end() ? kUnkId : it->second;
}

Vocabulary Vocabulary::from_entries(std::vector<std::string> texts,
                                    std::vector<std::uint64_t> counts,
                                    std::uint64_t min_count) {
  Vocabulary vocab;
  vocab.texts_ = std::move(texts);
  vocab.counts_ = std::move(counts);
  vocab.min_count_ = min_count;
  if (vocab.texts_.size() != vocab.counts_.size() || vocab.texts_.size() < 3)
    throw UsageError("vocabulary entries malformed");
  for (TokenId id = 0; id < vocab.texts_.size(); ++id)
    vocab.ids_.emplace(vocab.texts_[id], id);
  return vocab;
}

NgramKey NgramKey::of(std::span<const TokenId> gram) {
  NgramKey key;
  key.len = static_cast<std::uint8_t>(gram.size());
  std::copy(gram.begin(), gram.end(), key.ids.begin());
  return key;
}

std::size_t NgramKeyHash::operator()(const NgramKey& key) const {
  Fnv1a hash;
  hash.update(key.ids.data(), key.len * sizeof(TokenId));
  return static_cast<std::size_t>(hash.digest());
}

std::uint64_t CountTable::count(std::span<const TokenId> gram) const {
  const auto it = counts_.find(NgramKey::of(gram));
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t CountTable::context_total(std::span<const TokenId> context) const {
  const auto it = context_totals_.find(NgramKey::of(context));
  return it == context_totals_.end() ? 0 : it->second;
}

void CountTable::add(std::span<const TokenId> gram) {
  ++counts_[NgramKey::of(gram)];
  ++context_totals_[NgramKey::of(gram.subspan(0, gram.size() - 1))];
}

void CountTable::add_raw(NgramKey key, std::uint64_t count) {
  counts_[key] = count;
}

void CountTable::add_raw_context(NgramKey key, std::uint64_t total) {
  context_totals_[key] = total;
}

void CountTable::apply_threshold(std::uint64_t min_count) {
  std::erase_if(counts_, [&](const auto& kv) { return kv.second < min_count; });
}

NgramModel::NgramModel(int max_order, Vocabulary vocab,
                       std::vector<CountTable> tables,
                       std::vector<std::uint64_t> thresholds)
    : max_order_(max_order),
      vocab_(std::move(vocab)),
      tables_(std::move(tables)),
      thresholds_(std::move(thresholds)) {}

namespace {

// Sorted-entry hashing so the digest is independent of hash-map order.
void hash_table(Fnv1a& hash, const CountTable::Map& map) {
  std::vector<std::pair<NgramKey, std::uint64_t>> entries(map.begin(), map.end());
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.first.ids < b.first.ids;
  });
  for (const auto& [key, value] : entries) {
    hash.update(key.ids.data(), key.len * sizeof(TokenId));
    hash.update_u64(value);
  }
}

}  // namespace

std::uint64_t NgramModel::content_hash() const {
  Fnv1a hash;
  hash.update_u64(static_cast<std::uint64_t>(max_order_));
  for (const auto t : thresholds_) hash.update_u64(t);
  for (TokenId id = 0; id < vocab_.size(); ++id) {
    hash.update(vocab_.token(id).data(), vocab_.token(id).size());
    hash.update_u64(vocab_.count(id));
  }
  for (const CountTable& table : tables_) {
    hash_table(hash, table.counts());
    hash_table(hash, table.context_totals());
  }
  return hash.digest();
}

namespace {

// Sentence re-encoded with model ids, OOV mapped to unk. The remap is cached
// per corpus token id.
struct Encoder {
  const Corpus& corpus;
  const Vocabulary& vocab;
  std::vector<TokenId> remap;

  Encoder(const Corpus& c, const Vocabulary& v)
      : corpus(c), vocab(v), remap(c.distinct_tokens(), Vocabulary::kUnkId) {
    for (TokenId raw = 0; raw < remap.size(); ++raw)
      remap[raw] = vocab.id(corpus.token_text(raw));
  }

  std::vector<TokenId> encode(const Sentence& sentence) const {
    std::vector<TokenId> out(sentence.tokens.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = remap[sentence.tokens[i]];
    return out;
  }
};

}  // namespace

NgramModel train(const Corpus& corpus, int max_order,
                 std::span<const std::uint64_t> thresholds) {
  if (max_order < 1 || max_order > kMaxOrder)
    throw UsageError("train: order must lie in [1, " + std::to_string(kMaxOrder) + "]");
  if (thresholds.size() != static_cast<std::size_t>(max_order))
    throw UsageError("train: need one threshold per order");
  if (corpus.size() == 0) throw TrainError("train: empty corpus");

  Vocabulary vocab(corpus, thresholds[0]);
  Encoder encoder(corpus, vocab);

  std::vector<CountTable> tables;
  tables.reserve(max_order);
  for (int j = 1; j <= max_order; ++j) tables.emplace_back(j);

  for (const Sentence& sentence : corpus.sentences()) {
    const std::vector<TokenId> ids = encoder.encode(sentence);
    const std::span<const TokenId> all(ids);
    for (int j = 1; j <= max_order; ++j) {
      if (ids.size() < static_cast<std::size_t>(j)) continue;
      for (std::size_t t = 0; t + j <= ids.size(); ++t)
        tables[j - 1].add(all.subspan(t, j));
    }
  }
  for (int j = 1; j <= max_order; ++j)
    tables[j - 1].apply_threshold(thresholds[j - 1]);

  return NgramModel(max_order, std::move(vocab), std::move(tables),
                    std::vector<std::uint64_t>(thresholds.begin(), thresholds.end()));
}

Real mle_prob(const NgramModel& model, int order, TokenId target,
              std::span<const TokenId> context) {
  if (order < 1 || order > model.max_order())
    throw UsageError("mle_prob: order out of range");
  if (context.size() != static_cast<std::size_t>(order - 1))
    throw UsageError("mle_prob: context length must be order-1");

  const CountTable& table = model.table(order);
  const std::uint64_t denominator = table.context_total(context);
  if (denominator == 0) return 0.0;

  std::array<TokenId, kMaxOrder> gram;
  std::copy(context.begin(), context.end(), gram.begin());
  gram[context.size()] = target;
  const std::uint64_t numerator =
      table.count(std::span<const TokenId>(gram.data(), context.size() + 1));
  return static_cast<Real>(numerator) / static_cast<Real>(denominator);
}

ProbabilityMatrix probability_matrix(const NgramModel& model, const Corpus& text) {
  Encoder encoder(text, model.vocab());
  const int n = model.max_order();

  std::size_t scored = 0;
  for (const Sentence& sentence : text.sentences()) scored += sentence.scored_tokens();

  ProbabilityMatrix matrix;
  matrix.p.resize(static_cast<Index>(scored), n);
  matrix.positions.reserve(scored);

  Index row = 0;
  for (std::uint32_t s = 0; s < text.sentences().size(); ++s) {
    const std::vector<TokenId> ids = encoder.encode(text.sentences()[s]);
    const std::span<const TokenId> all(ids);
    for (std::size_t t = 1; t + 1 < ids.size(); ++t) {
      for (int j = 1; j <= n; ++j) {
        matrix.p(row, j - 1) =
            t + 1 >= static_cast<std::size_t>(j)
                ? mle_prob(model, j, ids[t], all.subspan(t - (j - 1), j - 1))
                : 0.0;
      }
      matrix.positions.push_back({s, static_cast<std::uint32_t>(t)});
      ++row;
    }
  }
  return matrix;
}

void write_probability_matrix_csv(const ProbabilityMatrix& matrix, std::ostream& out) {
  out << "position";
  for (Index j = 0; j < matrix.cols(); ++j) out << ",p" << (j + 1);
  out << '\n';
  char buffer[64];
  for (Index i = 0; i < matrix.rows(); ++i) {
    out << i;
    for (Index j = 0; j < matrix.cols(); ++j) {
      std::snprintf(buffer, sizeof buffer, "%.17g", matrix.p(i, j));
      out << ',' << buffer;
    }
    out << '\n';
  }
}

}  // namespace lmopt
