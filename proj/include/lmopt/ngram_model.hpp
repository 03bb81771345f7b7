#pragma once

#include "lmopt/corpus.hpp"
#include "lmopt/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lmopt {

inline constexpr int kMaxOrder = 8;

// Model vocabulary: tokens whose training count reaches the unigram
// threshold get dense ids; everything else maps to <unk>. The markers and
// <unk> always have ids (they are structural), their counts stay honest.
class Vocabulary {
 public:
  static constexpr TokenId kBosId = 0;
  static constexpr TokenId kEosId = 1;
  static constexpr TokenId kUnkId = 2;
  static constexpr const char* kUnkText = "<unk>";

  Vocabulary() = default;
  Vocabulary(const Corpus& train, std::uint64_t min_unigram_count);

  TokenId id(std::string_view token) const;  // unk for out-of-vocabulary
  const std::string& token(TokenId id) const { return texts_.at(id); }
  std::uint64_t count(TokenId id) const { return counts_.at(id); }
  std::size_t size() const { return texts_.size(); }
  std::uint64_t min_unigram_count() const { return min_count_; }

  // Used by persistence; entries must satisfy the dense-id invariant.
  static Vocabulary from_entries(std::vector<std::string> texts,
                                 std::vector<std::uint64_t> counts,
                                 std::uint64_t min_count);

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> ids_;
  std::vector<std::string> texts_;
  std::vector<std::uint64_t> counts_;  // merged training counts (unk absorbs)
  std::uint64_t min_count_ = 0;
};

// Fixed-width n-gram key; unused slots are zero so equality can compare the
// whole array.
struct NgramKey {
  std::array<TokenId, kMaxOrder> ids{};
  std::uint8_t len = 0;

  static NgramKey of(std::span<const TokenId> gram);
  bool operator==(const NgramKey&) const = default;
};

struct NgramKeyHash {
  std::size_t operator()(const NgramKey& key) const;
};

// Counts for one order j: surviving j-grams (thresholded) plus pre-threshold
// context totals, which are the MLE denominators.
class CountTable {
 public:
  explicit CountTable(int order) : order_(order) {}

  int order() const { return order_; }
  std::uint64_t count(std::span<const TokenId> gram) const;
  std::uint64_t context_total(std::span<const TokenId> context) const;
  std::size_t size() const { return counts_.size(); }

  using Map = std::unordered_map<NgramKey, std::uint64_t, NgramKeyHash>;
  const Map& counts() const { return counts_; }
  const Map& context_totals() const { return context_totals_; }

  void add(std::span<const TokenId> gram);
  void add_raw(NgramKey key, std::uint64_t count);            // persistence
  void add_raw_context(NgramKey key, std::uint64_t total);    // persistence
  void apply_threshold(std::uint64_t min_count);

 private:
  int order_;
  Map counts_;
  Map context_totals_;
};

class NgramModel {
 public:
  NgramModel() = default;
  NgramModel(int max_order, Vocabulary vocab, std::vector<CountTable> tables,
             std::vector<std::uint64_t> thresholds);

  int max_order() const { return max_order_; }
  const Vocabulary& vocab() const { return vocab_; }
  const CountTable& table(int order) const { return tables_.at(order - 1); }
  std::span<const std::uint64_t> thresholds() const { return thresholds_; }

  // Order-independent hash of the vocabulary and all count tables.
  std::uint64_t content_hash() const;

 private:
  int max_order_ = 0;
  Vocabulary vocab_;
  std::vector<CountTable> tables_;
  std::vector<std::uint64_t> thresholds_;
};

// Count all n-gram windows up to max_order over the corpus (markers counted
// like ordinary tokens), then drop entries below their order's threshold.
// The vocabulary is built first and unk substitution applied before any
// higher-order counting.
NgramModel train(const Corpus& corpus, int max_order,
                 std::span<const std::uint64_t> thresholds);

// C(context+target) / C(context), both after unk substitution. Zero when the
// n-gram was dropped or never seen, and when the context total is absent:
// backing off is the mixture's job, not this function's.
Real mle_prob(const NgramModel& model, int order, TokenId target,
              std::span<const TokenId> context);

struct TokenRef {
  std::uint32_t sentence = 0;
  std::uint32_t position = 0;  // index within the padded sentence
};

// Row i: the component probabilities of scored token i at orders 1..n.
// Column j-1 holds the order-j probability (unigram first).
struct ProbabilityMatrix {
  Matrix p;
  std::vector<TokenRef> positions;

  Index rows() const { return p.rows(); }
  Index cols() const { return p.cols(); }
};

// One row per non-boundary token of `text`, encoded with the model
// vocabulary (OOV becomes unk). A position whose order-j context window
// would cross the sentence start gets probability zero at that order.
ProbabilityMatrix probability_matrix(const NgramModel& model, const Corpus& text);

// Debug export, CSV `position,p1,...,pn`.
void write_probability_matrix_csv(const ProbabilityMatrix& matrix, std::ostream& out);

}  // namespace lmopt
