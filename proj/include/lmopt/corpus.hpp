#pragma once

#include "lmopt/types.hpp"

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lmopt {

// One tokenized sentence, boundary markers included: the first token is
// always <s> and the last is </s>.
struct Sentence {
  std::vector<TokenId> tokens;

  std::size_t scored_tokens() const { return tokens.size() - 2; }
};

// Interning pool shared by a corpus and everything derived from it.
// Ids 0 and 1 are reserved for the boundary markers.
class TokenTable {
 public:
  TokenTable();

  TokenId intern(std::string_view token);
  const std::string& text(TokenId id) const { return texts_.at(id); }
  std::size_t size() const { return texts_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::unordered_map<std::string, TokenId, Hash, std::equal_to<>> ids_;
  std::vector<std::string> texts_;
};

// Immutable tokenized text. Sub-corpora made by split()/fold extraction share
// the parent's token table, so ids stay comparable across the parts.
class Corpus {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr const char* kBosText = "<s>";
  static constexpr const char* kEosText = "</s>";

  Corpus() = default;

  // Tokenizer rule: validate UTF-8, split lines, then per line: split on
  // whitespace runs, lowercase, strip leading/trailing punctuation, drop
  // tokens that become empty, drop lines that become empty, add <s>/</s>.
  // Throws IngestError (with byte offset) on malformed UTF-8.
  static Corpus tokenize(std::string_view utf8_text, std::string source_label);

  const std::vector<Sentence>& sentences() const { return sentences_; }
  std::size_t size() const { return sentences_.size(); }
  const std::string& source_label() const { return source_label_; }

  const std::string& token_text(TokenId id) const { return table_->text(id); }
  std::size_t distinct_tokens() const { return table_->size(); }

  // New corpus holding the given sentences (indices into this corpus), with
  // the token table shared.
  Corpus subset(std::span<const std::uint32_t> sentence_indices,
                std::string label) const;

  // Sentences rendered one per line, markers omitted. Inverse of tokenize()
  // for any corpus whose tokens survive the tokenizer rule unchanged.
  void write_text(std::ostream& out) const;

  std::uint64_t content_hash() const;

 private:
  friend Corpus tokenized_corpus(std::shared_ptr<const TokenTable> table,
                                 std::vector<Sentence> sentences,
                                 std::string label);

  std::shared_ptr<const TokenTable> table_;
  std::vector<Sentence> sentences_;
  std::string source_label_;
};

struct SplitResult {
  Corpus train;
  Corpus validation;
  Corpus test;
};

// Sentence-level disjoint partition: train gets floor(n * train_frac),
// validation floor(rest / 2), the remainder goes to test. Deterministic in
// (corpus size, train_frac, seed).
SplitResult split(const Corpus& corpus, Real train_frac, std::uint64_t seed);

struct FoldPlan {
  int k = 0;
  std::vector<std::uint32_t> assignments;  // per-sentence fold in [0, k)
  std::uint64_t seed = 0;
};

// Balanced fold assignment (sizes differ by at most one), deterministic in
// (sentence count, k, seed).
FoldPlan make_folds(const Corpus& corpus, int k, std::uint64_t seed);

// CSV with header `sentence_index,fold`.
void write_fold_plan_csv(const FoldPlan& plan, std::ostream& out);

}  // namespace lmopt
