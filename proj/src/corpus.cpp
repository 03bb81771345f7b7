#include "lmopt/corpus.hpp"

#include "lmopt/errors.hpp"
#include "lmopt/numeric.hpp"
#include "lmopt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace lmopt {

namespace {

// Unicode White_Space codepoints.
bool is_space(char32_t c) {
  switch (c) {
    case 0x0009: case 0x000A: case 0x000B: case 0x000C: case 0x000D:
    case 0x0020: case 0x0085: case 0x00A0: case 0x1680:
    case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

// General-category P* for ASCII, plus the common non-ASCII punctuation
// blocks. Not the full Unicode table; the rule only has to be deterministic.
bool is_punct(char32_t c) {
  if (c < 0x80) {
    switch (c) {
      case '!': case '"': case '#': case '%': case '&': case '\'':
      case '(': case ')': case '*': case ',': case '-': case '.':
      case '/': case ':': case ';': case '?': case '@': case '[':
      case '\\': case ']': case '_': case '{': case '}':
        return true;
      default:
        return false;
    }
  }
  switch (c) {
    case 0x00A1: case 0x00A7: case 0x00AB: case 0x00B6: case 0x00B7:
    case 0x00BB: case 0x00BF: case 0x30FB: case 0xFF1A: case 0xFF1B:
    case 0xFF1F: case 0xFF20: case 0xFF3F: case 0xFF5B: case 0xFF5D:
      return true;
    default:
      break;
  }
  return (c >= 0x2010 && c <= 0x2027) || (c >= 0x2030 && c <= 0x205E) ||
         (c >= 0x2E00 && c <= 0x2E52) || (c >= 0x3001 && c <= 0x3003) ||
         (c >= 0x3008 && c <= 0x3011) || (c >= 0x3014 && c <= 0x301F) ||
         (c >= 0xFE10 && c <= 0xFE19) || (c >= 0xFE30 && c <= 0xFE52) ||
         (c >= 0xFE54 && c <= 0xFE61) || (c >= 0xFF01 && c <= 0xFF03) ||
         (c >= 0xFF05 && c <= 0xFF0A) || (c >= 0xFF0C && c <= 0xFF0F) ||
         (c >= 0xFF3B && c <= 0xFF3D) || (c >= 0xFF5F && c <= 0xFF65);
}

char32_t to_lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 0x20;
  if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 0x20;  // Latin-1
  return c;
}

void append_utf8(std::string& out, char32_t c) {
  if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

// Validating UTF-8 decoder. Rejects truncation, overlong forms, surrogates
// and out-of-range codepoints, reporting the byte offset of the sequence.
char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  const auto byte = [&](std::size_t i) -> unsigned {
    return static_cast<unsigned char>(text[i]);
  };
  const std::size_t start = pos;
  const unsigned b0 = byte(pos++);
  if (b0 < 0x80) return b0;

  int extra;
  char32_t c;
  char32_t min;
  if ((b0 & 0xE0) == 0xC0) {
    extra = 1; c = b0 & 0x1F; min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2; c = b0 & 0x0F; min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3; c = b0 & 0x07; min = 0x10000;
  } else {
    throw IngestError("invalid UTF-8 lead byte", start);
  }
  if (pos + extra > text.size())
    throw IngestError("truncated UTF-8 sequence", start);
  for (int i = 0; i < extra; ++i) {
    const unsigned b = byte(pos++);
    if ((b & 0xC0) != 0x80)
      throw IngestError("invalid UTF-8 continuation byte", start);
    c = (c << 6) | (b & 0x3F);
  }
  if (c < min) throw IngestError("overlong UTF-8 sequence", start);
  if (c >= 0xD800 && c <= 0xDFFF)
    throw IngestError("UTF-8 encoded surrogate", start);
  if (c > 0x10FFFF) throw IngestError("codepoint out of range", start);
  return c;
}

std::string normalize_token(const std::u32string& raw) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && is_punct(raw[begin])) ++begin;
  while (end > begin && is_punct(raw[end - 1])) --end;
  std::string out;
  for (std::size_t i = begin; i < end; ++i) append_utf8(out, to_lower(raw[i]));
  return out;
}

std::vector<std::uint32_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(seed);
  shuffle(std::span<std::uint32_t>(perm), rng);
  return perm;
}

}  // namespace

TokenTable::TokenTable() {
  intern(Corpus::kBosText);
  intern(Corpus::kEosText);
}

TokenId TokenTable::intern(std::string_view token) {
  if (const auto it = ids_.find(token); it != ids_.end()) return it->second;
  const auto id = static_cast<TokenId>(texts_.size());
  texts_.emplace_back(token);
  ids_.emplace(texts_.back(), id);
  return id;
}

Corpus tokenized_corpus(std::shared_ptr<const TokenTable> table,
                        std::vector<Sentence> sentences, std::string label) {
  Corpus corpus;
  corpus.table_ = std::move(table);
  corpus.sentences_ = std::move(sentences);
  corpus.source_label_ = std::move(label);
  return corpus;
}

Corpus Corpus::tokenize(std::string_view text, std::string source_label) {
  auto table = std::make_shared<TokenTable>();
  std::vector<Sentence> sentences;

  Sentence current;
  std::u32string word;
  current.tokens.push_back(kBos);

  const auto flush_word = [&] {
    if (word.empty()) return;
    const std::string token = normalize_token(word);
    word.clear();
    if (!token.empty()) current.tokens.push_back(table->intern(token));
  };
  const auto flush_line = [&] {
    flush_word();
    if (current.tokens.size() > 1) {
      current.tokens.push_back(kEos);
      sentences.push_back(std::move(current));
    }
    current = Sentence{};
    current.tokens.push_back(kBos);
  };

  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t c = decode_utf8(text, pos);
    if (c == U'\n') {
      flush_line();
    } else if (is_space(c)) {
      flush_word();
    } else {
      word.push_back(c);
    }
  }
  flush_line();

  return tokenized_corpus(std::move(table), std::move(sentences),
                          std::move(source_label));
}

Corpus Corpus::subset(std::span<const std::uint32_t> sentence_indices,
                      std::string label) const {
  std::vector<Sentence> picked;
  picked.reserve(sentence_indices.size());
  for (const auto i : sentence_indices) picked.push_back(sentences_.at(i));
  return tokenized_corpus(table_, std::move(picked), std::move(label));
}

void Corpus::write_text(std::ostream& out) const {
  for (const Sentence& sentence : sentences_) {
    for (std::size_t i = 1; i + 1 < sentence.tokens.size(); ++i) {
      if (i > 1) out << ' ';
      out << token_text(sentence.tokens[i]);
    }
    out << '\n';
  }
}

std::uint64_t Corpus::content_hash() const {
  Fnv1a hash;
  for (const Sentence& sentence : sentences_) {
    for (const TokenId id : sentence.tokens) {
      const std::string& text = token_text(id);
      hash.update(text.data(), text.size());
      hash.update("\x1f", 1);
    }
    hash.update("\x1e", 1);
  }
  return hash.digest();
}

SplitResult split(const Corpus& corpus, Real train_frac, std::uint64_t seed) {
  if (!(train_frac > 0.0 && train_frac < 1.0))
    throw UsageError("split: train fraction must lie in (0, 1)");
  const std::size_t n = corpus.size();
  const auto n_train = static_cast<std::size_t>(std::floor(static_cast<Real>(n) * train_frac));
  const std::size_t n_val = (n - n_train) / 2;
  const std::size_t n_test = n - n_train - n_val;
  if (n_train == 0 || n_val == 0 || n_test == 0)
    throw UsageError("split: corpus too small to populate train/validation/test");

  auto perm = seeded_permutation(n, seed);
  const auto part = [&](std::size_t begin, std::size_t count, const char* tag) {
    std::vector<std::uint32_t> indices(perm.begin() + begin,
                                       perm.begin() + begin + count);
    std::sort(indices.begin(), indices.end());
    return corpus.subset(indices, corpus.source_label() + "/" + tag);
  };
  return SplitResult{part(0, n_train, "train"),
                     part(n_train, n_val, "validation"),
                     part(n_train + n_val, n_test, "test")};
}

FoldPlan make_folds(const Corpus& corpus, int k, std::uint64_t seed) {
  if (k < 2) throw UsageError("make_folds: k must be at least 2");
  const std::size_t n = corpus.size();
  if (n < static_cast<std::size_t>(k))
    throw UsageError("make_folds: fewer sentences than folds");

  const auto perm = seeded_permutation(n, seed);
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.assignments.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    plan.assignments[perm[i]] = static_cast<std::uint32_t>(i % k);
  return plan;
}

void write_fold_plan_csv(const FoldPlan& plan, std::ostream& out) {
  out << "sentence_index,fold\n";
  for (std::size_t i = 0; i < plan.assignments.size(); ++i)
    out << i << ',' << plan.assignments[i] << '\n';
}

}  // namespace lmopt
