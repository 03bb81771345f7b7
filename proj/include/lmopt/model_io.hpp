#pragma once

#include "lmopt/ngram_model.hpp"

#include <filesystem>

namespace lmopt {

// On-disk model layout under `dir`:
//   header.json           order, thresholds, seed, corpus hash
//   vocab.tsv             token <tab> id <tab> count
//   ngrams.<j>.tsv        id_1 .. id_j <tab> count        (thresholded)
//   contexts.<j>.tsv      id_1 .. id_{j-1} <tab> total    (pre-threshold)
// Context totals are not recoverable from the thresholded tables, so they
// are persisted alongside. All rows sorted, so identical models produce
// byte-identical files.
void save_model(const NgramModel& model, const std::filesystem::path& dir,
                std::uint64_t seed, std::uint64_t corpus_hash);

NgramModel load_model(const std::filesystem::path& dir);

}  // namespace lmopt
