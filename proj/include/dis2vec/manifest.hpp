#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dis2vec/trainer.hpp"

namespace dis2vec {

// Everything needed to reproduce a deterministic-mode run byte for byte:
// the resolved config plus the input files (checked by digest on replay).
struct RunManifest {
    TrainingConfig config;
    bool pretokenized = false;
    std::string corpus_path;
    std::string corpus_digest;
    std::optional<std::string> vocab_path;
    std::string vocab_digest; // empty when no vocabulary
    std::string embeddings_path;
    double wall_seconds = 0.0;
    std::vector<EpochLoss> epoch_losses;
    PairCounts pair_counts;
    std::size_t vocab_size = 0;     // words in the table
    long long total_tokens = 0;     // after min-count filtering
};

// FNV-1a 64-bit digest of a file's bytes, as 16 hex chars.
std::string fnv1a_file(const std::string& path);

void save_manifest(const std::string& path, const RunManifest& manifest);
RunManifest load_manifest(const std::string& path);

} // namespace dis2vec
