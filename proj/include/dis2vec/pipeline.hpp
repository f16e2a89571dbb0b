#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dis2vec/corpus.hpp"
#include "dis2vec/manifest.hpp"
#include "dis2vec/trainer.hpp"
#include "dis2vec/vocabulary.hpp"

namespace dis2vec {

// Corpus file -> surface sentences. Plain-text input runs through
// normalize(); pretokenized input is split on whitespace, one sentence per
// line. Multi-word vocabulary terms are joined when a vocabulary is given.
std::vector<std::vector<std::string>> read_corpus(const std::string& path,
                                                  bool pretokenized,
                                                  const DomainVocabulary* vocab);

struct TrainArtifacts {
    WordTable table;
    DomainVocabulary vocab; // empty when no vocabulary file
    TrainResult result;
    double wall_seconds = 0.0;
};

// normalize/join -> word table -> encode -> subsample -> train.
TrainArtifacts train_corpus(const std::string& corpus_path,
                            const std::optional<std::string>& vocab_path,
                            const TrainingConfig& cfg, bool pretokenized);

// Same, from sentences already in memory (the sweep and tests skip the
// filesystem round-trip).
TrainArtifacts train_sentences(const std::vector<std::vector<std::string>>& sentences,
                               const DomainVocabulary& vocab,
                               const TrainingConfig& cfg);

// Full train command: trains, writes the embeddings file and the manifest,
// returns the manifest.
RunManifest run_train_command(const std::string& corpus_path,
                              const std::optional<std::string>& vocab_path,
                              const TrainingConfig& cfg, bool pretokenized,
                              const std::string& embeddings_out,
                              const std::optional<std::string>& manifest_out);

// Re-run a recorded run. Input digests must match; the embeddings file
// written to embeddings_out (or the manifest's recorded path) is
// byte-identical to the original for deterministic (1-worker) runs.
RunManifest replay_manifest(const std::string& manifest_path,
                            const std::optional<std::string>& embeddings_out);

} // namespace dis2vec
