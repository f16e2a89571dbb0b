#include "dis2vec/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "dis2vec/embedding.hpp"
#include "dis2vec/errors.hpp"

namespace dis2vec {

std::vector<std::vector<std::string>> read_corpus(const std::string& path,
                                                  bool pretokenized,
                                                  const DomainVocabulary* vocab) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();

    std::vector<std::vector<std::string>> sentences;
    if (pretokenized) {
        // One sentence per line, tokens taken verbatim.
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            std::istringstream words(line);
            std::vector<std::string> sentence;
            std::string word;
            while (words >> word) sentence.push_back(std::move(word));
            if (!sentence.empty()) sentences.push_back(std::move(sentence));
        }
    } else {
        sentences = normalize(text);
    }
    if (sentences.empty()) {
        throw EmptyCorpusError("corpus file contains no sentences: " + path);
    }
    if (vocab != nullptr && !vocab->empty()) {
        for (auto& sentence : sentences) {
            sentence = join_phrases(sentence, *vocab);
        }
    }
    return sentences;
}

TrainArtifacts train_sentences(const std::vector<std::vector<std::string>>& sentences,
                               const DomainVocabulary& vocab,
                               const TrainingConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();

    TrainArtifacts art;
    art.vocab = vocab;
    art.table = WordTable::build(sentences, cfg.min_count);
    TokenStream stream = encode(sentences, art.table);
    if (cfg.subsample_t > 0.0) {
        stream = subsample(stream, art.table, cfg.subsample_t, cfg.seed);
    }
    art.result = train(stream, art.table, vocab, cfg);

    art.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return art;
}

TrainArtifacts train_corpus(const std::string& corpus_path,
                            const std::optional<std::string>& vocab_path,
                            const TrainingConfig& cfg, bool pretokenized) {
    DomainVocabulary vocab;
    if (vocab_path) {
        vocab = load_vocabulary(*vocab_path);
    }
    const auto sentences = read_corpus(corpus_path, pretokenized, &vocab);
    return train_sentences(sentences, vocab, cfg);
}

RunManifest run_train_command(const std::string& corpus_path,
                              const std::optional<std::string>& vocab_path,
                              const TrainingConfig& cfg, bool pretokenized,
                              const std::string& embeddings_out,
                              const std::optional<std::string>& manifest_out) {
    TrainArtifacts art = train_corpus(corpus_path, vocab_path, cfg, pretokenized);
    save_embeddings(embeddings_out, art.table, art.result.embeddings);

    RunManifest manifest;
    manifest.config = cfg;
    manifest.pretokenized = pretokenized;
    manifest.corpus_path = corpus_path;
    manifest.corpus_digest = fnv1a_file(corpus_path);
    if (vocab_path) {
        manifest.vocab_path = vocab_path;
        manifest.vocab_digest = fnv1a_file(*vocab_path);
    }
    manifest.embeddings_path = embeddings_out;
    manifest.wall_seconds = art.wall_seconds;
    manifest.epoch_losses = art.result.epoch_losses;
    manifest.pair_counts = art.result.pair_counts;
    manifest.vocab_size = art.table.size();
    manifest.total_tokens = art.table.total_tokens();

    if (manifest_out) {
        save_manifest(*manifest_out, manifest);
    }
    return manifest;
}

RunManifest replay_manifest(const std::string& manifest_path,
                            const std::optional<std::string>& embeddings_out) {
    const RunManifest recorded = load_manifest(manifest_path);

    const std::string corpus_digest = fnv1a_file(recorded.corpus_path);
    if (corpus_digest != recorded.corpus_digest) {
        throw DataError("corpus file " + recorded.corpus_path +
                        " does not match the manifest digest (got " + corpus_digest +
                        ", recorded " + recorded.corpus_digest + ")");
    }
    if (recorded.vocab_path) {
        const std::string vocab_digest = fnv1a_file(*recorded.vocab_path);
        if (vocab_digest != recorded.vocab_digest) {
            throw DataError("vocabulary file " + *recorded.vocab_path +
                            " does not match the manifest digest (got " + vocab_digest +
                            ", recorded " + recorded.vocab_digest + ")");
        }
    }

    const std::string out_path = embeddings_out.value_or(recorded.embeddings_path);
    return run_train_command(recorded.corpus_path, recorded.vocab_path, recorded.config,
                             recorded.pretokenized, out_path, std::nullopt);
}

} // namespace dis2vec
