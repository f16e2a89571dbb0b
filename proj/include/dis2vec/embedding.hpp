#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dis2vec/corpus.hpp"

namespace dis2vec {

// Word and context matrices, |vocab| x dim, row-major doubles.
class EmbeddingSet {
public:
    EmbeddingSet() = default;
    EmbeddingSet(std::size_t n, int dim)
        : n_(n), dim_(dim),
          word_(n * static_cast<std::size_t>(dim), 0.0),
          ctx_(n * static_cast<std::size_t>(dim), 0.0) {}

    double* word(int id) { return word_.data() + static_cast<std::size_t>(id) * dim_; }
    const double* word(int id) const { return word_.data() + static_cast<std::size_t>(id) * dim_; }
    double* ctx(int id) { return ctx_.data() + static_cast<std::size_t>(id) * dim_; }
    const double* ctx(int id) const { return ctx_.data() + static_cast<std::size_t>(id) * dim_; }

    int dim() const { return dim_; }
    std::size_t size() const { return n_; }
    const std::vector<double>& word_data() const { return word_; }
    const std::vector<double>& ctx_data() const { return ctx_; }

    bool all_finite() const;

private:
    std::size_t n_ = 0;
    int dim_ = 0;
    std::vector<double> word_;
    std::vector<double> ctx_;
};

// Word vectors keyed by surface form; what the taxonomy stage consumes,
// whether they come from a fresh training run or an embeddings file.
class WordVectors {
public:
    WordVectors() = default;
    WordVectors(std::vector<std::string> words, std::vector<double> data, int dim);

    static WordVectors from_training(const WordTable& table, const EmbeddingSet& emb);

    // nullptr if absent.
    const double* vector_of(std::string_view word) const;
    const std::vector<std::string>& words() const { return words_; }
    int dim() const { return dim_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<double>& data() const { return data_; }

private:
    std::vector<std::string> words_;
    std::vector<double> data_; // row-major, row i belongs to words_[i]
    std::unordered_map<std::string, int> index_;
    int dim_ = 0;
};

// word2vec text format: first line "N T", then one line per word in id
// order: surface form followed by T reals. Values are written with fixed
// 6-decimal formatting, so write(read(file)) is byte-identical.
void save_embeddings(const std::string& path, const WordVectors& vectors);
void save_embeddings(const std::string& path, const WordTable& table,
                     const EmbeddingSet& emb);
WordVectors load_embeddings(const std::string& path);

} // namespace dis2vec
