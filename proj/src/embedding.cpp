#include "dis2vec/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dis2vec/errors.hpp"

namespace dis2vec {

bool EmbeddingSet::all_finite() const {
    for (double v : word_) {
        if (!std::isfinite(v)) return false;
    }
    for (double v : ctx_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

WordVectors::WordVectors(std::vector<std::string> words, std::vector<double> data, int dim)
    : words_(std::move(words)), data_(std::move(data)), dim_(dim) {
    if (data_.size() != words_.size() * static_cast<std::size_t>(dim_)) {
        throw ParseError("embedding matrix shape does not match word list");
    }
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
        index_.emplace(words_[i], static_cast<int>(i));
    }
}

WordVectors WordVectors::from_training(const WordTable& table, const EmbeddingSet& emb) {
    return WordVectors(table.words(), emb.word_data(), emb.dim());
}

const double* WordVectors::vector_of(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return nullptr;
    return data_.data() + static_cast<std::size_t>(it->second) * dim_;
}

namespace {

void write_rows(std::ofstream& out, const std::vector<std::string>& words,
                const double* data, int dim, const std::string& path) {
    out << words.size() << ' ' << dim << '\n';
    char buf[32];
    for (std::size_t i = 0; i < words.size(); ++i) {
        out << words[i];
        const double* row = data + i * static_cast<std::size_t>(dim);
        for (int d = 0; d < dim; ++d) {
            std::snprintf(buf, sizeof buf, " %.6f", row[d]);
            out << buf;
        }
        out << '\n';
    }
    if (!out) throw ParseError("failed writing embeddings to " + path);
}

} // namespace

void save_embeddings(const std::string& path, const WordVectors& vectors) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open embeddings file for writing: " + path);
    write_rows(out, vectors.words(), vectors.data().data(), vectors.dim(), path);
}

void save_embeddings(const std::string& path, const WordTable& table,
                     const EmbeddingSet& emb) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open embeddings file for writing: " + path);
    write_rows(out, table.words(), emb.word_data().data(), emb.dim(), path);
}

WordVectors load_embeddings(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open embeddings file: " + path);

    std::size_t n = 0;
    int dim = 0;
    std::string header;
    if (!std::getline(in, header)) throw ParseError("embeddings file is empty: " + path);
    {
        std::istringstream hs(header);
        if (!(hs >> n >> dim) || dim <= 0) {
            throw ParseError("bad embeddings header '" + header + "' in " + path);
        }
    }

    std::vector<std::string> words;
    words.reserve(n);
    std::vector<double> data;
    data.reserve(n * static_cast<std::size_t>(dim));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) throw ParseError("bad embeddings row in " + path);
        double v;
        int got = 0;
        while (ls >> v) {
            data.push_back(v);
            ++got;
        }
        if (got != dim) {
            throw ParseError("row for '" + word + "' has " + std::to_string(got) +
                             " values, expected " + std::to_string(dim) + " in " + path);
        }
        words.push_back(std::move(word));
    }
    if (words.size() != n) {
        throw ParseError("embeddings file declares " + std::to_string(n) + " rows but has " +
                         std::to_string(words.size()) + " in " + path);
    }
    return WordVectors(std::move(words), std::move(data), dim);
}

} // namespace dis2vec
