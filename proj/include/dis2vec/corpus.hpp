#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dis2vec {

// Word <-> id mapping with corpus counts after min-count filtering.
// Ids are dense 0..N-1, assigned by descending count, ties broken
// lexicographically, so tables are identical across runs and platforms.
class WordTable {
public:
    static WordTable build(const std::vector<std::vector<std::string>>& sentences,
                           int min_count);
    // Build directly from (surface, count) pairs; counts below min_count are
    // dropped. Used by file loaders and tests.
    static WordTable from_counts(const std::vector<std::pair<std::string, long long>>& counts,
                                 int min_count);

    // -1 if the word is absent.
    int id_of(std::string_view word) const;
    const std::string& word_of(int id) const { return words_.at(static_cast<std::size_t>(id)); }
    long long count_of(int id) const { return counts_.at(static_cast<std::size_t>(id)); }
    long long total_tokens() const { return total_tokens_; }
    std::size_t size() const { return words_.size(); }

    const std::vector<std::string>& words() const { return words_; }
    const std::vector<long long>& counts() const { return counts_; }

private:
    std::vector<std::string> words_;
    std::vector<long long> counts_;
    std::unordered_map<std::string, int> index_;
    long long total_tokens_ = 0;
};

// Sentences of word ids. Sentence boundaries are preserved end to end;
// context windows never cross them.
using TokenStream = std::vector<std::vector<int>>;

// Lowercase, split into sentences on . ! ? and into tokens on anything that
// is not a letter, digit or internal hyphen. Bytes >= 0x80 are treated as
// letters so UTF-8 text passes through intact.
std::vector<std::vector<std::string>> normalize(std::string_view raw_text);

// Map surface sentences to ids, silently dropping words absent from the
// table (the standard treatment of min-count-filtered words).
TokenStream encode(const std::vector<std::vector<std::string>>& sentences,
                   const WordTable& table);

// Discard each occurrence of word w with probability
// max(0, 1 - sqrt(t / f(w))), f(w) = count(w) / total_tokens.
// One uniform variate is consumed per token, so the output is a pure
// function of (stream, table, t, seed).
TokenStream subsample(const TokenStream& stream, const WordTable& table,
                      double t, std::uint64_t seed);

// All (word, context) pairs within a fixed window of +-L positions, clipped
// at sentence bounds. Emitted in stream order: positions ascending, then
// context offset ascending (skipping the center).
std::vector<std::pair<int, int>> generate_pairs(const TokenStream& stream, int window);

// Number of pairs generate_pairs would emit, without materializing them.
long long count_pairs(const TokenStream& stream, int window);

} // namespace dis2vec
