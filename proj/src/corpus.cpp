#include "dis2vec/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "dis2vec/errors.hpp"
#include "dis2vec/rng.hpp"

namespace dis2vec {

namespace {

bool is_token_char(unsigned char c) {
    // ASCII letters/digits; bytes >= 0x80 pass through so UTF-8 sequences
    // stay intact.
    return std::isalnum(c) != 0 || c >= 0x80;
}

bool is_sentence_end(unsigned char c) {
    return c == '.' || c == '!' || c == '?';
}

} // namespace

std::vector<std::vector<std::string>> normalize(std::string_view raw_text) {
    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> sentence;
    std::string token;

    auto flush_token = [&] {
        if (!token.empty()) {
            sentence.push_back(std::move(token));
            token.clear();
        }
    };
    auto flush_sentence = [&] {
        flush_token();
        if (!sentence.empty()) {
            sentences.push_back(std::move(sentence));
            sentence.clear();
        }
    };

    const std::size_t n = raw_text.size();
    for (std::size_t i = 0; i < n; ++i) {
        unsigned char c = static_cast<unsigned char>(raw_text[i]);
        if (is_token_char(c)) {
            token.push_back(static_cast<char>(std::tolower(c)));
        } else if (c == '-' && !token.empty() && i + 1 < n &&
                   is_token_char(static_cast<unsigned char>(raw_text[i + 1]))) {
            // internal hyphen: keep "h5n1-like" as one token
            token.push_back('-');
        } else if (is_sentence_end(c)) {
            flush_sentence();
        } else {
            flush_token();
        }
    }
    flush_sentence();
    return sentences;
}

WordTable WordTable::build(const std::vector<std::vector<std::string>>& sentences,
                           int min_count) {
    std::unordered_map<std::string, long long> freq;
    for (const auto& sentence : sentences) {
        for (const auto& word : sentence) {
            ++freq[word];
        }
    }
    std::vector<std::pair<std::string, long long>> counts(freq.begin(), freq.end());
    return from_counts(counts, min_count);
}

WordTable WordTable::from_counts(const std::vector<std::pair<std::string, long long>>& counts,
                                 int min_count) {
    std::vector<std::pair<std::string, long long>> kept;
    kept.reserve(counts.size());
    for (const auto& [word, count] : counts) {
        if (count >= min_count) {
            kept.emplace_back(word, count);
        }
    }
    if (kept.empty()) {
        throw EmptyCorpusError("no word reached min_count=" + std::to_string(min_count));
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    WordTable table;
    table.words_.reserve(kept.size());
    table.counts_.reserve(kept.size());
    for (auto& [word, count] : kept) {
        table.index_.emplace(word, static_cast<int>(table.words_.size()));
        table.words_.push_back(std::move(word));
        table.counts_.push_back(count);
        table.total_tokens_ += count;
    }
    return table;
}

int WordTable::id_of(std::string_view word) const {
    auto it = index_.find(std::string(word));
    return it == index_.end() ? -1 : it->second;
}

TokenStream encode(const std::vector<std::vector<std::string>>& sentences,
                   const WordTable& table) {
    TokenStream stream;
    stream.reserve(sentences.size());
    for (const auto& sentence : sentences) {
        std::vector<int> ids;
        ids.reserve(sentence.size());
        for (const auto& word : sentence) {
            int id = table.id_of(word);
            if (id >= 0) ids.push_back(id);
        }
        stream.push_back(std::move(ids));
    }
    return stream;
}

TokenStream subsample(const TokenStream& stream, const WordTable& table,
                      double t, std::uint64_t seed) {
    std::vector<double> keep_prob(table.size());
    const double total = static_cast<double>(table.total_tokens());
    for (std::size_t id = 0; id < table.size(); ++id) {
        double f = static_cast<double>(table.count_of(static_cast<int>(id))) / total;
        keep_prob[id] = f <= t ? 1.0 : std::sqrt(t / f);
    }

    Rng rng(seed);
    TokenStream out;
    out.reserve(stream.size());
    for (const auto& sentence : stream) {
        std::vector<int> kept;
        kept.reserve(sentence.size());
        for (int id : sentence) {
            // one variate per token, so the stream is replayable
            if (rng.uniform() < keep_prob[static_cast<std::size_t>(id)]) {
                kept.push_back(id);
            }
        }
        out.push_back(std::move(kept));
    }
    return out;
}

std::vector<std::pair<int, int>> generate_pairs(const TokenStream& stream, int window) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(count_pairs(stream, window)));
    for (const auto& sentence : stream) {
        const int n = static_cast<int>(sentence.size());
        for (int i = 0; i < n; ++i) {
            const int lo = std::max(0, i - window);
            const int hi = std::min(n - 1, i + window);
            for (int j = lo; j <= hi; ++j) {
                if (j != i) pairs.emplace_back(sentence[i], sentence[j]);
            }
        }
    }
    return pairs;
}

long long count_pairs(const TokenStream& stream, int window) {
    long long total = 0;
    for (const auto& sentence : stream) {
        const int n = static_cast<int>(sentence.size());
        for (int i = 0; i < n; ++i) {
            const int lo = std::max(0, i - window);
            const int hi = std::min(n - 1, i + window);
            total += hi - lo; // window positions minus the center
        }
    }
    return total;
}

} // namespace dis2vec
