#pragma once

#include <vector>

#include "dis2vec/corpus.hpp"
#include "dis2vec/rng.hpp"
#include "dis2vec/vocabulary.hpp"

namespace dis2vec {

enum class Restrict { all, in_vocab, not_in_vocab };

// Smoothed unigram distribution P(c) = count(c)^alpha / sum count^alpha over
// a support (all words, words in V, or words outside V), sampled in O(1) by
// the alias method. Probabilities are exact; no quantized 1e8-slot table.
// Immutable after construction.
class UnigramTable {
public:
    // vocab may be null when restrict == all. Throws EmptySupportError when
    // the restriction leaves nothing to sample.
    static UnigramTable build(const WordTable& table, double alpha,
                              Restrict restrict, const DomainVocabulary* vocab);

    // One uniform variate per draw.
    int draw(Rng& rng) const;

    const std::vector<int>& support() const { return support_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return support_.size(); }

private:
    std::vector<int> support_;
    std::vector<double> weights_; // normalized, sums to 1
    std::vector<double> alias_prob_;
    std::vector<int> alias_;
};

// Negative sampling for in-vocabulary pairs: with probability pi_s draw from
// the out-of-vocabulary table, otherwise from the in-vocabulary table. One
// uniform for the choice plus one for the table draw.
int draw_dd_negative(double pi_s, const UnigramTable& t_out,
                     const UnigramTable& t_in, Rng& rng);

} // namespace dis2vec
