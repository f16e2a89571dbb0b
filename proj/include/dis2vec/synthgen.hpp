#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dis2vec/taxonomy.hpp"
#include "dis2vec/vocabulary.hpp"

namespace dis2vec {

// Parameters of the planted-structure corpus generator. Every sentence names
// exactly one disease and one term of one task category; with probability
// beta the term is one of the disease's designated true terms, otherwise a
// same-category decoy. Fillers follow a Zipfian profile so subsampling and
// smoothing see realistic counts.
struct SyntheticSpec {
    int n_diseases = 20;
    int terms_per_category = 10;      // shared candidate pool per category
    int true_terms_per_category = 2;  // per disease
    int n_filler_words = 2000;
    double beta = 0.9;                // P(sentence carries a true term)
    int n_sentences = 50000;
    int min_sentence_len = 6;
    int max_sentence_len = 10;
    // Relative weight of each length in [min, max], in order. Empty means
    // uniform; otherwise the size must be max - min + 1.
    std::vector<double> length_weights;
    double zipf_exponent = 1.0;
    std::uint64_t seed = 1;

    void validate() const; // throws InvalidSpecError
};

struct SyntheticData {
    std::vector<std::vector<std::string>> sentences;
    DomainVocabulary vocabulary;
    std::vector<AnnotationEntry> annotations; // the planted taxonomy

    // One sentence per line, space-separated tokens. Tokens are plain
    // lowercase alphanumerics that pass normalize() unchanged; read the
    // file back pretokenized to keep the sentence boundaries.
    std::string corpus_text() const;
};

SyntheticData generate(const SyntheticSpec& spec);

void write_corpus(const std::string& path, const SyntheticData& data);
void write_vocabulary(const std::string& path, const DomainVocabulary& vocab);

// Brute-force recoverability baseline: exact co-occurrence counts within a
// +-window, candidates ranked by pointwise mutual information with the
// disease token. Pairs that never co-occur score -infinity and rank last;
// for the min-max accuracy they are floored to (min finite score - 1).
// Shares the TaxonomyReport shape, with PMI in place of cosine.
TaxonomyReport pmi_oracle(const std::vector<std::vector<std::string>>& sentences,
                          const DomainVocabulary& vocab,
                          const std::vector<AnnotationEntry>& annotations,
                          int window);

} // namespace dis2vec
