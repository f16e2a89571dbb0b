#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dis2vec/corpus.hpp"

namespace dis2vec {

enum class TermCategory : std::uint8_t {
    disease_name = 0,
    symptoms,
    exposures,
    transmission_methods,
    transmission_agents,
};
constexpr int kNumCategories = 5;
// The four characterization tasks (disease_name excluded).
constexpr TermCategory kTaskCategories[4] = {
    TermCategory::symptoms,
    TermCategory::exposures,
    TermCategory::transmission_methods,
    TermCategory::transmission_agents,
};

enum class DiseaseClass : std::uint8_t { emerging = 0, endemic, rare };

const std::string& to_string(TermCategory c);
const std::string& to_string(DiseaseClass c);
TermCategory category_from_string(std::string_view s); // throws InvalidCategoryError
DiseaseClass disease_class_from_string(std::string_view s); // throws ParseError

// How a (word, context) pair relates to the domain vocabulary:
// DD = both in V, NN = neither, Mixed = exactly one.
enum class PairCategory : std::uint8_t { DD, NN, Mixed };

// The pre-specified domain term list. Multi-word terms are stored
// underscore-joined, normalized exactly like corpus tokens. Immutable after
// load; safe for concurrent reads.
class DomainVocabulary {
public:
    DomainVocabulary() = default;

    // term must already be normalized (see normalize_term).
    void add_term(const std::string& term, TermCategory category);
    void add_disease(const std::string& name, DiseaseClass cls);

    bool contains(std::string_view term) const;
    bool empty() const { return categories_.empty(); }
    std::size_t term_count() const { return categories_.size(); }

    // Sorted for deterministic iteration.
    std::vector<std::string> terms() const;
    std::vector<std::string> terms_in_category(TermCategory c) const;
    std::vector<TermCategory> categories_of(std::string_view term) const;

    const std::map<std::string, DiseaseClass>& diseases() const { return diseases_; }

    // Fraction of term-category assignments per category, over terms that are
    // not disease names. Multi-category terms count once per category.
    std::map<TermCategory, double> category_proportions() const;

    // Multi-word terms as word sequences, grouped by first word and sorted by
    // descending length; used by join_phrases.
    const std::unordered_map<std::string, std::vector<std::vector<std::string>>>&
    phrase_index() const { return phrases_; }

    void validate() const; // throws if an invariant is broken

private:
    std::unordered_map<std::string, std::uint8_t> categories_; // bitmask by TermCategory
    std::map<std::string, DiseaseClass> diseases_;
    std::unordered_map<std::string, std::vector<std::vector<std::string>>> phrases_;
};

// Lowercase and join interior whitespace with underscores.
std::string normalize_term(std::string_view term);

// Load the vocabulary file: {"terms":[{"term","categories"}...],
// "diseases":[{"name","class"}...]}. Disease names are added to the term
// list with category disease_name when the file omits them.
DomainVocabulary load_vocabulary(const std::string& path);
DomainVocabulary parse_vocabulary(const std::string& json_text); // same, from a string

// Greedy longest-match left-to-right replacement of token runs that match a
// multi-word vocabulary term by its underscore-joined form. Idempotent.
std::vector<std::string> join_phrases(const std::vector<std::string>& sentence,
                                      const DomainVocabulary& vocab);

// in_vocab flag per word id; the trainer's O(1) membership test.
std::vector<char> vocab_mask(const DomainVocabulary& vocab, const WordTable& table);

PairCategory categorize(int w, int c, const std::vector<char>& mask);
PairCategory categorize(int w, int c, const DomainVocabulary& vocab, const WordTable& table);

} // namespace dis2vec
