#include "dis2vec/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "dis2vec/errors.hpp"
#include "dis2vec/rng.hpp"

namespace dis2vec {

void SyntheticSpec::validate() const {
    auto fail = [](const std::string& msg) { throw InvalidSpecError(msg); };
    if (n_diseases <= 0) fail("n_diseases must be positive");
    if (terms_per_category <= 0) fail("terms_per_category must be positive");
    if (true_terms_per_category <= 0) fail("true_terms_per_category must be positive");
    if (true_terms_per_category >= terms_per_category) {
        fail("true_terms_per_category must leave at least one decoy per category");
    }
    if (n_filler_words <= 0) fail("n_filler_words must be positive");
    if (beta < 0.0 || beta > 1.0) fail("beta must lie in [0, 1]");
    if (n_sentences <= 0) fail("n_sentences must be positive");
    if (min_sentence_len < 2) fail("min_sentence_len must be at least 2");
    if (max_sentence_len < min_sentence_len) {
        fail("max_sentence_len must be >= min_sentence_len");
    }
    if (!length_weights.empty()) {
        const std::size_t span =
            static_cast<std::size_t>(max_sentence_len - min_sentence_len + 1);
        if (length_weights.size() != span) {
            fail("length_weights must list one weight per length in [min, max]");
        }
        double total = 0.0;
        for (double w : length_weights) {
            if (w < 0.0 || !std::isfinite(w)) fail("length weights must be finite and non-negative");
            total += w;
        }
        if (total <= 0.0) fail("length weights must not all be zero");
    }
    if (zipf_exponent < 0.0) fail("zipf_exponent must be non-negative");
}

namespace {

const char* kTermPrefix[4] = {"symptom", "exposure", "method", "agent"};

std::string term_name(int category_index, int term_index) {
    return kTermPrefix[category_index] + std::to_string(term_index);
}

// Disease d's designated true terms in every category are the
// true_terms_per_category consecutive indices starting at d (mod pool size),
// so neighbouring diseases overlap but no two share a full set.
int true_term_index(const SyntheticSpec& spec, int disease, int j) {
    return (disease + j) % spec.terms_per_category;
}

} // namespace

SyntheticData generate(const SyntheticSpec& spec) {
    spec.validate();

    SyntheticData data;

    // Fixed taxonomy: diseases cycle through the three classes; every task
    // category shares one candidate pool.
    const DiseaseClass classes[3] = {DiseaseClass::emerging, DiseaseClass::endemic,
                                     DiseaseClass::rare};
    for (int d = 0; d < spec.n_diseases; ++d) {
        data.vocabulary.add_disease("disease" + std::to_string(d), classes[d % 3]);
    }
    for (int c = 0; c < 4; ++c) {
        for (int t = 0; t < spec.terms_per_category; ++t) {
            data.vocabulary.add_term(term_name(c, t), kTaskCategories[c]);
        }
    }
    for (int d = 0; d < spec.n_diseases; ++d) {
        for (int c = 0; c < 4; ++c) {
            AnnotationEntry entry;
            entry.disease = "disease" + std::to_string(d);
            entry.category = kTaskCategories[c];
            for (int j = 0; j < spec.true_terms_per_category; ++j) {
                entry.terms.push_back(term_name(c, true_term_index(spec, d, j)));
            }
            std::sort(entry.terms.begin(), entry.terms.end());
            data.annotations.push_back(std::move(entry));
        }
    }

    // Zipfian filler profile, drawn by inverse-CDF binary search.
    std::vector<double> cum(static_cast<std::size_t>(spec.n_filler_words));
    {
        double total = 0.0;
        for (int r = 0; r < spec.n_filler_words; ++r) {
            total += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
            cum[static_cast<std::size_t>(r)] = total;
        }
        for (double& v : cum) v /= total;
    }

    Rng rng(spec.seed);
    auto draw_filler = [&]() {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        const std::size_t r = std::min(static_cast<std::size_t>(it - cum.begin()),
                                       cum.size() - 1);
        return "filler" + std::to_string(r);
    };

    // Weighted-length CDF; empty weights stay on the uniform index draw so
    // the default sentence stream is unchanged.
    std::vector<double> len_cum(spec.length_weights.size());
    if (!spec.length_weights.empty()) {
        double total = 0.0;
        for (std::size_t i = 0; i < spec.length_weights.size(); ++i) {
            total += spec.length_weights[i];
            len_cum[i] = total;
        }
        for (double& v : len_cum) v /= total;
    }

    // Per sentence the generator consumes, in order: length, disease,
    // category, true/decoy coin, term choice, disease position, fillers
    // left to right.
    data.sentences.reserve(static_cast<std::size_t>(spec.n_sentences));
    const int len_span = spec.max_sentence_len - spec.min_sentence_len + 1;
    for (int s = 0; s < spec.n_sentences; ++s) {
        int len;
        if (len_cum.empty()) {
            len = spec.min_sentence_len + static_cast<int>(rng.index(static_cast<std::size_t>(len_span)));
        } else {
            const auto it = std::upper_bound(len_cum.begin(), len_cum.end(), rng.uniform());
            const std::size_t r = std::min(static_cast<std::size_t>(it - len_cum.begin()),
                                           len_cum.size() - 1);
            len = spec.min_sentence_len + static_cast<int>(r);
        }
        const int d = static_cast<int>(rng.index(static_cast<std::size_t>(spec.n_diseases)));
        const int c = static_cast<int>(rng.index(4));

        int term_index;
        if (rng.uniform() < spec.beta) {
            const int j = static_cast<int>(rng.index(static_cast<std::size_t>(spec.true_terms_per_category)));
            term_index = true_term_index(spec, d, j);
        } else {
            // uniform over the decoys: skip past the true block
            const int decoys = spec.terms_per_category - spec.true_terms_per_category;
            const int j = static_cast<int>(rng.index(static_cast<std::size_t>(decoys)));
            term_index = (d + spec.true_terms_per_category + j) % spec.terms_per_category;
        }

        const int pos = static_cast<int>(rng.index(static_cast<std::size_t>(len - 1)));
        std::vector<std::string> sentence(static_cast<std::size_t>(len));
        sentence[static_cast<std::size_t>(pos)] = "disease" + std::to_string(d);
        sentence[static_cast<std::size_t>(pos + 1)] = term_name(c, term_index);
        for (int i = 0; i < len; ++i) {
            if (i == pos || i == pos + 1) continue;
            sentence[static_cast<std::size_t>(i)] = draw_filler();
        }
        data.sentences.push_back(std::move(sentence));
    }
    return data;
}

std::string SyntheticData::corpus_text() const {
    std::string out;
    for (const auto& sentence : sentences) {
        for (std::size_t i = 0; i < sentence.size(); ++i) {
            if (i) out += ' ';
            out += sentence[i];
        }
        out += '\n';
    }
    return out;
}

void write_corpus(const std::string& path, const SyntheticData& data) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open corpus file for writing: " + path);
    out << data.corpus_text();
    if (!out) throw ParseError("failed writing corpus to " + path);
}

void write_vocabulary(const std::string& path, const DomainVocabulary& vocab) {
    nlohmann::json terms = nlohmann::json::array();
    for (const std::string& term : vocab.terms()) {
        nlohmann::json cats = nlohmann::json::array();
        for (TermCategory c : vocab.categories_of(term)) {
            cats.push_back(to_string(c));
        }
        terms.push_back({{"term", term}, {"categories", std::move(cats)}});
    }
    nlohmann::json diseases = nlohmann::json::array();
    for (const auto& [name, cls] : vocab.diseases()) {
        diseases.push_back({{"name", name}, {"class", to_string(cls)}});
    }
    nlohmann::json doc{{"terms", std::move(terms)}, {"diseases", std::move(diseases)}};
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open vocabulary file for writing: " + path);
    out << doc.dump(2) << '\n';
}

TaxonomyReport pmi_oracle(const std::vector<std::vector<std::string>>& sentences,
                          const DomainVocabulary& vocab,
                          const std::vector<AnnotationEntry>& annotations,
                          int window) {
    // Token ids local to this census.
    std::unordered_map<std::string, int> id_of;
    auto intern = [&](const std::string& word) {
        auto [it, inserted] = id_of.emplace(word, static_cast<int>(id_of.size()));
        return it->second;
    };

    std::vector<std::vector<int>> ids;
    ids.reserve(sentences.size());
    for (const auto& sentence : sentences) {
        std::vector<int> row;
        row.reserve(sentence.size());
        for (const auto& word : sentence) row.push_back(intern(word));
        ids.push_back(std::move(row));
    }

    std::unordered_set<int> disease_ids;
    for (const auto& [name, cls] : vocab.diseases()) {
        auto it = id_of.find(name);
        if (it != id_of.end()) disease_ids.insert(it->second);
    }

    // Exact pair census under the same +-window, sentence-clipped geometry
    // the trainer uses. Joint counts are kept only for disease centers.
    std::vector<long long> center_count(id_of.size(), 0);
    std::vector<long long> context_count(id_of.size(), 0);
    std::unordered_map<long long, long long> joint;
    long long total_pairs = 0;
    const long long width = static_cast<long long>(id_of.size());
    for (const auto& row : ids) {
        const int n = static_cast<int>(row.size());
        for (int i = 0; i < n; ++i) {
            const int lo = std::max(0, i - window);
            const int hi = std::min(n - 1, i + window);
            for (int j = lo; j <= hi; ++j) {
                if (j == i) continue;
                ++center_count[static_cast<std::size_t>(row[i])];
                ++context_count[static_cast<std::size_t>(row[j])];
                ++total_pairs;
                if (disease_ids.count(row[i])) {
                    ++joint[static_cast<long long>(row[i]) * width + row[j]];
                }
            }
        }
    }
    if (total_pairs == 0) {
        throw EmptyCorpusError("corpus yields no co-occurrence pairs");
    }
    const double log_total = std::log(static_cast<double>(total_pairs));
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();

    std::vector<QueryResult> entries;
    for (const TaxonomyQuery& query : build_queries(annotations, vocab)) {
        QueryResult entry;
        entry.query = query;
        auto cls_it = vocab.diseases().find(query.disease);
        if (cls_it != vocab.diseases().end()) entry.disease_class = cls_it->second;

        auto d_it = id_of.find(query.disease);
        if (d_it == id_of.end() ||
            center_count[static_cast<std::size_t>(d_it->second)] == 0) {
            entry.error = "disease '" + query.disease + "' does not occur in the corpus";
            entries.push_back(std::move(entry));
            continue;
        }
        const int d = d_it->second;
        const double log_d = std::log(static_cast<double>(center_count[static_cast<std::size_t>(d)]));

        double min_finite = std::numeric_limits<double>::infinity();
        for (const std::string& term : query.candidates) {
            if (term == query.disease) continue;
            auto t_it = id_of.find(term);
            if (t_it == id_of.end() ||
                context_count[static_cast<std::size_t>(t_it->second)] == 0) {
                entry.missing_candidates.push_back(term);
                continue;
            }
            const int t = t_it->second;
            auto j_it = joint.find(static_cast<long long>(d) * width + t);
            double score;
            if (j_it == joint.end()) {
                score = kNegInf;
            } else {
                score = std::log(static_cast<double>(j_it->second)) + log_total - log_d -
                        std::log(static_cast<double>(context_count[static_cast<std::size_t>(t)]));
                min_finite = std::min(min_finite, score);
            }
            entry.ranked.push_back({term, score});
        }
        if (entry.ranked.empty()) {
            entry.error = "no candidate for disease '" + query.disease +
                          "' occurs in the corpus";
            entries.push_back(std::move(entry));
            continue;
        }
        // Never-co-occurring pairs rank last; floor them just below the
        // finite minimum so the min-max normalization stays well defined.
        const double floor_score = std::isfinite(min_finite) ? min_finite - 1.0 : -1.0;
        for (RankedTerm& rt : entry.ranked) {
            if (rt.score == kNegInf) rt.score = floor_score;
        }
        std::sort(entry.ranked.begin(), entry.ranked.end(),
                  [](const RankedTerm& a, const RankedTerm& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.term < b.term;
                  });
        entry.accuracy =
            min_max_accuracy(entry.ranked, query.annotations, &entry.missing_annotations);
        for (std::size_t i = 0; i < entry.ranked.size() && i < 5; ++i) {
            entry.top_words.push_back(entry.ranked[i].term);
        }
        entries.push_back(std::move(entry));
    }
    return finalize_report(std::move(entries));
}

} // namespace dis2vec
