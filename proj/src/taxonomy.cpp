#include "dis2vec/taxonomy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

#include "dis2vec/errors.hpp"

namespace dis2vec {

double cosine(std::span<const double> u, std::span<const double> v) {
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        dot += u[i] * v[i];
        nu += u[i] * u[i];
        nv += v[i] * v[i];
    }
    if (nu == 0.0 || nv == 0.0) {
        throw ZeroVectorError("cosine similarity is undefined for a zero vector");
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

double min_max_accuracy(const std::vector<RankedTerm>& candidate_scores,
                        const std::vector<std::string>& annotations,
                        std::vector<std::string>* missing_annotations) {
    if (annotations.empty()) {
        throw NoCandidatesError("query has no annotated terms");
    }
    std::unordered_map<std::string, double> score_of;
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const RankedTerm& rt : candidate_scores) {
        score_of.emplace(rt.term, rt.score);
        if (first) {
            lo = hi = rt.score;
            first = false;
        } else {
            lo = std::min(lo, rt.score);
            hi = std::max(hi, rt.score);
        }
    }

    const double span = hi - lo;
    double sum = 0.0;
    for (const std::string& term : annotations) {
        auto it = score_of.find(term);
        if (it == score_of.end()) {
            // Unrankable annotation: contributes the worst possible value.
            if (missing_annotations) missing_annotations->push_back(term);
            continue;
        }
        if (span > 0.0) {
            sum += (it->second - lo) / span;
        }
        // span == 0: every candidate tied, each term contributes 0
    }
    return sum / static_cast<double>(annotations.size());
}

std::vector<RankedTerm> rank_candidates(const TaxonomyQuery& query,
                                        const WordVectors& vectors,
                                        std::vector<std::string>* missing) {
    const double* d = vectors.vector_of(query.disease);
    if (d == nullptr) {
        throw DiseaseNotInEmbeddingsError("disease '" + query.disease +
                                          "' has no embedding vector");
    }
    const std::size_t dim = static_cast<std::size_t>(vectors.dim());
    std::span<const double> dv(d, dim);

    std::vector<RankedTerm> ranked;
    ranked.reserve(query.candidates.size());
    for (const std::string& term : query.candidates) {
        if (term == query.disease) continue; // a disease never ranks itself
        const double* tv = vectors.vector_of(term);
        if (tv == nullptr) {
            if (missing) missing->push_back(term);
            continue;
        }
        ranked.push_back({term, cosine(dv, std::span<const double>(tv, dim))});
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedTerm& a, const RankedTerm& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.term < b.term;
    });
    return ranked;
}

double accuracy(const TaxonomyQuery& query, const WordVectors& vectors) {
    std::vector<RankedTerm> ranked = rank_candidates(query, vectors, nullptr);
    if (ranked.empty()) {
        throw NoCandidatesError("no candidate for disease '" + query.disease +
                                "' is present in the embeddings");
    }
    return min_max_accuracy(ranked, query.annotations, nullptr);
}

TaxonomyReport report(const std::vector<TaxonomyQuery>& queries,
                      const WordVectors& vectors, const DomainVocabulary& vocab,
                      int top_n) {
    std::vector<QueryResult> entries;
    entries.reserve(queries.size());
    for (const TaxonomyQuery& query : queries) {
        QueryResult entry;
        entry.query = query;
        auto cls_it = vocab.diseases().find(query.disease);
        if (cls_it != vocab.diseases().end()) {
            entry.disease_class = cls_it->second;
        }
        try {
            entry.ranked = rank_candidates(query, vectors, &entry.missing_candidates);
            if (entry.ranked.empty()) {
                throw NoCandidatesError("no candidate for disease '" + query.disease +
                                        "' is present in the embeddings");
            }
            entry.accuracy =
                min_max_accuracy(entry.ranked, query.annotations, &entry.missing_annotations);
            const int shown = std::min<int>(top_n, static_cast<int>(entry.ranked.size()));
            for (int i = 0; i < shown; ++i) {
                entry.top_words.push_back(entry.ranked[static_cast<std::size_t>(i)].term);
            }
        } catch (const DataError& e) {
            entry.error = e.what();
        }
        entries.push_back(std::move(entry));
    }
    return finalize_report(std::move(entries));
}

TaxonomyReport finalize_report(std::vector<QueryResult> entries) {
    TaxonomyReport rep;
    rep.entries = std::move(entries);

    std::map<TermCategory, std::pair<double, long long>> cat_acc;
    std::map<std::pair<DiseaseClass, TermCategory>, std::pair<double, long long>> cls_acc;
    for (const QueryResult& entry : rep.entries) {
        if (!entry.ok()) continue;
        auto& [sum, n] = cat_acc[entry.query.category];
        sum += entry.accuracy;
        ++n;
        if (entry.disease_class) {
            auto& [csum, cn] = cls_acc[{*entry.disease_class, entry.query.category}];
            csum += entry.accuracy;
            ++cn;
        }
    }

    double total = 0.0;
    for (const auto& [cat, acc] : cat_acc) {
        rep.category_means[cat] = acc.first / static_cast<double>(acc.second);
        total += rep.category_means[cat];
    }
    if (!cat_acc.empty()) {
        rep.overall_mean = total / static_cast<double>(cat_acc.size());
    }
    for (const auto& [key, acc] : cls_acc) {
        rep.class_category_means[key] = acc.first / static_cast<double>(acc.second);
    }
    return rep;
}

std::vector<AnnotationEntry> parse_annotations(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("annotations are not valid JSON: ") + e.what());
    }
    std::vector<AnnotationEntry> entries;
    try {
        for (const auto& item : doc) {
            AnnotationEntry entry;
            entry.disease = normalize_term(item.at("disease").get<std::string>());
            entry.category = category_from_string(item.at("category").get<std::string>());
            for (const auto& term : item.at("terms")) {
                entry.terms.push_back(normalize_term(term.get<std::string>()));
            }
            entries.push_back(std::move(entry));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed annotation entry: ") + e.what());
    }
    return entries;
}

std::vector<AnnotationEntry> load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open annotations file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_annotations(buf.str());
}

void save_annotations(const std::string& path, const std::vector<AnnotationEntry>& entries) {
    nlohmann::json doc = nlohmann::json::array();
    for (const AnnotationEntry& entry : entries) {
        doc.push_back({{"disease", entry.disease},
                       {"category", to_string(entry.category)},
                       {"terms", entry.terms}});
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open annotations file for writing: " + path);
    out << doc.dump(2) << '\n';
}

std::vector<TaxonomyQuery> build_queries(const std::vector<AnnotationEntry>& annotations,
                                         const DomainVocabulary& vocab) {
    std::vector<TaxonomyQuery> queries;
    queries.reserve(annotations.size());
    for (const AnnotationEntry& entry : annotations) {
        TaxonomyQuery query;
        query.disease = entry.disease;
        query.category = entry.category;
        query.annotations = entry.terms;

        std::vector<std::string> pool = vocab.terms_in_category(entry.category);
        std::unordered_set<std::string> seen(pool.begin(), pool.end());
        for (const std::string& term : entry.terms) {
            if (seen.insert(term).second) pool.push_back(term);
        }
        pool.erase(std::remove(pool.begin(), pool.end(), entry.disease), pool.end());
        if (pool.empty()) {
            throw NoCandidatesError("category " + to_string(entry.category) +
                                    " has no candidate terms for disease '" +
                                    entry.disease + "'");
        }
        std::sort(pool.begin(), pool.end());
        query.candidates = std::move(pool);
        queries.push_back(std::move(query));
    }
    return queries;
}

namespace {

nlohmann::json entry_to_json(const QueryResult& entry) {
    nlohmann::json ranked = nlohmann::json::array();
    for (const RankedTerm& rt : entry.ranked) {
        ranked.push_back({{"term", rt.term}, {"score", rt.score}});
    }
    nlohmann::json j{{"disease", entry.query.disease},
                     {"category", to_string(entry.query.category)},
                     {"accuracy", entry.accuracy},
                     {"ranked", std::move(ranked)},
                     {"top_words", entry.top_words},
                     {"missing_candidates", entry.missing_candidates},
                     {"missing_annotations", entry.missing_annotations}};
    if (entry.disease_class) j["disease_class"] = to_string(*entry.disease_class);
    if (!entry.ok()) j["error"] = entry.error;
    return j;
}

} // namespace

void write_report_json(const std::string& path, const TaxonomyReport& report) {
    nlohmann::json entries = nlohmann::json::array();
    for (const QueryResult& entry : report.entries) {
        entries.push_back(entry_to_json(entry));
    }
    nlohmann::json cat_means = nlohmann::json::object();
    for (const auto& [cat, mean] : report.category_means) {
        cat_means[to_string(cat)] = mean;
    }
    nlohmann::json cls_means = nlohmann::json::object();
    for (const auto& [key, mean] : report.class_category_means) {
        cls_means[to_string(key.first) + "/" + to_string(key.second)] = mean;
    }
    nlohmann::json doc{{"entries", std::move(entries)},
                       {"category_means", std::move(cat_means)},
                       {"class_category_means", std::move(cls_means)},
                       {"overall_mean", report.overall_mean}};
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open report file for writing: " + path);
    out << doc.dump(2) << '\n';
}

void write_report_csv(const std::string& path, const TaxonomyReport& report) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open report file for writing: " + path);
    out << "disease,category,disease_class,accuracy,error\n";
    for (const QueryResult& entry : report.entries) {
        out << entry.query.disease << ',' << to_string(entry.query.category) << ',';
        if (entry.disease_class) out << to_string(*entry.disease_class);
        out << ',';
        if (entry.ok()) out << entry.accuracy;
        out << ',';
        // commas inside error text would break the row shape
        std::string err = entry.error;
        std::replace(err.begin(), err.end(), ',', ';');
        out << err << '\n';
    }
}

} // namespace dis2vec
