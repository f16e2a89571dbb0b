#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dis2vec/embedding.hpp"
#include "dis2vec/vocabulary.hpp"

namespace dis2vec {

// One evaluation cell: a disease, a task category, the candidate terms of
// that category and the human-annotated subset.
struct TaxonomyQuery {
    std::string disease;
    TermCategory category = TermCategory::symptoms;
    std::vector<std::string> candidates;  // superset of annotations
    std::vector<std::string> annotations; // ground truth H_1..H_M
};

struct RankedTerm {
    std::string term;
    double score = 0.0;
};

struct QueryResult {
    TaxonomyQuery query;
    std::optional<DiseaseClass> disease_class;
    std::vector<RankedTerm> ranked;              // candidates present, score desc
    std::vector<std::string> missing_candidates; // absent from the embeddings
    std::vector<std::string> missing_annotations;
    std::vector<std::string> top_words;
    double accuracy = 0.0;
    std::string error; // empty on success; failed queries are kept, not fatal
    bool ok() const { return error.empty(); }
};

struct TaxonomyReport {
    std::vector<QueryResult> entries;
    std::map<TermCategory, double> category_means;
    std::map<std::pair<DiseaseClass, TermCategory>, double> class_category_means;
    double overall_mean = 0.0; // mean of the per-category means
};

double cosine(std::span<const double> u, std::span<const double> v); // throws ZeroVectorError

// Min-max normalized mean score of the annotated terms among the candidates:
//   mean_j (score(H_j) - min_i score(C_i)) / (max_i score(C_i) - min_i score(C_i)).
// Annotations absent from scores contribute 0; a degenerate max == min
// denominator makes every term contribute 0.
double min_max_accuracy(const std::vector<RankedTerm>& candidate_scores,
                        const std::vector<std::string>& annotations,
                        std::vector<std::string>* missing_annotations = nullptr);

// Candidates present in the embeddings sorted by cosine to the disease
// vector, descending, ties lexicographic. Absent candidates are reported via
// missing. Throws DiseaseNotInEmbeddingsError.
std::vector<RankedTerm> rank_candidates(const TaxonomyQuery& query,
                                        const WordVectors& vectors,
                                        std::vector<std::string>* missing = nullptr);

// Figure of merit for one query. Throws DiseaseNotInEmbeddingsError /
// NoCandidatesError.
double accuracy(const TaxonomyQuery& query, const WordVectors& vectors);

// Batch evaluation: per-query accuracy, per-category means across diseases,
// per-(class, category) means, overall mean. Per-query failures become
// diagnostics on the entry instead of aborting.
TaxonomyReport report(const std::vector<TaxonomyQuery>& queries,
                      const WordVectors& vectors, const DomainVocabulary& vocab,
                      int top_n = 5);

// Aggregate scored entries into the report means. Failed entries are kept
// but excluded from every mean. Shared by the cosine and co-occurrence
// evaluators.
TaxonomyReport finalize_report(std::vector<QueryResult> entries);

// Annotation file entry: {"disease","category","terms"}.
struct AnnotationEntry {
    std::string disease;
    TermCategory category = TermCategory::symptoms;
    std::vector<std::string> terms;
};

std::vector<AnnotationEntry> load_annotations(const std::string& path);
std::vector<AnnotationEntry> parse_annotations(const std::string& json_text);
void save_annotations(const std::string& path, const std::vector<AnnotationEntry>& entries);

// Queries from annotations: candidates are the vocabulary terms of the
// category (never the disease itself) plus any annotated stragglers.
std::vector<TaxonomyQuery> build_queries(const std::vector<AnnotationEntry>& annotations,
                                         const DomainVocabulary& vocab);

void write_report_json(const std::string& path, const TaxonomyReport& report);
// Flat table for spreadsheet import: disease,category,class,accuracy.
void write_report_csv(const std::string& path, const TaxonomyReport& report);

} // namespace dis2vec
