#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "doctest.h"

#include "dis2vec/corpus.hpp"
#include "dis2vec/errors.hpp"
#include "dis2vec/pipeline.hpp"
#include "dis2vec/synthgen.hpp"
#include "dis2vec/taxonomy.hpp"
#include "dis2vec/vocabulary.hpp"
#include "support.hpp"

using namespace dis2vec;

namespace {

SyntheticSpec small_spec() {
    SyntheticSpec spec;
    spec.n_diseases = 4;
    spec.terms_per_category = 5;
    spec.true_terms_per_category = 2;
    spec.n_filler_words = 10;
    spec.beta = 0.9;
    spec.n_sentences = 500;
    spec.min_sentence_len = 4;
    spec.max_sentence_len = 7;
    spec.seed = 11;
    return spec;
}

bool is_disease_token(const std::string& token) {
    return token.rfind("disease", 0) == 0;
}

} // namespace

TEST_CASE("generator specs are validated") {
    CHECK_NOTHROW(SyntheticSpec{}.validate());
    auto broken = [](auto&& mutate) {
        SyntheticSpec spec;
        mutate(spec);
        CHECK_THROWS_AS(spec.validate(), InvalidSpecError);
    };
    broken([](SyntheticSpec& s) { s.n_diseases = 0; });
    broken([](SyntheticSpec& s) { s.terms_per_category = 0; });
    broken([](SyntheticSpec& s) { s.true_terms_per_category = 0; });
    // At least one decoy must remain per category.
    broken([](SyntheticSpec& s) {
        s.terms_per_category = 3;
        s.true_terms_per_category = 3;
    });
    broken([](SyntheticSpec& s) { s.n_filler_words = 0; });
    broken([](SyntheticSpec& s) { s.beta = -0.1; });
    broken([](SyntheticSpec& s) { s.beta = 1.0001; });
    broken([](SyntheticSpec& s) { s.n_sentences = 0; });
    broken([](SyntheticSpec& s) { s.min_sentence_len = 1; });
    broken([](SyntheticSpec& s) { s.max_sentence_len = s.min_sentence_len - 1; });
    broken([](SyntheticSpec& s) { s.zipf_exponent = -0.5; });
    // Length weights must cover [min, max] with non-negative mass.
    broken([](SyntheticSpec& s) { s.length_weights = {1.0}; });
    broken([](SyntheticSpec& s) {
        s.length_weights.assign(static_cast<std::size_t>(s.max_sentence_len -
                                                         s.min_sentence_len + 1),
                                1.0);
        s.length_weights[0] = -0.25;
    });
    broken([](SyntheticSpec& s) {
        s.length_weights.assign(static_cast<std::size_t>(s.max_sentence_len -
                                                         s.min_sentence_len + 1),
                                0.0);
    });
}

TEST_CASE("generation is deterministic in the seed") {
    const SyntheticSpec spec = small_spec();
    const SyntheticData a = generate(spec);
    const SyntheticData b = generate(spec);
    CHECK(a.sentences == b.sentences);
    CHECK(a.corpus_text() == b.corpus_text());

    SyntheticSpec other = spec;
    other.seed = 12;
    const SyntheticData c = generate(other);
    CHECK(a.sentences != c.sentences);
    // The planted taxonomy itself is seed-independent.
    REQUIRE(a.annotations.size() == c.annotations.size());
    for (std::size_t i = 0; i < a.annotations.size(); ++i) {
        CHECK(a.annotations[i].disease == c.annotations[i].disease);
        CHECK(a.annotations[i].terms == c.annotations[i].terms);
    }
}

TEST_CASE("every sentence follows the planted layout") {
    const SyntheticSpec spec = small_spec();
    const SyntheticData data = generate(spec);
    REQUIRE(data.sentences.size() == 500);

    std::unordered_set<std::string> term_pool;
    for (const std::string& t : data.vocabulary.terms()) term_pool.insert(t);

    for (const auto& sentence : data.sentences) {
        const int len = static_cast<int>(sentence.size());
        CHECK(len >= spec.min_sentence_len);
        CHECK(len <= spec.max_sentence_len);

        int disease_pos = -1;
        int diseases_seen = 0;
        for (int i = 0; i < len; ++i) {
            if (is_disease_token(sentence[static_cast<std::size_t>(i)])) {
                ++diseases_seen;
                disease_pos = i;
            }
        }
        REQUIRE(diseases_seen == 1); // exactly one disease per sentence
        REQUIRE(disease_pos + 1 < len);
        // The disease is immediately followed by a task term.
        CHECK(term_pool.count(sentence[static_cast<std::size_t>(disease_pos + 1)]) == 1);
        // Everything else is filler.
        for (int i = 0; i < len; ++i) {
            if (i == disease_pos || i == disease_pos + 1) continue;
            CHECK(sentence[static_cast<std::size_t>(i)].rfind("filler", 0) == 0);
        }
    }
}

TEST_CASE("the vocabulary and annotations describe the planted structure") {
    const SyntheticSpec spec = small_spec();
    const SyntheticData data = generate(spec);

    CHECK(data.vocabulary.diseases().size() == 4);
    REQUIRE(data.annotations.size() == 4 * 4); // one entry per disease and category
    std::set<std::pair<std::string, TermCategory>> seen;
    for (const AnnotationEntry& entry : data.annotations) {
        CHECK(data.vocabulary.diseases().count(entry.disease) == 1);
        REQUIRE(entry.terms.size() ==
                static_cast<std::size_t>(spec.true_terms_per_category));
        CHECK(std::is_sorted(entry.terms.begin(), entry.terms.end()));
        // True terms come from the category's candidate pool.
        const auto pool = data.vocabulary.terms_in_category(entry.category);
        for (const std::string& t : entry.terms) {
            CHECK(std::find(pool.begin(), pool.end(), t) != pool.end());
        }
        CHECK(seen.insert({entry.disease, entry.category}).second);
    }
    for (TermCategory c : kTaskCategories) {
        CHECK(data.vocabulary.terms_in_category(c).size() ==
              static_cast<std::size_t>(spec.terms_per_category));
    }
}

TEST_CASE("the true/decoy coin respects beta") {
    SyntheticSpec spec = small_spec();
    spec.beta = 0.5;
    spec.n_sentences = 100000;
    spec.min_sentence_len = 2;
    spec.max_sentence_len = 2;
    spec.true_terms_per_category = 1;
    const SyntheticData data = generate(spec);

    // Per (disease, category) the single true term, for membership testing.
    std::map<std::pair<std::string, TermCategory>, std::set<std::string>> truth;
    for (const AnnotationEntry& e : data.annotations) {
        truth[{e.disease, e.category}].insert(e.terms.begin(), e.terms.end());
    }
    long long hits = 0;
    for (const auto& sentence : data.sentences) {
        REQUIRE(sentence.size() == 2);
        const std::string& disease = sentence[0];
        const std::string& term = sentence[1];
        const auto cats = data.vocabulary.categories_of(term);
        REQUIRE(cats.size() == 1);
        if (truth[{disease, cats[0]}].count(term)) ++hits;
    }
    const double fraction = static_cast<double>(hits) / 100000.0;
    CHECK(std::abs(fraction - 0.5) < 0.01);
}

TEST_CASE("sentence lengths follow the requested distribution") {
    SyntheticSpec spec = small_spec();
    spec.n_sentences = 20000;
    spec.min_sentence_len = 2;
    spec.max_sentence_len = 3;

    SUBCASE("uniform without weights") {
        const SyntheticData data = generate(spec);
        long long len2 = 0;
        for (const auto& s : data.sentences) len2 += (s.size() == 2);
        CHECK(std::abs(len2 / 20000.0 - 0.5) < 0.02);
    }

    SUBCASE("weighted lengths") {
        spec.length_weights = {0.8, 0.2};
        const SyntheticData data = generate(spec);
        long long len2 = 0;
        for (const auto& s : data.sentences) len2 += (s.size() == 2);
        CHECK(std::abs(len2 / 20000.0 - 0.8) < 0.02);
    }

    SUBCASE("a zero weight removes the length entirely") {
        spec.length_weights = {1.0, 0.0};
        const SyntheticData data = generate(spec);
        for (const auto& s : data.sentences) CHECK(s.size() == 2);
    }
}

TEST_CASE("filler usage follows the zipf exponent") {
    SyntheticSpec spec = small_spec();
    spec.n_filler_words = 5;
    spec.n_sentences = 5000;
    spec.min_sentence_len = 6;
    spec.max_sentence_len = 6;

    SUBCASE("exponent zero is uniform") {
        spec.zipf_exponent = 0.0;
        const SyntheticData data = generate(spec);
        std::map<std::string, long long> counts;
        long long total = 0;
        for (const auto& s : data.sentences) {
            for (const auto& w : s) {
                if (w.rfind("filler", 0) == 0) {
                    ++counts[w];
                    ++total;
                }
            }
        }
        REQUIRE(counts.size() == 5);
        for (const auto& [word, count] : counts) {
            CAPTURE(word);
            CHECK(std::abs(count / static_cast<double>(total) - 0.2) < 0.02);
        }
    }

    SUBCASE("a positive exponent skews toward the head") {
        spec.zipf_exponent = 1.0;
        const SyntheticData data = generate(spec);
        std::map<std::string, long long> counts;
        for (const auto& s : data.sentences) {
            for (const auto& w : s) {
                if (w.rfind("filler", 0) == 0) ++counts[w];
            }
        }
        CHECK(counts["filler0"] > 2 * counts["filler4"]);
    }
}

TEST_CASE("corpus text survives tokenization unchanged") {
    const SyntheticSpec spec = small_spec();
    const SyntheticData data = generate(spec);

    // The written file reads back exactly through the pretokenized path.
    testsupport::TempFile file("synth_corpus.txt");
    write_corpus(file.path(), data);
    CHECK(read_corpus(file.path(), true, nullptr) == data.sentences);

    // Tokens are already normal forms: plain-text parsing keeps every token
    // (newlines are plain whitespace to the tokenizer, so sentence
    // boundaries are the pretokenized reader's job).
    const auto reparsed = normalize(data.corpus_text());
    REQUIRE(reparsed.size() == 1);
    std::vector<std::string> flat;
    for (const auto& sentence : data.sentences) {
        flat.insert(flat.end(), sentence.begin(), sentence.end());
    }
    CHECK(reparsed[0] == flat);
}

TEST_CASE("generated vocabulary files load back identically") {
    const SyntheticData data = generate(small_spec());
    testsupport::TempFile file("vocab.json");
    write_vocabulary(file.path(), data.vocabulary);
    const DomainVocabulary loaded = load_vocabulary(file.path());
    CHECK(loaded.terms() == data.vocabulary.terms());
    CHECK(loaded.diseases() == data.vocabulary.diseases());
    for (const std::string& term : data.vocabulary.terms()) {
        CHECK(loaded.categories_of(term) == data.vocabulary.categories_of(term));
    }
}

TEST_CASE("exact co-occurrence ranking on a hand-checked corpus") {
    // Window 1 pairs: (a,b),(b,a),(b,b),(b,b) from [a,b,b]; (a,c),(c,a)
    // from [a,c]. Six pairs; PMI(a,b) = log(1*6/(2*3)) = 0,
    // PMI(a,c) = log(1*6/(2*1)) = log 3.
    const std::vector<std::vector<std::string>> sentences{{"a", "b", "b"},
                                                          {"a", "c"}};
    DomainVocabulary vocab;
    vocab.add_disease("a", DiseaseClass::emerging);
    vocab.add_term("a", TermCategory::disease_name);
    vocab.add_term("b", TermCategory::symptoms);
    vocab.add_term("c", TermCategory::symptoms);

    SUBCASE("scores and ranking") {
        const TaxonomyReport rep = pmi_oracle(
            sentences, vocab, {{"a", TermCategory::symptoms, {"c"}}}, 1);
        REQUIRE(rep.entries.size() == 1);
        const QueryResult& entry = rep.entries[0];
        REQUIRE(entry.ok());
        REQUIRE(entry.ranked.size() == 2);
        CHECK(entry.ranked[0].term == "c");
        CHECK(entry.ranked[0].score ==
              doctest::Approx(1.0986122886681098).epsilon(1e-15));
        CHECK(entry.ranked[1].term == "b");
        CHECK(entry.ranked[1].score == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(entry.accuracy == doctest::Approx(1.0));
        CHECK(rep.overall_mean == doctest::Approx(1.0));
    }

    SUBCASE("the bottom-ranked annotation scores zero") {
        const TaxonomyReport rep = pmi_oracle(
            sentences, vocab, {{"a", TermCategory::symptoms, {"b"}}}, 1);
        CHECK(rep.entries[0].accuracy == doctest::Approx(0.0));
    }

    SUBCASE("sentence order does not matter") {
        const std::vector<std::vector<std::string>> reversed{{"a", "c"},
                                                             {"a", "b", "b"}};
        const TaxonomyReport fwd = pmi_oracle(
            sentences, vocab, {{"a", TermCategory::symptoms, {"c"}}}, 1);
        const TaxonomyReport rev = pmi_oracle(
            reversed, vocab, {{"a", TermCategory::symptoms, {"c"}}}, 1);
        CHECK(fwd.overall_mean == doctest::Approx(rev.overall_mean).epsilon(1e-15));
        CHECK(fwd.entries[0].ranked[0].score ==
              doctest::Approx(rev.entries[0].ranked[0].score).epsilon(1e-15));
    }
}

TEST_CASE("never-co-occurring candidates rank at a floored score") {
    DomainVocabulary vocab;
    vocab.add_disease("a", DiseaseClass::emerging);
    vocab.add_term("a", TermCategory::disease_name);
    vocab.add_term("b", TermCategory::symptoms);
    vocab.add_term("c", TermCategory::symptoms);

    SUBCASE("one candidate floored below the finite minimum") {
        // c appears only away from a: joint(a,c) = 0 but c stays rankable.
        const std::vector<std::vector<std::string>> sentences{{"a", "b"},
                                                              {"c", "c"}};
        const TaxonomyReport rep = pmi_oracle(
            sentences, vocab, {{"a", TermCategory::symptoms, {"b"}}}, 1);
        const QueryResult& entry = rep.entries[0];
        REQUIRE(entry.ok());
        REQUIRE(entry.ranked.size() == 2);
        CHECK(entry.ranked[0].term == "b");
        CHECK(entry.ranked[1].term == "c");
        CHECK(entry.ranked[1].score ==
              doctest::Approx(entry.ranked[0].score - 1.0).epsilon(1e-12));
        CHECK(entry.accuracy == doctest::Approx(1.0));
    }

    SUBCASE("all candidates floored leaves a degenerate span") {
        const std::vector<std::vector<std::string>> sentences{{"a", "x"},
                                                              {"b", "c"}};
        DomainVocabulary v2 = vocab;
        const TaxonomyReport rep = pmi_oracle(
            sentences, v2, {{"a", TermCategory::symptoms, {"b"}}}, 1);
        const QueryResult& entry = rep.entries[0];
        REQUIRE(entry.ok());
        CHECK(entry.accuracy == 0.0); // every score tied at the floor
    }

    SUBCASE("a disease absent from the corpus is a diagnostic, not a crash") {
        const std::vector<std::vector<std::string>> sentences{{"a", "b"}};
        DomainVocabulary v3 = vocab;
        v3.add_disease("ghost", DiseaseClass::rare);
        v3.add_term("ghost", TermCategory::disease_name);
        const TaxonomyReport rep =
            pmi_oracle(sentences, v3,
                       {{"a", TermCategory::symptoms, {"b"}},
                        {"ghost", TermCategory::symptoms, {"b"}}},
                       1);
        REQUIRE(rep.entries.size() == 2);
        CHECK(rep.entries[0].ok());
        CHECK_FALSE(rep.entries[1].ok());
        // The failed query does not drag the means down.
        CHECK(rep.overall_mean == doctest::Approx(rep.entries[0].accuracy));
    }
}

TEST_CASE("a fully separated corpus is solved exactly by the oracle") {
    SyntheticSpec spec;
    spec.n_diseases = 4;
    spec.terms_per_category = 5;
    spec.true_terms_per_category = 1;
    spec.n_filler_words = 1;
    spec.beta = 1.0;
    spec.n_sentences = 2000;
    spec.min_sentence_len = 2;
    spec.max_sentence_len = 2; // no filler slots at all
    spec.seed = 5;
    const SyntheticData data = generate(spec);

    const TaxonomyReport rep =
        pmi_oracle(data.sentences, data.vocabulary, data.annotations, 5);
    REQUIRE(rep.entries.size() == 16);
    for (const QueryResult& entry : rep.entries) {
        REQUIRE(entry.ok());
        CHECK(entry.accuracy == doctest::Approx(1.0));
    }
    CHECK(rep.overall_mean == doctest::Approx(1.0));
}
