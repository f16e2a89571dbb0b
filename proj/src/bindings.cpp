// Python bindings for the training, evaluation and generation entry points.
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dis2vec/embedding.hpp"
#include "dis2vec/errors.hpp"
#include "dis2vec/pipeline.hpp"
#include "dis2vec/synthgen.hpp"
#include "dis2vec/taxonomy.hpp"
#include "dis2vec/trainer.hpp"

namespace py = pybind11;
using namespace dis2vec;

namespace {

py::dict report_to_dict(const TaxonomyReport& rep) {
    py::dict category_means;
    for (const auto& [cat, mean] : rep.category_means) {
        category_means[to_string(cat).c_str()] = mean;
    }
    py::list entries;
    for (const QueryResult& entry : rep.entries) {
        py::dict e;
        e["disease"] = entry.query.disease;
        e["category"] = to_string(entry.query.category);
        e["accuracy"] = entry.accuracy;
        e["top_words"] = entry.top_words;
        e["error"] = entry.error;
        entries.append(std::move(e));
    }
    py::dict out;
    out["category_means"] = std::move(category_means);
    out["overall_mean"] = rep.overall_mean;
    out["entries"] = std::move(entries);
    return out;
}

py::dict train_stats(const TrainArtifacts& art) {
    py::list losses;
    for (const EpochLoss& l : art.result.epoch_losses) {
        py::dict e;
        e["dd"] = l.dd;
        e["nn"] = l.nn;
        e["mixed"] = l.mixed;
        e["total"] = l.total;
        losses.append(std::move(e));
    }
    py::dict pair_counts;
    pair_counts["dd"] = art.result.pair_counts.dd;
    pair_counts["nn"] = art.result.pair_counts.nn;
    pair_counts["mixed"] = art.result.pair_counts.mixed;

    py::dict stats;
    stats["vocab_size"] = art.table.size();
    stats["total_tokens"] = art.table.total_tokens();
    stats["epoch_losses"] = std::move(losses);
    stats["pair_counts"] = std::move(pair_counts);
    stats["scheduled_updates"] = art.result.scheduled_updates;
    stats["wall_seconds"] = art.wall_seconds;
    return stats;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "word embeddings with vocabulary-driven negative sampling";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<NonFiniteUpdateError>(m, "NonFiniteUpdateError", PyExc_ArithmeticError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

    py::class_<TrainingConfig>(m, "TrainingConfig")
        .def(py::init<>())
        .def_readwrite("dim", &TrainingConfig::dim)
        .def_readwrite("window", &TrainingConfig::window)
        .def_readwrite("negatives", &TrainingConfig::negatives)
        .def_readwrite("alpha", &TrainingConfig::alpha)
        .def_readwrite("pi_s", &TrainingConfig::pi_s)
        .def_readwrite("pi_o", &TrainingConfig::pi_o)
        .def_readwrite("epochs", &TrainingConfig::epochs)
        .def_readwrite("lr", &TrainingConfig::lr0)
        .def_readwrite("lr_min", &TrainingConfig::lr_min)
        .def_readwrite("subsample_t", &TrainingConfig::subsample_t)
        .def_readwrite("min_count", &TrainingConfig::min_count)
        .def_readwrite("seed", &TrainingConfig::seed)
        .def_readwrite("workers", &TrainingConfig::workers)
        .def_property(
            "mode", [](const TrainingConfig& cfg) { return to_string(cfg.mode); },
            [](TrainingConfig& cfg, const std::string& mode) {
                cfg.mode = mode_from_string(mode);
            });

    py::class_<WordVectors>(m, "WordVectors")
        .def_property_readonly("words", &WordVectors::words)
        .def_property_readonly("dim", &WordVectors::dim)
        .def("__len__", &WordVectors::size)
        .def("__contains__",
             [](const WordVectors& wv, const std::string& word) {
                 return wv.vector_of(word) != nullptr;
             })
        .def("vector", [](const WordVectors& wv, const std::string& word) {
            const double* v = wv.vector_of(word);
            if (v == nullptr) {
                throw py::key_error("no vector for word '" + word + "'");
            }
            return std::vector<double>(v, v + wv.dim());
        });

    py::class_<SyntheticSpec>(m, "SyntheticSpec")
        .def(py::init<>())
        .def_readwrite("n_diseases", &SyntheticSpec::n_diseases)
        .def_readwrite("terms_per_category", &SyntheticSpec::terms_per_category)
        .def_readwrite("true_terms_per_category", &SyntheticSpec::true_terms_per_category)
        .def_readwrite("n_filler_words", &SyntheticSpec::n_filler_words)
        .def_readwrite("beta", &SyntheticSpec::beta)
        .def_readwrite("n_sentences", &SyntheticSpec::n_sentences)
        .def_readwrite("min_sentence_len", &SyntheticSpec::min_sentence_len)
        .def_readwrite("max_sentence_len", &SyntheticSpec::max_sentence_len)
        .def_readwrite("length_weights", &SyntheticSpec::length_weights)
        .def_readwrite("zipf_exponent", &SyntheticSpec::zipf_exponent)
        .def_readwrite("seed", &SyntheticSpec::seed);

    m.def(
        "train",
        [](const std::string& corpus, std::optional<std::string> vocab,
           const TrainingConfig& cfg, bool pretokenized) {
            if (cfg.mode != TrainMode::sgns && !vocab) {
                throw UsageError("a vocabulary file is required for mode " + to_string(cfg.mode));
            }
            TrainArtifacts art = train_corpus(corpus, vocab, cfg, pretokenized);
            WordVectors vectors = WordVectors::from_training(art.table, art.result.embeddings);
            return py::make_tuple(std::move(vectors), train_stats(art));
        },
        py::arg("corpus"), py::arg("vocab") = std::nullopt,
        py::arg("config") = TrainingConfig{}, py::arg("pretokenized") = false,
        "Train embeddings on a corpus file; returns (WordVectors, stats).");

    m.def("save_embeddings",
          [](const std::string& path, const WordVectors& vectors) {
              save_embeddings(path, vectors);
          },
          py::arg("path"), py::arg("vectors"));
    m.def("load_embeddings", &load_embeddings, py::arg("path"));

    m.def(
        "taxonomy_report",
        [](const WordVectors& vectors, const std::string& vocab_path,
           const std::string& annotations_path, int top_n) {
            const DomainVocabulary vocab = load_vocabulary(vocab_path);
            const auto annotations = load_annotations(annotations_path);
            return report_to_dict(report(build_queries(annotations, vocab), vectors, vocab, top_n));
        },
        py::arg("vectors"), py::arg("vocab"), py::arg("annotations"), py::arg("top_n") = 5,
        "Rank every annotated disease's candidate terms; returns the report as a dict.");

    m.def(
        "cosine",
        [](const WordVectors& vectors, const std::string& a, const std::string& b) {
            const double* va = vectors.vector_of(a);
            const double* vb = vectors.vector_of(b);
            if (va == nullptr) throw py::key_error("no vector for word '" + a + "'");
            if (vb == nullptr) throw py::key_error("no vector for word '" + b + "'");
            const auto dim = static_cast<std::size_t>(vectors.dim());
            return cosine(std::span<const double>(va, dim), std::span<const double>(vb, dim));
        },
        py::arg("vectors"), py::arg("a"), py::arg("b"));

    m.def(
        "generate_synthetic",
        [](const SyntheticSpec& spec, const std::string& corpus_out,
           const std::string& vocab_out, const std::string& annotations_out) {
            const SyntheticData data = generate(spec);
            write_corpus(corpus_out, data);
            write_vocabulary(vocab_out, data.vocabulary);
            save_annotations(annotations_out, data.annotations);
        },
        py::arg("spec"), py::arg("corpus_out"), py::arg("vocab_out"),
        py::arg("annotations_out"),
        "Generate a planted-structure corpus and write its three files.");
}
