// Command-line interface: train embeddings, evaluate disease taxonomies,
// sweep hyperparameters, generate planted-structure corpora, replay runs.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dis2vec/embedding.hpp"
#include "dis2vec/errors.hpp"
#include "dis2vec/manifest.hpp"
#include "dis2vec/pipeline.hpp"
#include "dis2vec/sweep.hpp"
#include "dis2vec/synthgen.hpp"
#include "dis2vec/taxonomy.hpp"
#include "dis2vec/trainer.hpp"

namespace {

using namespace dis2vec;

struct TrainFlags {
    std::string corpus;
    std::string vocab;
    std::string mode = "sgns";
    std::string out = "embeddings.txt";
    std::string manifest;
    bool pretokenized = false;
    TrainingConfig cfg;
};

struct TaxonomyFlags {
    std::string embeddings;
    std::string vocab;
    std::string annotations;
    std::string out_json;
    std::string out_csv;
    int top_n = 5;
    bool by_class = false;
};

struct SweepFlags {
    std::string corpus;
    std::string vocab;
    std::string annotations;
    std::string mode = "dis2vec_combined";
    std::string out;
    bool pretokenized = false;
    int jobs = 1;
    GridSpec grid;
    TrainingConfig base;
};

struct SynthFlags {
    SyntheticSpec spec;
    std::string corpus_out = "synthetic_corpus.txt";
    std::string vocab_out = "synthetic_vocabulary.json";
    std::string annotations_out = "synthetic_annotations.json";
    int oracle_window = 0; // 0 = skip the co-occurrence baseline
};

struct ReplayFlags {
    std::string manifest;
    std::string out;
};

void add_config_options(CLI::App* cmd, TrainingConfig& cfg, std::string& mode) {
    cmd->add_option("--mode", mode,
                    "training mode: sgns, dis2vec_sample, dis2vec_objective, dis2vec_combined")
        ->capture_default_str();
    cmd->add_option("--dim", cfg.dim, "embedding dimension")->capture_default_str();
    cmd->add_option("--window", cfg.window, "context window half-width")->capture_default_str();
    cmd->add_option("--neg,--negatives,-k", cfg.negatives, "negative samples per pair")
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.alpha, "unigram smoothing exponent")->capture_default_str();
    cmd->add_option("--pi-s", cfg.pi_s, "out-of-vocabulary negative-sampling rate for in-vocabulary pairs")
        ->capture_default_str();
    cmd->add_option("--pi-o", cfg.pi_o, "objective flip rate for mixed pairs")
        ->capture_default_str();
    cmd->add_option("--epochs", cfg.epochs, "passes over the corpus")->capture_default_str();
    cmd->add_option("--lr", cfg.lr0, "initial learning rate")->capture_default_str();
    cmd->add_option("--lr-min", cfg.lr_min, "learning-rate floor (negative = 1e-4 * lr)")
        ->capture_default_str();
    cmd->add_option("--subsample", cfg.subsample_t,
                    "frequent-word subsampling threshold (<= 0 disables)")
        ->capture_default_str();
    cmd->add_option("--min-count", cfg.min_count, "drop words rarer than this")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
}

void require_vocab_for_mode(const TrainingConfig& cfg, const std::string& vocab) {
    if (cfg.mode != TrainMode::sgns && vocab.empty()) {
        throw UsageError("--vocab is required for mode " + to_string(cfg.mode));
    }
}

void print_category_means(const TaxonomyReport& rep) {
    for (const auto& [cat, mean] : rep.category_means) {
        long long n = 0;
        for (const auto& entry : rep.entries) {
            if (entry.ok() && entry.query.category == cat) ++n;
        }
        std::printf("%-22s %.4f  (%lld diseases)\n", to_string(cat).c_str(), mean, n);
    }
    std::printf("%-22s %.4f\n", "overall", rep.overall_mean);
}

int cmd_train(const TrainFlags& flags) {
    TrainingConfig cfg = flags.cfg;
    cfg.mode = mode_from_string(flags.mode);
    cfg.validate();
    require_vocab_for_mode(cfg, flags.vocab);

    std::optional<std::string> vocab_path;
    if (!flags.vocab.empty()) vocab_path = flags.vocab;
    std::optional<std::string> manifest_path;
    if (!flags.manifest.empty()) manifest_path = flags.manifest;

    const RunManifest m = run_train_command(flags.corpus, vocab_path, cfg,
                                            flags.pretokenized, flags.out, manifest_path);

    std::printf("words %zu  tokens %lld  pairs/epoch %lld (dd %lld, nn %lld, mixed %lld)\n",
                m.vocab_size, m.total_tokens, m.pair_counts.total(), m.pair_counts.dd,
                m.pair_counts.nn, m.pair_counts.mixed);
    const double denom = static_cast<double>(m.pair_counts.total());
    for (std::size_t e = 0; e < m.epoch_losses.size(); ++e) {
        std::printf("epoch %zu/%zu  mean objective %.6f\n", e + 1, m.epoch_losses.size(),
                    m.epoch_losses[e].total / denom);
    }
    std::printf("wrote %s (%zu x %d) in %.1fs\n", m.embeddings_path.c_str(), m.vocab_size,
                cfg.dim, m.wall_seconds);
    if (manifest_path) std::printf("wrote %s\n", manifest_path->c_str());
    return 0;
}

int cmd_taxonomy(const TaxonomyFlags& flags) {
    const WordVectors vectors = load_embeddings(flags.embeddings);
    const DomainVocabulary vocab = load_vocabulary(flags.vocab);
    const auto annotations = load_annotations(flags.annotations);
    const auto queries = build_queries(annotations, vocab);
    const TaxonomyReport rep = report(queries, vectors, vocab, flags.top_n);

    print_category_means(rep);
    if (flags.by_class) {
        for (const auto& [key, mean] : rep.class_category_means) {
            std::printf("%-10s %-22s %.4f\n", to_string(key.first).c_str(),
                        to_string(key.second).c_str(), mean);
        }
    }
    for (const auto& entry : rep.entries) {
        if (!entry.ok()) {
            std::fprintf(stderr, "warning: %s/%s: %s\n", entry.query.disease.c_str(),
                         to_string(entry.query.category).c_str(), entry.error.c_str());
        }
    }
    if (!flags.out_json.empty()) write_report_json(flags.out_json, rep);
    if (!flags.out_csv.empty()) write_report_csv(flags.out_csv, rep);
    return 0;
}

int cmd_sweep(const SweepFlags& flags) {
    TrainingConfig base = flags.base;
    base.mode = mode_from_string(flags.mode);
    require_vocab_for_mode(base, flags.vocab);
    if (flags.vocab.empty()) {
        throw UsageError("--vocab is required by the sweep evaluation");
    }

    const DomainVocabulary vocab = load_vocabulary(flags.vocab);
    const auto annotations = load_annotations(flags.annotations);
    const auto sentences = read_corpus(flags.corpus, flags.pretokenized, &vocab);

    const SweepResult result =
        run_sweep(sentences, vocab, annotations, flags.grid, base, flags.jobs);
    std::fputs(format_tally(result, flags.grid, base.mode).c_str(), stdout);
    if (!flags.out.empty()) write_sweep_json(flags.out, result);
    return 0;
}

int cmd_synth(const SynthFlags& flags) {
    const SyntheticData data = generate(flags.spec);
    write_corpus(flags.corpus_out, data);
    write_vocabulary(flags.vocab_out, data.vocabulary);
    save_annotations(flags.annotations_out, data.annotations);
    std::printf("wrote %s (%d sentences), %s (%zu terms), %s (%zu entries)\n",
                flags.corpus_out.c_str(), flags.spec.n_sentences, flags.vocab_out.c_str(),
                data.vocabulary.term_count(), flags.annotations_out.c_str(),
                data.annotations.size());
    if (flags.oracle_window > 0) {
        const TaxonomyReport rep =
            pmi_oracle(data.sentences, data.vocabulary, data.annotations, flags.oracle_window);
        std::printf("co-occurrence baseline (window %d):\n", flags.oracle_window);
        print_category_means(rep);
    }
    return 0;
}

int cmd_replay(const ReplayFlags& flags) {
    std::optional<std::string> out;
    if (!flags.out.empty()) out = flags.out;
    const RunManifest m = replay_manifest(flags.manifest, out);
    std::printf("replayed %s: wrote %s (digest %s)\n", flags.manifest.c_str(),
                m.embeddings_path.c_str(), fnv1a_file(m.embeddings_path).c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"word embeddings with vocabulary-driven negative sampling "
                 "and disease-taxonomy evaluation"};
    app.require_subcommand(1);

    TrainFlags train_flags;
    CLI::App* train_cmd = app.add_subcommand("train", "train embeddings on a corpus");
    train_cmd->add_option("--corpus", train_flags.corpus, "input corpus file")->required();
    train_cmd->add_option("--vocab", train_flags.vocab,
                          "domain vocabulary JSON (required for dis2vec modes)");
    train_cmd->add_flag("--pretokenized", train_flags.pretokenized,
                        "corpus is one sentence per line, whitespace-tokenized");
    add_config_options(train_cmd, train_flags.cfg, train_flags.mode);
    train_cmd->add_option("--workers", train_flags.cfg.workers,
                          "training threads (1 = reproducible)")
        ->capture_default_str();
    train_cmd->add_option("--out", train_flags.out, "embeddings output file")
        ->capture_default_str();
    train_cmd->add_option("--manifest", train_flags.manifest, "write a replayable run manifest");

    TaxonomyFlags tax_flags;
    CLI::App* tax_cmd = app.add_subcommand("taxonomy", "rank vocabulary terms per disease");
    tax_cmd->add_option("--embeddings", tax_flags.embeddings, "embeddings file")->required();
    tax_cmd->add_option("--vocab", tax_flags.vocab, "domain vocabulary JSON")->required();
    tax_cmd->add_option("--annotations", tax_flags.annotations, "ground-truth annotations JSON")
        ->required();
    tax_cmd->add_option("--top-n", tax_flags.top_n, "ranked terms kept per query")
        ->capture_default_str();
    tax_cmd->add_flag("--by-class", tax_flags.by_class, "also print per-disease-class means");
    tax_cmd->add_option("--out", tax_flags.out_json, "write the full report as JSON");
    tax_cmd->add_option("--csv", tax_flags.out_csv, "write a flat CSV of per-query accuracies");

    SweepFlags sweep_flags;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid-search hyperparameters");
    sweep_cmd->add_option("--corpus", sweep_flags.corpus, "input corpus file")->required();
    sweep_cmd->add_option("--vocab", sweep_flags.vocab, "domain vocabulary JSON")->required();
    sweep_cmd->add_option("--annotations", sweep_flags.annotations,
                          "ground-truth annotations JSON")
        ->required();
    sweep_cmd->add_flag("--pretokenized", sweep_flags.pretokenized,
                        "corpus is one sentence per line, whitespace-tokenized");
    sweep_cmd->add_option("--mode", sweep_flags.mode, "training mode for every cell")
        ->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep_flags.jobs, "grid cells trained in parallel")
        ->capture_default_str();
    sweep_cmd->add_option("--dims", sweep_flags.grid.dims, "embedding dimensions to try")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--windows", sweep_flags.grid.windows, "window sizes to try")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--negatives", sweep_flags.grid.negatives, "negative counts to try")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--alphas", sweep_flags.grid.alphas, "smoothing exponents to try")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--pi-s-grid", sweep_flags.grid.pi_s, "pi_s values to try")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--pi-o-grid", sweep_flags.grid.pi_o, "pi_o values to try")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--epochs", sweep_flags.base.epochs, "passes over the corpus")
        ->capture_default_str();
    sweep_cmd->add_option("--lr", sweep_flags.base.lr0, "initial learning rate")
        ->capture_default_str();
    sweep_cmd->add_option("--subsample", sweep_flags.base.subsample_t,
                          "frequent-word subsampling threshold (<= 0 disables)")
        ->capture_default_str();
    sweep_cmd->add_option("--min-count", sweep_flags.base.min_count, "drop words rarer than this")
        ->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_flags.base.seed, "random seed")->capture_default_str();
    sweep_cmd->add_option("--out", sweep_flags.out, "write every cell's scores as JSON");

    SynthFlags synth_flags;
    CLI::App* synth_cmd =
        app.add_subcommand("synth", "generate a planted-structure corpus with known answers");
    synth_cmd->add_option("--diseases", synth_flags.spec.n_diseases, "number of diseases")
        ->capture_default_str();
    synth_cmd->add_option("--terms-per-category", synth_flags.spec.terms_per_category,
                          "candidate terms per task category")
        ->capture_default_str();
    synth_cmd->add_option("--true-terms", synth_flags.spec.true_terms_per_category,
                          "planted true terms per disease and category")
        ->capture_default_str();
    synth_cmd->add_option("--fillers", synth_flags.spec.n_filler_words,
                          "distinct filler words")
        ->capture_default_str();
    synth_cmd->add_option("--beta", synth_flags.spec.beta,
                          "probability a sentence carries a true term")
        ->capture_default_str();
    synth_cmd->add_option("--sentences", synth_flags.spec.n_sentences, "sentences to generate")
        ->capture_default_str();
    synth_cmd->add_option("--min-len", synth_flags.spec.min_sentence_len,
                          "minimum sentence length")
        ->capture_default_str();
    synth_cmd->add_option("--max-len", synth_flags.spec.max_sentence_len,
                          "maximum sentence length")
        ->capture_default_str();
    synth_cmd->add_option("--length-weights", synth_flags.spec.length_weights,
                          "comma-separated relative weight per length in [min, max] "
                          "(default uniform)")
        ->delimiter(',');
    synth_cmd->add_option("--zipf", synth_flags.spec.zipf_exponent,
                          "filler frequency exponent")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth_flags.spec.seed, "random seed")->capture_default_str();
    synth_cmd->add_option("--corpus-out", synth_flags.corpus_out, "corpus output path")
        ->capture_default_str();
    synth_cmd->add_option("--vocab-out", synth_flags.vocab_out, "vocabulary output path")
        ->capture_default_str();
    synth_cmd->add_option("--annotations-out", synth_flags.annotations_out,
                          "annotations output path")
        ->capture_default_str();
    synth_cmd->add_option("--oracle-window", synth_flags.oracle_window,
                          "also print the exact co-occurrence baseline at this window (0 = skip)")
        ->capture_default_str();

    ReplayFlags replay_flags;
    CLI::App* replay_cmd = app.add_subcommand("replay", "re-run a recorded training manifest");
    replay_cmd->add_option("--manifest", replay_flags.manifest, "manifest JSON from train")
        ->required();
    replay_cmd->add_option("--out", replay_flags.out,
                           "embeddings output (default: path recorded in the manifest)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(train_cmd)) return cmd_train(train_flags);
        if (app.got_subcommand(tax_cmd)) return cmd_taxonomy(tax_flags);
        if (app.got_subcommand(sweep_cmd)) return cmd_sweep(sweep_flags);
        if (app.got_subcommand(synth_cmd)) return cmd_synth(synth_flags);
        if (app.got_subcommand(replay_cmd)) return cmd_replay(replay_flags);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const NonFiniteUpdateError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return 3;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
