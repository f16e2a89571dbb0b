#include "dis2vec/trainer.hpp"

#include <atomic>
#include <memory>
#include <stdexcept>
#include <thread>

#include "dis2vec/errors.hpp"

namespace dis2vec {

namespace {

const std::string kModeNames[4] = {
    "sgns", "dis2vec_sample", "dis2vec_objective", "dis2vec_combined",
};

} // namespace

const std::string& to_string(TrainMode m) {
    return kModeNames[static_cast<int>(m)];
}

TrainMode mode_from_string(std::string_view s) {
    for (int i = 0; i < 4; ++i) {
        if (s == kModeNames[i]) return static_cast<TrainMode>(i);
    }
    throw UsageError("unknown training mode: '" + std::string(s) +
                     "' (expected sgns, dis2vec_sample, dis2vec_objective or dis2vec_combined)");
}

void TrainingConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (dim <= 0) fail("dim must be positive");
    if (window <= 0) fail("window must be positive");
    if (negatives <= 0) fail("negatives must be positive");
    if (alpha <= 0.0) fail("alpha must be positive");
    if (pi_s < 0.0 || pi_s > 1.0) fail("pi_s must lie in [0, 1]");
    if (pi_o < 0.0 || pi_o > 1.0) fail("pi_o must lie in [0, 1]");
    if (epochs <= 0) fail("epochs must be positive");
    if (lr0 <= 0.0) fail("learning rate must be positive");
    if (lr_min >= 0.0 && lr_min > lr0) fail("lr_min must not exceed the initial learning rate");
    if (min_count <= 0) fail("min_count must be positive");
    if (workers <= 0) fail("workers must be positive");
}

double update_sgns_pair(EmbeddingSet& emb, int word, int ctx, int k, double lr,
                        const UnigramTable& negatives, Rng& rng) {
    return detail::sgns_step(emb, word, ctx, k, lr,
                             [&] { return negatives.draw(rng); });
}

double update_dd_pair(EmbeddingSet& emb, int word, int ctx, int k, double pi_s,
                      double lr, const UnigramTable& t_in,
                      const UnigramTable& t_out, Rng& rng) {
    return detail::sgns_step(emb, word, ctx, k, lr,
                             [&] { return draw_dd_negative(pi_s, t_out, t_in, rng); });
}

double update_nn_pair(EmbeddingSet& emb, int word, int ctx, int k, double lr,
                      const UnigramTable& global_table, Rng& rng) {
    return detail::sgns_step(emb, word, ctx, k, lr,
                             [&] { return global_table.draw(rng); });
}

double update_mixed_pair(EmbeddingSet& emb, int word, int ctx, double pi_o,
                         double lr, Rng& rng) {
    const int dim = emb.dim();
    double* w = emb.word(word);
    double* c = emb.ctx(ctx);

    double dot = 0.0;
    for (int j = 0; j < dim; ++j) dot += w[j] * c[j];
    dot = clamp_dot(dot);

    // One coin per pair decides which objective this pair ascends.
    double loss, g;
    if (rng.uniform() < pi_o) {
        loss = log_sigmoid(-dot);
        g = lr * (-sigmoid(dot));
    } else {
        loss = log_sigmoid(dot);
        g = lr * (1.0 - sigmoid(dot));
    }
    for (int j = 0; j < dim; ++j) {
        const double wj = w[j];
        w[j] += g * c[j];
        c[j] += g * wj;
    }
    return loss;
}

namespace {

struct Tables {
    UnigramTable global;
    std::unique_ptr<UnigramTable> in;  // built only when a pi_s mode can see DD pairs
    std::unique_ptr<UnigramTable> out;
};

// Thread body state shared across the epoch loop.
struct Shared {
    const TokenStream* stream;
    const std::vector<char>* mask;
    const Tables* tables;
    const TrainingConfig* cfg;
    EmbeddingSet* emb;
    std::atomic<long long>* updates_done;
    long long total_updates;
    double lr_min;
};

// Process sentences [begin, end) once, accumulating losses into `loss`.
void run_shard(const Shared& sh, std::size_t begin, std::size_t end, Rng& rng,
               EpochLoss& loss) {
    const TrainingConfig& cfg = *sh.cfg;
    const std::vector<char>& mask = *sh.mask;
    EmbeddingSet& emb = *sh.emb;
    const bool use_pi_s = cfg.uses_pi_s() && sh.tables->in != nullptr;
    const bool use_pi_o = cfg.uses_pi_o();
    const double lr_span = cfg.lr0 - sh.lr_min;

    for (std::size_t s = begin; s < end; ++s) {
        const std::vector<int>& sentence = (*sh.stream)[s];
        const int n = static_cast<int>(sentence.size());
        for (int i = 0; i < n; ++i) {
            const int word = sentence[i];
            const int lo = std::max(0, i - cfg.window);
            const int hi = std::min(n - 1, i + cfg.window);
            for (int j = lo; j <= hi; ++j) {
                if (j == i) continue;
                const int ctx = sentence[j];

                const long long n_done =
                    sh.updates_done->fetch_add(1, std::memory_order_relaxed);
                double lr = cfg.lr0 -
                            lr_span * static_cast<double>(n_done) /
                                static_cast<double>(sh.total_updates);
                if (lr < sh.lr_min) lr = sh.lr_min;

                const PairCategory cat = categorize(word, ctx, mask);
                double l = 0.0;
                switch (cat) {
                    case PairCategory::DD:
                        l = use_pi_s
                                ? update_dd_pair(emb, word, ctx, cfg.negatives, cfg.pi_s,
                                                 lr, *sh.tables->in, *sh.tables->out, rng)
                                : update_sgns_pair(emb, word, ctx, cfg.negatives, lr,
                                                   sh.tables->global, rng);
                        loss.dd += l;
                        break;
                    case PairCategory::Mixed:
                        l = use_pi_o
                                ? update_mixed_pair(emb, word, ctx, cfg.pi_o, lr, rng)
                                : update_sgns_pair(emb, word, ctx, cfg.negatives, lr,
                                                   sh.tables->global, rng);
                        loss.mixed += l;
                        break;
                    case PairCategory::NN:
                        l = update_sgns_pair(emb, word, ctx, cfg.negatives, lr,
                                             sh.tables->global, rng);
                        loss.nn += l;
                        break;
                }
                loss.total += l;
            }
        }
    }
}

} // namespace

TrainResult train(const TokenStream& stream, const WordTable& table,
                  const DomainVocabulary& vocab, const TrainingConfig& cfg) {
    cfg.validate();

    const std::vector<char> mask = vocab_mask(vocab, table);
    bool any_in_vocab = false;
    for (char m : mask) any_in_vocab = any_in_vocab || m != 0;

    Tables tables{UnigramTable::build(table, cfg.alpha, Restrict::all, nullptr), nullptr, nullptr};
    if (cfg.uses_pi_s() && any_in_vocab) {
        // A DD pair is possible, so both restricted supports must exist.
        tables.in = std::make_unique<UnigramTable>(
            UnigramTable::build(table, cfg.alpha, Restrict::in_vocab, &vocab));
        tables.out = std::make_unique<UnigramTable>(
            UnigramTable::build(table, cfg.alpha, Restrict::not_in_vocab, &vocab));
    }

    // Word rows start uniform in [-0.5/dim, +0.5/dim), context rows at zero.
    TrainResult result;
    result.embeddings = EmbeddingSet(table.size(), cfg.dim);
    {
        Rng init_rng(cfg.seed);
        const double scale = 1.0 / cfg.dim;
        for (std::size_t id = 0; id < table.size(); ++id) {
            double* row = result.embeddings.word(static_cast<int>(id));
            for (int j = 0; j < cfg.dim; ++j) {
                row[j] = (init_rng.uniform() - 0.5) * scale;
            }
        }
    }

    // Pair census: drives the learning-rate schedule and the per-category
    // loss denominators.
    for (const auto& sentence : stream) {
        const int n = static_cast<int>(sentence.size());
        for (int i = 0; i < n; ++i) {
            const int lo = std::max(0, i - cfg.window);
            const int hi = std::min(n - 1, i + cfg.window);
            for (int j = lo; j <= hi; ++j) {
                if (j == i) continue;
                switch (categorize(sentence[i], sentence[j], mask)) {
                    case PairCategory::DD: ++result.pair_counts.dd; break;
                    case PairCategory::NN: ++result.pair_counts.nn; break;
                    case PairCategory::Mixed: ++result.pair_counts.mixed; break;
                }
            }
        }
    }
    const long long pairs_per_epoch = result.pair_counts.total();
    if (pairs_per_epoch == 0) {
        throw EmptyCorpusError("corpus yields no training pairs after filtering");
    }
    result.scheduled_updates = static_cast<long long>(cfg.epochs) * pairs_per_epoch;

    std::atomic<long long> updates_done{0};
    Shared sh{&stream,       &mask,
              &tables,       &cfg,
              &result.embeddings, &updates_done,
              result.scheduled_updates, cfg.resolved_lr_min()};

    const int workers = static_cast<int>(std::min<long long>(
        cfg.workers, std::max<long long>(1, static_cast<long long>(stream.size()))));
    std::vector<Rng> rngs;
    rngs.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) rngs.emplace_back(cfg.seed + static_cast<std::uint64_t>(w));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        EpochLoss epoch_loss;
        if (workers == 1) {
            run_shard(sh, 0, stream.size(), rngs[0], epoch_loss);
        } else {
            // Contiguous sentence blocks per worker; rows move without locks,
            // so multi-worker runs are reproducible only statistically.
            std::vector<EpochLoss> partial(static_cast<std::size_t>(workers));
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            const std::size_t per = (stream.size() + static_cast<std::size_t>(workers) - 1) /
                                    static_cast<std::size_t>(workers);
            for (int w = 0; w < workers; ++w) {
                const std::size_t begin = std::min(stream.size(), static_cast<std::size_t>(w) * per);
                const std::size_t end = std::min(stream.size(), begin + per);
                pool.emplace_back(run_shard, std::cref(sh), begin, end,
                                  std::ref(rngs[static_cast<std::size_t>(w)]),
                                  std::ref(partial[static_cast<std::size_t>(w)]));
            }
            for (auto& t : pool) t.join();
            for (const EpochLoss& p : partial) {
                epoch_loss.dd += p.dd;
                epoch_loss.nn += p.nn;
                epoch_loss.mixed += p.mixed;
                epoch_loss.total += p.total;
            }
        }
        if (!std::isfinite(epoch_loss.total)) {
            throw NonFiniteUpdateError("objective became non-finite in epoch " +
                                       std::to_string(epoch + 1));
        }
        result.epoch_losses.push_back(epoch_loss);
    }

    if (!result.embeddings.all_finite()) {
        throw NonFiniteUpdateError("trained embeddings contain non-finite values");
    }
    return result;
}

} // namespace dis2vec
