#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dis2vec/corpus.hpp"
#include "dis2vec/embedding.hpp"
#include "dis2vec/rng.hpp"
#include "dis2vec/sampler.hpp"
#include "dis2vec/vocabulary.hpp"

namespace dis2vec {

enum class TrainMode : std::uint8_t {
    sgns,
    dis2vec_sample,
    dis2vec_objective,
    dis2vec_combined,
};

const std::string& to_string(TrainMode m);
TrainMode mode_from_string(std::string_view s); // throws UsageError

struct TrainingConfig {
    int dim = 100;            // T
    int window = 5;           // L
    int negatives = 5;        // k
    double alpha = 0.75;      // unigram smoothing
    double pi_s = 0.5;        // sampling parameter for in-vocabulary pairs
    double pi_o = 0.5;        // objective selection parameter for mixed pairs
    TrainMode mode = TrainMode::sgns;
    int epochs = 5;
    double lr0 = 0.025;
    double lr_min = -1.0;     // < 0 means auto: 1e-4 * lr0
    double subsample_t = 1e-5; // <= 0 disables subsampling
    int min_count = 5;
    std::uint64_t seed = 1;
    int workers = 1;

    double resolved_lr_min() const { return lr_min < 0.0 ? 1e-4 * lr0 : lr_min; }
    bool uses_pi_s() const {
        return mode == TrainMode::dis2vec_sample || mode == TrainMode::dis2vec_combined;
    }
    bool uses_pi_o() const {
        return mode == TrainMode::dis2vec_objective || mode == TrainMode::dis2vec_combined;
    }
    void validate() const; // throws std::invalid_argument
};

struct EpochLoss {
    double dd = 0.0;
    double nn = 0.0;
    double mixed = 0.0;
    double total = 0.0; // accumulated independently; equals dd+nn+mixed
};

struct PairCounts {
    long long dd = 0;
    long long nn = 0;
    long long mixed = 0;
    long long total() const { return dd + nn + mixed; }
};

struct TrainResult {
    EmbeddingSet embeddings;
    std::vector<EpochLoss> epoch_losses;
    PairCounts pair_counts;     // per epoch; identical across epochs
    long long scheduled_updates = 0; // epochs * pairs per epoch
};

// Numerically stable logistic function, exact over the full double range.
inline double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

// log(sigmoid(x)) without overflow.
inline double log_sigmoid(double x) {
    if (x >= 0.0) {
        return -std::log1p(std::exp(-x));
    }
    return x - std::log1p(std::exp(x));
}

// Dot products are clamped here before the logistic; full-precision sigmoid
// otherwise (no lookup table).
constexpr double kMaxDot = 30.0;

inline double clamp_dot(double x) { return std::clamp(x, -kMaxDot, kMaxDot); }

namespace detail {

// One SGNS-style stochastic ascent step on
//   log s(w.c) + sum_{i<k} log s(-w.c_Ni),
// negatives produced by draw(). Returns the objective value at the
// pre-update parameters.
//
// All sigmoids and increments are computed against the vectors as they were
// when the pair update began; duplicated rows (c_N == c, c_N == w, repeated
// negatives) therefore receive the sum of their independent increments.
// Update order: negatives are drawn first, then gradients are accumulated,
// then context rows move, then the word row.
template <class DrawNeg>
double sgns_step(EmbeddingSet& emb, int word, int ctx, int k, double lr,
                 DrawNeg&& draw) {
    thread_local std::vector<int> targets;
    thread_local std::vector<double> gains;
    thread_local std::vector<double> word_grad;

    const int dim = emb.dim();
    targets.clear();
    gains.clear();
    targets.push_back(ctx);
    for (int i = 0; i < k; ++i) {
        targets.push_back(draw());
    }

    word_grad.assign(static_cast<std::size_t>(dim), 0.0);
    double* w = emb.word(word);
    double loss = 0.0;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const double* c = emb.ctx(targets[t]);
        double dot = 0.0;
        for (int j = 0; j < dim; ++j) dot += w[j] * c[j];
        dot = clamp_dot(dot);
        double g;
        if (t == 0) {
            g = lr * (1.0 - sigmoid(dot));
            loss += log_sigmoid(dot);
        } else {
            g = lr * (-sigmoid(dot));
            loss += log_sigmoid(-dot);
        }
        gains.push_back(g);
        for (int j = 0; j < dim; ++j) word_grad[j] += g * c[j];
    }
    // Context rows move against the pre-update word row, which is untouched
    // until the final loop.
    for (std::size_t t = 0; t < targets.size(); ++t) {
        double* c = emb.ctx(targets[t]);
        const double g = gains[t];
        for (int j = 0; j < dim; ++j) c[j] += g * w[j];
    }
    for (int j = 0; j < dim; ++j) w[j] += word_grad[j];
    return loss;
}

} // namespace detail

// Standard SGNS update for one (w, c) pair; negatives from the given table.
double update_sgns_pair(EmbeddingSet& emb, int word, int ctx, int k, double lr,
                        const UnigramTable& negatives, Rng& rng);

// In-vocabulary pair: same step, negatives via draw_dd_negative(pi_s, ...).
double update_dd_pair(EmbeddingSet& emb, int word, int ctx, int k, double pi_s,
                      double lr, const UnigramTable& t_in,
                      const UnigramTable& t_out, Rng& rng);

// Out-of-vocabulary pair: plain SGNS against the global table.
double update_nn_pair(EmbeddingSet& emb, int word, int ctx, int k, double lr,
                      const UnigramTable& global_table, Rng& rng);

// Mixed pair: draw z once; z < pi_o ascends log s(-w.c), otherwise
// log s(w.c). No negative samples.
double update_mixed_pair(EmbeddingSet& emb, int word, int ctx, double pi_o,
                         double lr, Rng& rng);

// Run the full optimization over the stream.
//
// Dispatch per pair by (mode, category); learning rate decays linearly from
// lr0 towards lr_min over epochs * pairs updates. Word vectors start uniform
// in [-0.5/T, +0.5/T) from Rng(seed); context vectors start at zero. Worker
// i consumes Rng(seed + i).
//
// workers == 1 replays pairs in strict stream order and is bit-reproducible;
// workers > 1 shards sentences across threads with unsynchronized row
// updates, and the contract is statistical only.
TrainResult train(const TokenStream& stream, const WordTable& table,
                  const DomainVocabulary& vocab, const TrainingConfig& cfg);

} // namespace dis2vec
