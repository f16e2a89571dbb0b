#include "dis2vec/sampler.hpp"

#include <cmath>

#include "dis2vec/errors.hpp"

namespace dis2vec {

UnigramTable UnigramTable::build(const WordTable& table, double alpha,
                                 Restrict restrict, const DomainVocabulary* vocab) {
    std::vector<char> mask;
    if (restrict != Restrict::all) {
        mask = vocab_mask(*vocab, table);
    }

    UnigramTable out;
    double total = 0.0;
    for (std::size_t id = 0; id < table.size(); ++id) {
        if (restrict == Restrict::in_vocab && !mask[id]) continue;
        if (restrict == Restrict::not_in_vocab && mask[id]) continue;
        const double w = std::pow(static_cast<double>(table.count_of(static_cast<int>(id))), alpha);
        out.support_.push_back(static_cast<int>(id));
        out.weights_.push_back(w);
        total += w;
    }
    if (out.support_.empty()) {
        throw EmptySupportError("negative-sampling support is empty under the requested restriction");
    }
    for (double& w : out.weights_) w /= total;

    // Vose alias construction: O(n) setup, O(1) per draw.
    const std::size_t n = out.support_.size();
    out.alias_prob_.assign(n, 1.0);
    out.alias_.assign(n, 0);
    std::vector<double> scaled(n);
    std::vector<std::size_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
        scaled[i] = out.weights_[i] * static_cast<double>(n);
        (scaled[i] < 1.0 ? small : large).push_back(i);
    }
    while (!small.empty() && !large.empty()) {
        const std::size_t s = small.back();
        const std::size_t l = large.back();
        small.pop_back();
        large.pop_back();
        out.alias_prob_[s] = scaled[s];
        out.alias_[s] = static_cast<int>(l);
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    // leftovers are 1.0 up to rounding; keep alias_prob == 1 so alias is unused
    return out;
}

int UnigramTable::draw(Rng& rng) const {
    const std::size_t n = support_.size();
    const double x = rng.uniform() * static_cast<double>(n);
    std::size_t i = static_cast<std::size_t>(x);
    if (i >= n) i = n - 1; // guard the u == 1-ulp edge
    const double frac = x - static_cast<double>(i);
    const std::size_t slot = frac < alias_prob_[i] ? i : static_cast<std::size_t>(alias_[i]);
    return support_[slot];
}

int draw_dd_negative(double pi_s, const UnigramTable& t_out,
                     const UnigramTable& t_in, Rng& rng) {
    const UnigramTable& chosen = rng.uniform() < pi_s ? t_out : t_in;
    return chosen.draw(rng);
}

} // namespace dis2vec
