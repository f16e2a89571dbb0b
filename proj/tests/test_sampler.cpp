#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"

#include "dis2vec/errors.hpp"
#include "dis2vec/rng.hpp"
#include "dis2vec/sampler.hpp"
#include "dis2vec/vocabulary.hpp"
#include "support.hpp"

using namespace dis2vec;
using testsupport::table_of;

namespace {

// Empirical distribution over word ids from n draws.
std::map<int, double> draw_frequencies(const UnigramTable& table, Rng& rng,
                                       int n) {
    std::map<int, double> freq;
    for (int i = 0; i < n; ++i) freq[table.draw(rng)] += 1.0;
    for (auto& [id, f] : freq) f /= n;
    return freq;
}

} // namespace

TEST_CASE("unigram weights are normalized and ordered like the support") {
    const WordTable table =
        table_of({{"a", 8}, {"b", 4}, {"c", 2}, {"d", 1}, {"e", 7}});
    for (double alpha : {0.0, 0.5, 0.75, 1.0}) {
        CAPTURE(alpha);
        const UnigramTable t =
            UnigramTable::build(table, alpha, Restrict::all, nullptr);
        REQUIRE(t.size() == table.size());
        REQUIRE(t.weights().size() == t.support().size());
        double sum = 0.0;
        for (double w : t.weights()) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // Support ids ascend and cover the whole table.
        CHECK(std::is_sorted(t.support().begin(), t.support().end()));
    }
}

TEST_CASE("two-word distribution matches the closed form") {
    const WordTable table = table_of({{"a", 4}, {"b", 1}});
    const int a = table.id_of("a");
    const int b = table.id_of("b");

    SUBCASE("alpha = 1 reduces to raw frequencies") {
        const UnigramTable t =
            UnigramTable::build(table, 1.0, Restrict::all, nullptr);
        CHECK(t.weights()[static_cast<std::size_t>(a)] ==
              doctest::Approx(0.8).epsilon(1e-15));
        CHECK(t.weights()[static_cast<std::size_t>(b)] ==
              doctest::Approx(0.2).epsilon(1e-15));
    }

    SUBCASE("alpha = 0.75 damps the frequent word") {
        const UnigramTable t =
            UnigramTable::build(table, 0.75, Restrict::all, nullptr);
        // 4^0.75 / (4^0.75 + 1)
        CHECK(t.weights()[static_cast<std::size_t>(a)] ==
              doctest::Approx(0.7387961250362586).epsilon(1e-15));
    }

    SUBCASE("alpha = 0 is uniform regardless of counts") {
        const UnigramTable t =
            UnigramTable::build(table, 0.0, Restrict::all, nullptr);
        CHECK(t.weights()[static_cast<std::size_t>(a)] ==
              doctest::Approx(0.5).epsilon(1e-15));
        CHECK(t.weights()[static_cast<std::size_t>(b)] ==
              doctest::Approx(0.5).epsilon(1e-15));
    }
}

TEST_CASE("alias draws reproduce the exact weights empirically") {
    const WordTable table = table_of({{"a", 8}, {"b", 4}, {"c", 2}, {"d", 1}});
    const UnigramTable t =
        UnigramTable::build(table, 0.75, Restrict::all, nullptr);
    Rng rng(42);
    const int n = 1'000'000;
    const auto freq = draw_frequencies(t, rng, n);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const int id = t.support()[i];
        CAPTURE(id);
        const auto it = freq.find(id);
        REQUIRE(it != freq.end());
        CHECK(std::abs(it->second - t.weights()[i]) < 0.002);
    }
}

TEST_CASE("draws consume exactly one uniform variate") {
    const WordTable table = table_of({{"a", 8}, {"b", 4}, {"c", 2}});
    const UnigramTable t =
        UnigramTable::build(table, 0.75, Restrict::all, nullptr);
    Rng used(7);
    Rng mirror(7);
    for (int i = 0; i < 10; ++i) {
        (void)t.draw(used);
        (void)mirror.uniform();
        CHECK(used.bits() == mirror.bits()); // streams stay in lockstep
    }
}

TEST_CASE("draw sequences are deterministic under a fixed seed") {
    const WordTable table = table_of({{"a", 5}, {"b", 3}, {"c", 1}});
    const UnigramTable t =
        UnigramTable::build(table, 0.75, Restrict::all, nullptr);
    Rng r1(99);
    Rng r2(99);
    for (int i = 0; i < 1000; ++i) CHECK(t.draw(r1) == t.draw(r2));
}

TEST_CASE("vocabulary restriction partitions the word table") {
    const WordTable table =
        table_of({{"fever", 8}, {"rain", 4}, {"mosquito", 2}, {"sky", 1}});
    DomainVocabulary vocab;
    vocab.add_term("fever", TermCategory::symptoms);
    vocab.add_term("mosquito", TermCategory::transmission_agents);

    const UnigramTable t_in =
        UnigramTable::build(table, 0.75, Restrict::in_vocab, &vocab);
    const UnigramTable t_out =
        UnigramTable::build(table, 0.75, Restrict::not_in_vocab, &vocab);
    const UnigramTable t_all =
        UnigramTable::build(table, 0.75, Restrict::all, nullptr);

    const std::set<int> in(t_in.support().begin(), t_in.support().end());
    const std::set<int> out(t_out.support().begin(), t_out.support().end());
    CHECK(in == std::set<int>{table.id_of("fever"), table.id_of("mosquito")});
    CHECK(out == std::set<int>{table.id_of("rain"), table.id_of("sky")});
    CHECK(in.size() + out.size() == t_all.size());

    SUBCASE("restricted weights renormalize within the support") {
        // fever:8, mosquito:2 under alpha 0.75.
        const double wf = std::pow(8.0, 0.75);
        const double wm = std::pow(2.0, 0.75);
        const std::size_t fever_pos = static_cast<std::size_t>(
            std::find(t_in.support().begin(), t_in.support().end(),
                      table.id_of("fever")) -
            t_in.support().begin());
        CHECK(t_in.weights()[fever_pos] ==
              doctest::Approx(wf / (wf + wm)).epsilon(1e-12));
    }

    SUBCASE("draws never leave the restricted support") {
        Rng rng(3);
        for (int i = 0; i < 5000; ++i) {
            CHECK(in.count(t_in.draw(rng)) == 1);
            CHECK(out.count(t_out.draw(rng)) == 1);
        }
    }
}

TEST_CASE("an empty restricted support is rejected") {
    const WordTable table = table_of({{"fever", 3}, {"cough", 2}});
    DomainVocabulary all_in;
    all_in.add_term("fever", TermCategory::symptoms);
    all_in.add_term("cough", TermCategory::symptoms);
    CHECK_THROWS_AS(
        UnigramTable::build(table, 0.75, Restrict::not_in_vocab, &all_in),
        EmptySupportError);

    DomainVocabulary none_in;
    none_in.add_term("malaise", TermCategory::symptoms);
    CHECK_THROWS_AS(
        UnigramTable::build(table, 0.75, Restrict::in_vocab, &none_in),
        EmptySupportError);
}

TEST_CASE("vocabulary-driven negative draws mix the two tables") {
    // Disjoint supports make table membership observable from the draw.
    const WordTable table =
        table_of({{"fever", 8}, {"rain", 6}, {"mosquito", 3}, {"sky", 1}});
    DomainVocabulary vocab;
    vocab.add_term("fever", TermCategory::symptoms);
    vocab.add_term("mosquito", TermCategory::transmission_agents);
    const UnigramTable t_in =
        UnigramTable::build(table, 0.75, Restrict::in_vocab, &vocab);
    const UnigramTable t_out =
        UnigramTable::build(table, 0.75, Restrict::not_in_vocab, &vocab);
    const std::set<int> in(t_in.support().begin(), t_in.support().end());
    const std::set<int> out(t_out.support().begin(), t_out.support().end());

    SUBCASE("pi_s = 0 always samples the in-vocabulary table") {
        Rng rng(11);
        for (int i = 0; i < 2000; ++i) {
            CHECK(in.count(draw_dd_negative(0.0, t_out, t_in, rng)) == 1);
        }
    }

    SUBCASE("pi_s = 1 always samples the out-of-vocabulary table") {
        Rng rng(12);
        for (int i = 0; i < 2000; ++i) {
            CHECK(out.count(draw_dd_negative(1.0, t_out, t_in, rng)) == 1);
        }
    }

    SUBCASE("each call consumes exactly two uniform variates") {
        Rng used(5);
        Rng mirror(5);
        for (int i = 0; i < 10; ++i) {
            (void)draw_dd_negative(0.7, t_out, t_in, used);
            (void)mirror.uniform();
            (void)mirror.uniform();
            CHECK(used.bits() == mirror.bits());
        }
    }

    SUBCASE("pi_s = 0.7 splits draws 70/30 between the tables") {
        Rng rng(13);
        const int n = 1'000'000;
        int from_out = 0;
        std::map<int, double> freq;
        for (int i = 0; i < n; ++i) {
            const int id = draw_dd_negative(0.7, t_out, t_in, rng);
            freq[id] += 1.0;
            if (out.count(id)) ++from_out;
        }
        CHECK(std::abs(from_out / static_cast<double>(n) - 0.7) < 0.002);

        // Empirical law matches the analytic mixture in L1.
        double l1 = 0.0;
        for (auto& [id, f] : freq) f /= n;
        for (std::size_t i = 0; i < t_out.size(); ++i) {
            l1 += std::abs(freq[t_out.support()[i]] - 0.7 * t_out.weights()[i]);
        }
        for (std::size_t i = 0; i < t_in.size(); ++i) {
            l1 += std::abs(freq[t_in.support()[i]] - 0.3 * t_in.weights()[i]);
        }
        CHECK(l1 < 0.01);
    }
}
