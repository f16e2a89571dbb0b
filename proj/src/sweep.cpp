#include "dis2vec/sweep.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dis2vec/embedding.hpp"
#include "dis2vec/errors.hpp"

namespace dis2vec {

std::vector<TrainingConfig> enumerate_grid(const GridSpec& grid,
                                           const TrainingConfig& base) {
    const std::vector<double> pi_s_axis =
        base.uses_pi_s() ? grid.pi_s : std::vector<double>{base.pi_s};
    const std::vector<double> pi_o_axis =
        base.uses_pi_o() ? grid.pi_o : std::vector<double>{base.pi_o};

    std::vector<TrainingConfig> configs;
    for (int dim : grid.dims) {
        for (int window : grid.windows) {
            for (int negatives : grid.negatives) {
                for (double alpha : grid.alphas) {
                    for (double pi_s : pi_s_axis) {
                        for (double pi_o : pi_o_axis) {
                            TrainingConfig cfg = base;
                            cfg.dim = dim;
                            cfg.window = window;
                            cfg.negatives = negatives;
                            cfg.alpha = alpha;
                            cfg.pi_s = pi_s;
                            cfg.pi_o = pi_o;
                            cfg.workers = 1; // every cell stays reproducible
                            configs.push_back(cfg);
                        }
                    }
                }
            }
        }
    }
    return configs;
}

SweepResult run_sweep(const std::vector<std::vector<std::string>>& sentences,
                      const DomainVocabulary& vocab,
                      const std::vector<AnnotationEntry>& annotations,
                      const GridSpec& grid, const TrainingConfig& base,
                      int jobs) {
    if (jobs <= 0) throw UsageError("jobs must be positive");
    const std::vector<TaxonomyQuery> queries = build_queries(annotations, vocab);
    const std::vector<TrainingConfig> configs = enumerate_grid(grid, base);

    SweepResult result;
    result.cells.resize(configs.size());

    // Cells are independent; workers claim indices off a shared counter and
    // write to disjoint slots.
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= configs.size() || failed.load()) return;
            try {
                TrainArtifacts art = train_sentences(sentences, vocab, configs[i]);
                const WordVectors vectors =
                    WordVectors::from_training(art.table, art.result.embeddings);
                const TaxonomyReport rep = report(queries, vectors, vocab);
                result.cells[i].config = configs[i];
                result.cells[i].category_accuracy = rep.category_means;
                result.cells[i].overall = rep.overall_mean;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mu);
                failure = e.what();
                failed.store(true);
                return;
            }
        }
    };

    const int n_threads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(jobs), configs.size()));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failed.load()) {
        throw DataError("sweep cell failed: " + failure);
    }

    for (TermCategory cat : kTaskCategories) {
        std::size_t best = 0;
        double best_score = -1.0;
        for (std::size_t i = 0; i < result.cells.size(); ++i) {
            auto it = result.cells[i].category_accuracy.find(cat);
            if (it != result.cells[i].category_accuracy.end() && it->second > best_score) {
                best_score = it->second;
                best = i;
            }
        }
        if (best_score >= 0.0) result.best_cell[cat] = best;
    }
    for (std::size_t i = 1; i < result.cells.size(); ++i) {
        if (result.cells[i].overall > result.cells[result.best_overall].overall) {
            result.best_overall = i;
        }
    }
    return result;
}

namespace {

std::string describe(const TrainingConfig& cfg) {
    std::ostringstream os;
    os << "dim=" << cfg.dim << " window=" << cfg.window << " negatives=" << cfg.negatives
       << " alpha=" << cfg.alpha;
    if (cfg.uses_pi_s()) os << " pi_s=" << cfg.pi_s;
    if (cfg.uses_pi_o()) os << " pi_o=" << cfg.pi_o;
    return os.str();
}

template <class T>
void tally_axis(std::ostringstream& os, const std::string& name,
                const std::vector<T>& values, const std::vector<T>& winners) {
    os << "  " << name << ":";
    for (const T& v : values) {
        long long n = 0;
        for (const T& w : winners) {
            if (w == v) ++n;
        }
        os << ' ' << v << "=" << n;
    }
    os << '\n';
}

} // namespace

std::string format_tally(const SweepResult& result, const GridSpec& grid,
                         TrainMode mode) {
    std::ostringstream os;
    os << "task winners:\n";
    std::vector<int> win_dim, win_window, win_neg;
    std::vector<double> win_alpha, win_pi_s, win_pi_o;
    for (TermCategory cat : kTaskCategories) {
        auto it = result.best_cell.find(cat);
        if (it == result.best_cell.end()) continue;
        const SweepCell& cell = result.cells[it->second];
        os << "  " << to_string(cat) << ": " << describe(cell.config)
           << " accuracy=" << cell.category_accuracy.at(cat) << '\n';
        win_dim.push_back(cell.config.dim);
        win_window.push_back(cell.config.window);
        win_neg.push_back(cell.config.negatives);
        win_alpha.push_back(cell.config.alpha);
        win_pi_s.push_back(cell.config.pi_s);
        win_pi_o.push_back(cell.config.pi_o);
    }
    os << "value tally (wins across tasks):\n";
    tally_axis(os, "dim", grid.dims, win_dim);
    tally_axis(os, "window", grid.windows, win_window);
    tally_axis(os, "negatives", grid.negatives, win_neg);
    tally_axis(os, "alpha", grid.alphas, win_alpha);
    TrainingConfig probe;
    probe.mode = mode;
    if (probe.uses_pi_s()) tally_axis(os, "pi_s", grid.pi_s, win_pi_s);
    if (probe.uses_pi_o()) tally_axis(os, "pi_o", grid.pi_o, win_pi_o);
    if (!result.cells.empty()) {
        const SweepCell& best = result.cells[result.best_overall];
        os << "best overall: " << describe(best.config)
           << " accuracy=" << best.overall << '\n';
    }
    return os.str();
}

void write_sweep_json(const std::string& path, const SweepResult& result) {
    nlohmann::json cells = nlohmann::json::array();
    for (const SweepCell& cell : result.cells) {
        nlohmann::json acc = nlohmann::json::object();
        for (const auto& [cat, score] : cell.category_accuracy) {
            acc[to_string(cat)] = score;
        }
        cells.push_back({{"config",
                          {{"dim", cell.config.dim},
                           {"window", cell.config.window},
                           {"negatives", cell.config.negatives},
                           {"alpha", cell.config.alpha},
                           {"pi_s", cell.config.pi_s},
                           {"pi_o", cell.config.pi_o},
                           {"mode", to_string(cell.config.mode)}}},
                         {"category_accuracy", std::move(acc)},
                         {"overall", cell.overall}});
    }
    nlohmann::json best = nlohmann::json::object();
    for (const auto& [cat, index] : result.best_cell) {
        best[to_string(cat)] = index;
    }
    nlohmann::json doc{{"cells", std::move(cells)},
                       {"best_cell", std::move(best)},
                       {"best_overall", result.best_overall}};
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open sweep output for writing: " + path);
    out << doc.dump(2) << '\n';
}

} // namespace dis2vec
