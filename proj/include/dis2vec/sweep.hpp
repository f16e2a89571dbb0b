#pragma once

#include <map>
#include <string>
#include <vector>

#include "dis2vec/pipeline.hpp"
#include "dis2vec/taxonomy.hpp"
#include "dis2vec/trainer.hpp"

namespace dis2vec {

// Hyperparameter grid; defaults are the standard explored values with the
// embedding dimension scaled down to desk size.
struct GridSpec {
    std::vector<int> dims = {32, 64};
    std::vector<int> windows = {5, 10, 15};
    std::vector<int> negatives = {1, 5, 15};
    std::vector<double> alphas = {0.75, 1.0};
    std::vector<double> pi_s = {0.3, 0.5, 0.7};
    std::vector<double> pi_o = {0.3, 0.5, 0.7};
};

// Cartesian product over the parameters applicable to base.mode (pi_s and
// pi_o axes collapse for modes that ignore them). Deterministic order.
std::vector<TrainingConfig> enumerate_grid(const GridSpec& grid,
                                           const TrainingConfig& base);

struct SweepCell {
    TrainingConfig config;
    std::map<TermCategory, double> category_accuracy;
    double overall = 0.0;
};

struct SweepResult {
    std::vector<SweepCell> cells; // grid order
    std::map<TermCategory, std::size_t> best_cell; // index into cells per task
    std::size_t best_overall = 0;
};

// Train + evaluate every grid point, jobs configs at a time. Each run is
// internally deterministic (1 worker); results are keyed by config so
// completion order does not matter.
SweepResult run_sweep(const std::vector<std::vector<std::string>>& sentences,
                      const DomainVocabulary& vocab,
                      const std::vector<AnnotationEntry>& annotations,
                      const GridSpec& grid, const TrainingConfig& base,
                      int jobs);

// Per-parameter tally: for each explored value, in how many tasks the best
// configuration used it.
std::string format_tally(const SweepResult& result, const GridSpec& grid,
                         TrainMode mode);
void write_sweep_json(const std::string& path, const SweepResult& result);

} // namespace dis2vec
