#include "dis2vec/manifest.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "dis2vec/errors.hpp"

namespace dis2vec {

std::string fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file for digest: " + path);

    std::uint64_t hash = 14695981039346656037ull; // FNV-1a offset basis
    constexpr std::uint64_t kPrime = 1099511628211ull;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= kPrime;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(hex);
}

void save_manifest(const std::string& path, const RunManifest& manifest) {
    const TrainingConfig& cfg = manifest.config;
    nlohmann::json config{
        {"dim", cfg.dim},
        {"window", cfg.window},
        {"negatives", cfg.negatives},
        {"alpha", cfg.alpha},
        {"pi_s", cfg.pi_s},
        {"pi_o", cfg.pi_o},
        {"mode", to_string(cfg.mode)},
        {"epochs", cfg.epochs},
        {"lr0", cfg.lr0},
        {"lr_min", cfg.lr_min},
        {"subsample_t", cfg.subsample_t},
        {"min_count", cfg.min_count},
        {"seed", cfg.seed},
        {"workers", cfg.workers},
    };
    nlohmann::json losses = nlohmann::json::array();
    for (const EpochLoss& l : manifest.epoch_losses) {
        losses.push_back({{"dd", l.dd}, {"nn", l.nn}, {"mixed", l.mixed}, {"total", l.total}});
    }
    nlohmann::json doc{
        {"config", std::move(config)},
        {"pretokenized", manifest.pretokenized},
        {"corpus_path", manifest.corpus_path},
        {"corpus_digest", manifest.corpus_digest},
        {"embeddings_path", manifest.embeddings_path},
        {"wall_seconds", manifest.wall_seconds},
        {"epoch_losses", std::move(losses)},
        {"pair_counts",
         {{"dd", manifest.pair_counts.dd},
          {"nn", manifest.pair_counts.nn},
          {"mixed", manifest.pair_counts.mixed}}},
        {"vocab_size", manifest.vocab_size},
        {"total_tokens", manifest.total_tokens},
    };
    if (manifest.vocab_path) {
        doc["vocab_path"] = *manifest.vocab_path;
        doc["vocab_digest"] = manifest.vocab_digest;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open manifest for writing: " + path);
    out << doc.dump(2) << '\n';
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open manifest: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
    }

    RunManifest manifest;
    try {
        const nlohmann::json& config = doc.at("config");
        TrainingConfig& cfg = manifest.config;
        cfg.dim = config.at("dim").get<int>();
        cfg.window = config.at("window").get<int>();
        cfg.negatives = config.at("negatives").get<int>();
        cfg.alpha = config.at("alpha").get<double>();
        cfg.pi_s = config.at("pi_s").get<double>();
        cfg.pi_o = config.at("pi_o").get<double>();
        cfg.mode = mode_from_string(config.at("mode").get<std::string>());
        cfg.epochs = config.at("epochs").get<int>();
        cfg.lr0 = config.at("lr0").get<double>();
        cfg.lr_min = config.at("lr_min").get<double>();
        cfg.subsample_t = config.at("subsample_t").get<double>();
        cfg.min_count = config.at("min_count").get<int>();
        cfg.seed = config.at("seed").get<std::uint64_t>();
        cfg.workers = config.at("workers").get<int>();

        manifest.pretokenized = doc.at("pretokenized").get<bool>();
        manifest.corpus_path = doc.at("corpus_path").get<std::string>();
        manifest.corpus_digest = doc.at("corpus_digest").get<std::string>();
        manifest.embeddings_path = doc.at("embeddings_path").get<std::string>();
        manifest.wall_seconds = doc.value("wall_seconds", 0.0);
        if (doc.contains("vocab_path")) {
            manifest.vocab_path = doc.at("vocab_path").get<std::string>();
            manifest.vocab_digest = doc.value("vocab_digest", std::string());
        }
        for (const auto& l : doc.value("epoch_losses", nlohmann::json::array())) {
            manifest.epoch_losses.push_back({l.value("dd", 0.0), l.value("nn", 0.0),
                                             l.value("mixed", 0.0), l.value("total", 0.0)});
        }
        if (doc.contains("pair_counts")) {
            const auto& pc = doc.at("pair_counts");
            manifest.pair_counts.dd = pc.value("dd", 0ll);
            manifest.pair_counts.nn = pc.value("nn", 0ll);
            manifest.pair_counts.mixed = pc.value("mixed", 0ll);
        }
        manifest.vocab_size = doc.value("vocab_size", std::size_t{0});
        manifest.total_tokens = doc.value("total_tokens", 0ll);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed manifest: ") + e.what());
    }
    return manifest;
}

} // namespace dis2vec
