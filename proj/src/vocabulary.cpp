#include "dis2vec/vocabulary.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dis2vec/errors.hpp"

namespace dis2vec {

namespace {

const std::string kCategoryNames[kNumCategories] = {
    "disease_name", "symptoms", "exposures", "transmission_methods", "transmission_agents",
};
const std::string kClassNames[3] = {"emerging", "endemic", "rare"};

std::vector<std::string> split_words(const std::string& term) {
    std::vector<std::string> words;
    std::string word;
    for (char ch : term) {
        if (ch == '_') {
            if (!word.empty()) words.push_back(std::move(word));
            word.clear();
        } else {
            word.push_back(ch);
        }
    }
    if (!word.empty()) words.push_back(std::move(word));
    return words;
}

} // namespace

const std::string& to_string(TermCategory c) {
    return kCategoryNames[static_cast<int>(c)];
}

const std::string& to_string(DiseaseClass c) {
    return kClassNames[static_cast<int>(c)];
}

TermCategory category_from_string(std::string_view s) {
    for (int i = 0; i < kNumCategories; ++i) {
        if (s == kCategoryNames[i]) return static_cast<TermCategory>(i);
    }
    throw InvalidCategoryError("unknown term category: '" + std::string(s) + "'");
}

DiseaseClass disease_class_from_string(std::string_view s) {
    for (int i = 0; i < 3; ++i) {
        if (s == kClassNames[i]) return static_cast<DiseaseClass>(i);
    }
    throw ParseError("unknown disease class: '" + std::string(s) + "'");
}

void DomainVocabulary::add_term(const std::string& term, TermCategory category) {
    if (term.empty()) throw ParseError("vocabulary term must not be empty");
    std::uint8_t& mask = categories_[term];
    mask |= static_cast<std::uint8_t>(1u << static_cast<int>(category));

    auto words = split_words(term);
    if (words.size() > 1) {
        auto& runs = phrases_[words.front()];
        if (std::find(runs.begin(), runs.end(), words) == runs.end()) {
            runs.push_back(words);
            std::sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) {
                if (a.size() != b.size()) return a.size() > b.size();
                return a < b;
            });
        }
    }
}

void DomainVocabulary::add_disease(const std::string& name, DiseaseClass cls) {
    add_term(name, TermCategory::disease_name);
    diseases_[name] = cls;
}

bool DomainVocabulary::contains(std::string_view term) const {
    return categories_.find(std::string(term)) != categories_.end();
}

std::vector<std::string> DomainVocabulary::terms() const {
    std::vector<std::string> out;
    out.reserve(categories_.size());
    for (const auto& [term, mask] : categories_) out.push_back(term);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> DomainVocabulary::terms_in_category(TermCategory c) const {
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << static_cast<int>(c));
    std::vector<std::string> out;
    for (const auto& [term, mask] : categories_) {
        if (mask & bit) out.push_back(term);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TermCategory> DomainVocabulary::categories_of(std::string_view term) const {
    auto it = categories_.find(std::string(term));
    std::vector<TermCategory> out;
    if (it == categories_.end()) return out;
    for (int i = 0; i < kNumCategories; ++i) {
        if (it->second & (1u << i)) out.push_back(static_cast<TermCategory>(i));
    }
    return out;
}

std::map<TermCategory, double> DomainVocabulary::category_proportions() const {
    std::map<TermCategory, long long> counts;
    long long total = 0;
    const std::uint8_t disease_bit =
        static_cast<std::uint8_t>(1u << static_cast<int>(TermCategory::disease_name));
    for (const auto& [term, mask] : categories_) {
        if (mask == disease_bit) continue; // pure disease names are not task terms
        for (TermCategory c : kTaskCategories) {
            if (mask & (1u << static_cast<int>(c))) {
                ++counts[c];
                ++total;
            }
        }
    }
    std::map<TermCategory, double> out;
    if (total == 0) return out;
    for (const auto& [cat, n] : counts) {
        out[cat] = static_cast<double>(n) / static_cast<double>(total);
    }
    return out;
}

void DomainVocabulary::validate() const {
    if (categories_.empty()) {
        throw EmptyVocabularyError("vocabulary has no terms");
    }
    for (const auto& [name, cls] : diseases_) {
        if (!contains(name)) {
            throw ParseError("disease '" + name + "' missing from term list");
        }
    }
}

std::string normalize_term(std::string_view term) {
    std::string out;
    out.reserve(term.size());
    bool pending_sep = false;
    for (char raw : term) {
        unsigned char c = static_cast<unsigned char>(raw);
        if (std::isspace(c) || c == '_') {
            pending_sep = !out.empty();
        } else {
            if (pending_sep) {
                out.push_back('_');
                pending_sep = false;
            }
            out.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    return out;
}

DomainVocabulary parse_vocabulary(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("vocabulary is not valid JSON: ") + e.what());
    }

    DomainVocabulary vocab;
    try {
        for (const auto& entry : doc.value("terms", nlohmann::json::array())) {
            const std::string term = normalize_term(entry.at("term").get<std::string>());
            for (const auto& cat : entry.at("categories")) {
                vocab.add_term(term, category_from_string(cat.get<std::string>()));
            }
        }
        for (const auto& entry : doc.value("diseases", nlohmann::json::array())) {
            const std::string name = normalize_term(entry.at("name").get<std::string>());
            vocab.add_disease(name, disease_class_from_string(entry.at("class").get<std::string>()));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed vocabulary entry: ") + e.what());
    }
    vocab.validate();
    return vocab;
}

DomainVocabulary load_vocabulary(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open vocabulary file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_vocabulary(buf.str());
}

std::vector<std::string> join_phrases(const std::vector<std::string>& sentence,
                                      const DomainVocabulary& vocab) {
    const auto& phrases = vocab.phrase_index();
    if (phrases.empty()) return sentence;

    std::vector<std::string> out;
    out.reserve(sentence.size());
    std::size_t i = 0;
    while (i < sentence.size()) {
        auto it = phrases.find(sentence[i]);
        std::size_t matched = 0;
        if (it != phrases.end()) {
            for (const auto& run : it->second) { // longest first
                if (run.size() <= sentence.size() - i &&
                    std::equal(run.begin(), run.end(), sentence.begin() + static_cast<long>(i))) {
                    matched = run.size();
                    break;
                }
            }
        }
        if (matched > 1) {
            std::string joined = sentence[i];
            for (std::size_t j = 1; j < matched; ++j) {
                joined += '_';
                joined += sentence[i + j];
            }
            out.push_back(std::move(joined));
            i += matched;
        } else {
            out.push_back(sentence[i]);
            ++i;
        }
    }
    return out;
}

std::vector<char> vocab_mask(const DomainVocabulary& vocab, const WordTable& table) {
    std::vector<char> mask(table.size(), 0);
    for (std::size_t id = 0; id < table.size(); ++id) {
        if (vocab.contains(table.word_of(static_cast<int>(id)))) mask[id] = 1;
    }
    return mask;
}

PairCategory categorize(int w, int c, const std::vector<char>& mask) {
    const bool win = mask[static_cast<std::size_t>(w)] != 0;
    const bool cin = mask[static_cast<std::size_t>(c)] != 0;
    if (win && cin) return PairCategory::DD;
    if (!win && !cin) return PairCategory::NN;
    return PairCategory::Mixed;
}

PairCategory categorize(int w, int c, const DomainVocabulary& vocab, const WordTable& table) {
    const bool win = vocab.contains(table.word_of(w));
    const bool cin = vocab.contains(table.word_of(c));
    if (win && cin) return PairCategory::DD;
    if (!win && !cin) return PairCategory::NN;
    return PairCategory::Mixed;
}

} // namespace dis2vec
