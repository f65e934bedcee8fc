#include "toplab/phrases.hpp"

#include <stdexcept>

namespace toplab::phrases {

namespace {

constexpr char kSep = '\x1f';

std::string key_of(std::span<const std::string> terms) {
    std::string key;
    for (const std::string& t : terms) {
        if (!key.empty()) key.push_back(kSep);
        key += t;
    }
    return key;
}

}  // namespace

std::string NGram::joined() const {
    std::string out;
    for (const std::string& t : terms) {
        if (!out.empty()) out.push_back(' ');
        out += t;
    }
    return out;
}

std::vector<textprep::Token> chunk_filter(std::span<const textprep::Token> tokens) {
    std::vector<textprep::Token> out;
    out.reserve(tokens.size());
    for (const textprep::Token& tok : tokens) {
        if (textprep::is_adjective(tok.tag) || textprep::is_verb(tok.tag) ||
            textprep::is_adverb(tok.tag) || textprep::is_noun(tok.tag))
            out.push_back(tok);
    }
    return out;
}

std::vector<NGram> ngrams(std::span<const std::string> tokens, std::size_t n) {
    if (n < 1) throw std::invalid_argument("ngrams: n must be >= 1");
    std::vector<NGram> out;
    if (tokens.size() < n) return out;
    out.reserve(tokens.size() - n + 1);
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        NGram g;
        g.terms.assign(tokens.begin() + i, tokens.begin() + i + n);
        out.push_back(std::move(g));
    }
    return out;
}

NgramCounts::NgramCounts(std::span<const std::string> tokens, std::size_t n) : n_(n) {
    if (n < 1) throw std::invalid_argument("NgramCounts: n must be >= 1");
    // histories are counted over the same windows as the n-grams so that the
    // conditional distribution sums to 1 for every seen history
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++gram_counts_[key_of(tokens.subspan(i, n))];
        ++history_counts_[key_of(tokens.subspan(i, n - 1))];
    }
}

double NgramCounts::probability(std::span<const std::string> history,
                                std::string_view word) const {
    if (history.size() + 1 != n_)
        throw std::invalid_argument("NgramCounts: history must have n-1 terms");
    auto hist = history_counts_.find(key_of(history));
    if (hist == history_counts_.end() || hist->second == 0) return 0.0;
    std::string key = key_of(history);
    if (!key.empty()) key.push_back(kSep);
    key += word;
    auto gram = gram_counts_.find(key);
    if (gram == gram_counts_.end()) return 0.0;
    return static_cast<double>(gram->second) / static_cast<double>(hist->second);
}

double ngram_prob(std::span<const std::string> history, std::string_view word,
                  const NgramCounts& counts) {
    return counts.probability(history, word);
}

}  // namespace toplab::phrases
