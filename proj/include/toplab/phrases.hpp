// POS-filtered chunking, n-gram windows and conditional n-gram probabilities.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "toplab/textprep.hpp"

namespace toplab::phrases {

struct NGram {
    std::vector<std::string> terms;

    std::size_t order() const { return terms.size(); }
    std::string joined() const;
};

// Keeps tokens whose tag family is JJ*, VB*, RB* or NN*; order preserved.
std::vector<textprep::Token> chunk_filter(std::span<const textprep::Token> tokens);

// The max(0, len - n + 1) contiguous windows, in order. n < 1 is an error.
std::vector<NGram> ngrams(std::span<const std::string> tokens, std::size_t n);

// Counts of n-grams and (n-1)-grams over a token stream; probability is the
// maximum-likelihood estimate count(h.w)/count(h) with 0 for unseen histories.
class NgramCounts {
  public:
    NgramCounts(std::span<const std::string> tokens, std::size_t n);

    std::size_t order() const { return n_; }
    double probability(std::span<const std::string> history, std::string_view word) const;

  private:
    std::size_t n_;
    std::unordered_map<std::string, std::uint64_t> gram_counts_;
    std::unordered_map<std::string, std::uint64_t> history_counts_;
};

double ngram_prob(std::span<const std::string> history, std::string_view word,
                  const NgramCounts& counts);

}  // namespace toplab::phrases
