// Latent Dirichlet Allocation fitted by collapsed Gibbs sampling.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace toplab::lda {

struct LdaParams {
    int topics = 3;
    double alpha = 0.0;  // <= 0 selects the 50/K default
    double beta = 0.01;
    int iterations = 1000;
    std::uint64_t seed = 1;
};

class LdaModel {
  public:
    int topic_count() const { return k_; }
    std::size_t document_count() const { return theta_.size() / static_cast<std::size_t>(k_); }
    std::size_t vocabulary_size() const { return vocab_.size(); }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    int iterations() const { return iterations_; }
    std::uint64_t seed() const { return seed_; }

    const std::vector<std::string>& vocabulary() const { return vocab_; }
    std::span<const double> topic_word_distribution(int topic) const;   // phi row
    std::span<const double> document_topic_distribution(std::size_t doc) const;  // theta row
    const std::vector<std::vector<int>>& assignments() const { return assignments_; }

    void save(const std::filesystem::path& path) const;
    static LdaModel load(const std::filesystem::path& path);

    // used by fit_lda and the persistence loader
    LdaModel(int k, double alpha, double beta, int iterations, std::uint64_t seed,
             std::vector<std::string> vocab, std::vector<double> phi, std::vector<double> theta,
             std::vector<std::vector<int>> assignments);

  private:
    int k_ = 0;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    int iterations_ = 0;
    std::uint64_t seed_ = 0;
    std::vector<std::string> vocab_;
    std::vector<double> phi_;    // K x V
    std::vector<double> theta_;  // M x K
    std::vector<std::vector<int>> assignments_;
};

// Sequential-scan collapsed Gibbs sampler. Exposed so tests can observe the
// chain state sweep by sweep; fit_lda drives it for `iterations` sweeps.
class GibbsSampler {
  public:
    GibbsSampler(const std::vector<std::vector<std::string>>& corpus_tokens,
                 const LdaParams& params);

    void sweep();
    const std::vector<std::vector<int>>& assignments() const { return z_; }
    const std::vector<std::string>& vocabulary() const { return vocab_; }
    std::size_t vocabulary_size() const { return vocab_.size(); }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    int topic_count() const { return k_; }

    // count bookkeeping, exposed for the invariant tests
    std::span<const int> doc_topic_counts() const { return n_dk_; }
    std::span<const int> topic_word_counts() const { return n_kw_; }
    std::span<const int> topic_counts() const { return n_k_; }

    LdaModel finish(int iterations, std::uint64_t seed) const;

  private:
    double next_uniform();

    int k_;
    double alpha_;
    double beta_;
    std::vector<std::string> vocab_;
    std::vector<std::vector<int>> docs_;  // word ids
    std::vector<std::vector<int>> z_;
    std::vector<int> n_dk_, n_kw_, n_k_;
    std::mt19937_64 rng_;
    std::vector<double> cumulative_;
};

LdaModel fit_lda(const std::vector<std::vector<std::string>>& corpus_tokens,
                 const LdaParams& params = {});

// The n highest-probability words of a topic, non-increasing, ties broken by
// vocabulary index.
std::vector<std::pair<std::string, double>> top_words(const LdaModel& model, int topic,
                                                      std::size_t n = 3);

}  // namespace toplab::lda
