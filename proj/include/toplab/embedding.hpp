// Skip-gram with negative sampling, trained single-threaded for determinism.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace toplab::embedding {

struct Word2VecParams {
    int dimension = 100;
    int window = 5;
    int negatives = 5;
    int epochs = 5;
    double learning_rate = 0.025;
    int min_count = 1;
    std::uint64_t seed = 1;
};

class EmbeddingModel {
  public:
    EmbeddingModel() = default;
    EmbeddingModel(Word2VecParams params, std::vector<std::string> vocab,
                   std::vector<double> vectors, std::vector<double> context_vectors);

    const Word2VecParams& params() const { return params_; }
    int dimension() const { return params_.dimension; }
    const std::vector<std::string>& vocabulary() const { return vocab_; }
    std::optional<std::size_t> index_of(std::string_view word) const;

    std::span<const double> vector_of(std::size_t index) const;
    std::span<const double> context_vector_of(std::size_t index) const;
    std::span<const double> vectors() const { return vectors_; }
    std::span<const double> context_vectors() const { return context_vectors_; }

    // per-epoch mean SGNS loss recorded during training
    const std::vector<double>& epoch_losses() const { return epoch_losses_; }
    void set_epoch_losses(std::vector<double> losses) { epoch_losses_ = std::move(losses); }

    void save(const std::filesystem::path& path) const;
    static EmbeddingModel load(const std::filesystem::path& path);

  private:
    Word2VecParams params_;
    std::vector<std::string> vocab_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<double> vectors_;          // V x d input vectors
    std::vector<double> context_vectors_;  // V x d
    std::vector<double> epoch_losses_;
};

EmbeddingModel train_word2vec(const std::vector<std::vector<std::string>>& corpus_tokens,
                              const Word2VecParams& params = {});

// topn neighbors of `word` by cosine over the input vectors, the query
// excluded, non-increasing, ties broken by vocabulary index. Unknown words
// raise an error naming nearby vocabulary entries.
std::vector<std::pair<std::string, double>> most_similar(const EmbeddingModel& model,
                                                         std::string_view word,
                                                         std::size_t topn = 10);

double cosine(std::span<const double> a, std::span<const double> b);

namespace detail {

double sigmoid(double x);

// one SGNS term: loss -log(sigmoid(s * u.v)) with s=+1 for an observed pair
// and s=-1 for a negative sample; gradients accumulate into grad_center /
// grad_context.
double sgns_term_loss(std::span<const double> center, std::span<const double> context,
                      bool positive);
void sgns_term_gradients(std::span<const double> center, std::span<const double> context,
                         bool positive, std::span<double> grad_center,
                         std::span<double> grad_context);

}  // namespace detail

}  // namespace toplab::embedding
