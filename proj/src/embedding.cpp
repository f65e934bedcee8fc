#include "toplab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

namespace toplab::embedding {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void write_double(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    out << buf;
}

double read_double(std::istream& in) {
    std::string tok;
    in >> tok;
    return std::strtod(tok.c_str(), nullptr);
}

}  // namespace

namespace detail {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double sgns_term_loss(std::span<const double> center, std::span<const double> context,
                      bool positive) {
    double dot = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) dot += center[i] * context[i];
    const double s = positive ? dot : -dot;
    // -log(sigmoid(s)) in a numerically stable form
    return s > 0.0 ? std::log1p(std::exp(-s)) : -s + std::log1p(std::exp(s));
}

void sgns_term_gradients(std::span<const double> center, std::span<const double> context,
                         bool positive, std::span<double> grad_center,
                         std::span<double> grad_context) {
    double dot = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) dot += center[i] * context[i];
    const double g = sigmoid(dot) - (positive ? 1.0 : 0.0);
    for (std::size_t i = 0; i < center.size(); ++i) {
        grad_center[i] += g * context[i];
        grad_context[i] += g * center[i];
    }
}

}  // namespace detail

EmbeddingModel::EmbeddingModel(Word2VecParams params, std::vector<std::string> vocab,
                               std::vector<double> vectors, std::vector<double> context_vectors)
    : params_(params),
      vocab_(std::move(vocab)),
      vectors_(std::move(vectors)),
      context_vectors_(std::move(context_vectors)) {
    const std::size_t d = static_cast<std::size_t>(params_.dimension);
    if (vectors_.size() != vocab_.size() * d || context_vectors_.size() != vocab_.size() * d)
        throw std::invalid_argument("embedding: matrix sizes do not match vocab x dimension");
    for (std::size_t i = 0; i < vocab_.size(); ++i) index_.emplace(vocab_[i], i);
}

std::optional<std::size_t> EmbeddingModel::index_of(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::span<const double> EmbeddingModel::vector_of(std::size_t index) const {
    const std::size_t d = static_cast<std::size_t>(params_.dimension);
    return std::span<const double>(vectors_).subspan(index * d, d);
}

std::span<const double> EmbeddingModel::context_vector_of(std::size_t index) const {
    const std::size_t d = static_cast<std::size_t>(params_.dimension);
    return std::span<const double>(context_vectors_).subspan(index * d, d);
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

EmbeddingModel train_word2vec(const std::vector<std::vector<std::string>>& corpus_tokens,
                              const Word2VecParams& params) {
    if (params.dimension < 1 || params.window < 1 || params.epochs < 1 || params.negatives < 0)
        throw std::invalid_argument("word2vec: bad hyperparameters");
    std::size_t total = 0;
    for (const auto& sent : corpus_tokens) total += sent.size();
    if (total == 0) throw std::invalid_argument("word2vec: corpus is empty");

    // vocabulary in first-occurrence order, min-count filtered
    std::unordered_map<std::string, std::size_t> counts;
    std::vector<std::string> order;
    for (const auto& sent : corpus_tokens)
        for (const std::string& w : sent) {
            auto [it, inserted] = counts.emplace(w, 0);
            if (inserted) order.push_back(w);
            ++it->second;
        }
    std::vector<std::string> vocab;
    std::unordered_map<std::string, std::size_t> ids;
    for (const std::string& w : order) {
        if (counts[w] >= static_cast<std::size_t>(std::max(1, params.min_count))) {
            ids.emplace(w, vocab.size());
            vocab.push_back(w);
        }
    }
    if (vocab.empty()) throw std::invalid_argument("word2vec: min_count removed every word");

    std::vector<std::vector<std::size_t>> sentences;
    for (const auto& sent : corpus_tokens) {
        std::vector<std::size_t> s;
        for (const std::string& w : sent) {
            auto it = ids.find(w);
            if (it != ids.end()) s.push_back(it->second);
        }
        if (!s.empty()) sentences.push_back(std::move(s));
    }

    // negative-sampling distribution: unigram frequency to the 0.75 power
    const std::size_t v = vocab.size();
    std::vector<double> noise_cdf(v);
    double z = 0.0;
    for (std::size_t i = 0; i < v; ++i) {
        z += std::pow(static_cast<double>(counts[vocab[i]]), 0.75);
        noise_cdf[i] = z;
    }
    for (double& c : noise_cdf) c /= z;

    std::mt19937_64 rng(params.seed);
    const std::size_t d = static_cast<std::size_t>(params.dimension);
    std::vector<double> input(v * d);
    std::vector<double> context(v * d, 0.0);
    const double half_range = 0.5 / static_cast<double>(d);
    for (double& x : input) x = (uniform01(rng) * 2.0 - 1.0) * half_range;

    auto sample_negative = [&]() {
        const double u = uniform01(rng);
        return static_cast<std::size_t>(
            std::lower_bound(noise_cdf.begin(), noise_cdf.end(), u) - noise_cdf.begin());
    };

    std::vector<double> grad_center(d);
    std::vector<double> epoch_losses;
    const double lr = params.learning_rate;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        double loss_sum = 0.0;
        std::size_t loss_terms = 0;
        for (const auto& sent : sentences) {
            for (std::size_t i = 0; i < sent.size(); ++i) {
                const std::size_t center = sent[i];
                double* vc = input.data() + center * d;
                const std::size_t lo = i >= static_cast<std::size_t>(params.window)
                                           ? i - static_cast<std::size_t>(params.window)
                                           : 0;
                const std::size_t hi =
                    std::min(sent.size() - 1, i + static_cast<std::size_t>(params.window));
                for (std::size_t j = lo; j <= hi; ++j) {
                    if (j == i) continue;
                    std::fill(grad_center.begin(), grad_center.end(), 0.0);

                    // positive pair
                    {
                        const std::size_t target = sent[j];
                        double* uo = context.data() + target * d;
                        double dot = 0.0;
                        for (std::size_t t = 0; t < d; ++t) dot += vc[t] * uo[t];
                        const double g = detail::sigmoid(dot) - 1.0;
                        loss_sum += detail::sgns_term_loss({vc, d}, {uo, d}, true);
                        for (std::size_t t = 0; t < d; ++t) {
                            grad_center[t] += g * uo[t];
                            uo[t] -= lr * g * vc[t];
                        }
                    }
                    for (int neg = 0; neg < params.negatives; ++neg) {
                        const std::size_t target = sample_negative();
                        if (target == sent[j]) continue;
                        double* uo = context.data() + target * d;
                        double dot = 0.0;
                        for (std::size_t t = 0; t < d; ++t) dot += vc[t] * uo[t];
                        const double g = detail::sigmoid(dot);
                        loss_sum += detail::sgns_term_loss({vc, d}, {uo, d}, false);
                        for (std::size_t t = 0; t < d; ++t) {
                            grad_center[t] += g * uo[t];
                            uo[t] -= lr * g * vc[t];
                        }
                    }
                    for (std::size_t t = 0; t < d; ++t) vc[t] -= lr * grad_center[t];
                    ++loss_terms;
                }
            }
        }
        epoch_losses.push_back(loss_terms ? loss_sum / static_cast<double>(loss_terms) : 0.0);
    }

    EmbeddingModel model(params, std::move(vocab), std::move(input), std::move(context));
    model.set_epoch_losses(std::move(epoch_losses));
    return model;
}

std::vector<std::pair<std::string, double>> most_similar(const EmbeddingModel& model,
                                                         std::string_view word,
                                                         std::size_t topn) {
    auto idx = model.index_of(word);
    if (!idx) {
        // point the caller at nearby vocabulary entries
        std::vector<std::string> sorted = model.vocabulary();
        std::sort(sorted.begin(), sorted.end());
        auto at = std::lower_bound(sorted.begin(), sorted.end(), std::string(word));
        std::string nearby;
        for (auto it = at > sorted.begin() ? at - 1 : at;
             it != sorted.end() && nearby.size() < 60; ++it) {
            if (!nearby.empty()) nearby += ", ";
            nearby += *it;
        }
        throw std::invalid_argument("word2vec: '" + std::string(word) +
                                    "' is not in the vocabulary (nearest entries: " + nearby + ")");
    }
    auto query = model.vector_of(*idx);
    std::vector<std::pair<std::size_t, double>> scored;
    scored.reserve(model.vocabulary().size());
    for (std::size_t i = 0; i < model.vocabulary().size(); ++i) {
        if (i == *idx) continue;
        scored.emplace_back(i, cosine(query, model.vector_of(i)));
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    const std::size_t take = std::min(topn, scored.size());
    std::vector<std::pair<std::string, double>> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        out.emplace_back(model.vocabulary()[scored[i].first], scored[i].second);
    return out;
}

void EmbeddingModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("embedding: cannot write " + path.string());
    out << "toplab-embedding 1\n";
    out << vocab_.size() << ' ' << params_.dimension << ' ' << params_.window << ' '
        << params_.negatives << ' ' << params_.epochs << ' ' << params_.min_count << ' '
        << params_.seed << ' ';
    write_double(out, params_.learning_rate);
    out << '\n';
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
        out << vocab_[i];
        for (std::size_t t = 0; t < static_cast<std::size_t>(params_.dimension); ++t) {
            out << ' ';
            write_double(out, vectors_[i * params_.dimension + t]);
        }
        for (std::size_t t = 0; t < static_cast<std::size_t>(params_.dimension); ++t) {
            out << ' ';
            write_double(out, context_vectors_[i * params_.dimension + t]);
        }
        out << '\n';
    }
}

EmbeddingModel EmbeddingModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("embedding: cannot open " + path.string());
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "toplab-embedding" || version != 1)
        throw std::runtime_error("embedding: " + path.string() +
                                 " is not a toplab-embedding v1 model");
    std::size_t v = 0;
    Word2VecParams params;
    in >> v >> params.dimension >> params.window >> params.negatives >> params.epochs >>
        params.min_count >> params.seed;
    params.learning_rate = read_double(in);
    std::vector<std::string> vocab(v);
    const std::size_t d = static_cast<std::size_t>(params.dimension);
    std::vector<double> input(v * d), context(v * d);
    for (std::size_t i = 0; i < v; ++i) {
        in >> vocab[i];
        for (std::size_t t = 0; t < d; ++t) input[i * d + t] = read_double(in);
        for (std::size_t t = 0; t < d; ++t) context[i * d + t] = read_double(in);
    }
    if (!in) throw std::runtime_error("embedding: truncated model file " + path.string());
    return EmbeddingModel(params, std::move(vocab), std::move(input), std::move(context));
}

}  // namespace toplab::embedding
