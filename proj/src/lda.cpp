#include "toplab/lda.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace toplab::lda {

namespace {

// engine-independent uniform in [0, 1)
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void write_double(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%a", v);
    out << buf;
}

// hexfloat round-trips exactly; stream extraction cannot parse it, strtod can
double read_double(std::istream& in) {
    std::string tok;
    in >> tok;
    return std::strtod(tok.c_str(), nullptr);
}

}  // namespace

LdaModel::LdaModel(int k, double alpha, double beta, int iterations, std::uint64_t seed,
                   std::vector<std::string> vocab, std::vector<double> phi,
                   std::vector<double> theta, std::vector<std::vector<int>> assignments)
    : k_(k),
      alpha_(alpha),
      beta_(beta),
      iterations_(iterations),
      seed_(seed),
      vocab_(std::move(vocab)),
      phi_(std::move(phi)),
      theta_(std::move(theta)),
      assignments_(std::move(assignments)) {}

std::span<const double> LdaModel::topic_word_distribution(int topic) const {
    if (topic < 0 || topic >= k_) throw std::invalid_argument("lda: topic index out of range");
    return std::span<const double>(phi_).subspan(static_cast<std::size_t>(topic) * vocab_.size(),
                                                 vocab_.size());
}

std::span<const double> LdaModel::document_topic_distribution(std::size_t doc) const {
    if (doc >= document_count()) throw std::invalid_argument("lda: document index out of range");
    return std::span<const double>(theta_).subspan(doc * static_cast<std::size_t>(k_),
                                                   static_cast<std::size_t>(k_));
}

GibbsSampler::GibbsSampler(const std::vector<std::vector<std::string>>& corpus_tokens,
                           const LdaParams& params)
    : k_(params.topics),
      alpha_(params.alpha > 0.0 ? params.alpha : 50.0 / params.topics),
      beta_(params.beta),
      rng_(params.seed) {
    if (k_ < 1) throw std::invalid_argument("lda: topic count must be >= 1");
    if (params.beta <= 0.0) throw std::invalid_argument("lda: beta must be > 0");
    std::size_t total_tokens = 0;
    for (const auto& doc : corpus_tokens) total_tokens += doc.size();
    if (corpus_tokens.empty() || total_tokens == 0)
        throw std::invalid_argument("lda: corpus is empty");

    std::unordered_map<std::string, int> word_ids;
    docs_.reserve(corpus_tokens.size());
    for (const auto& doc : corpus_tokens) {
        std::vector<int> ids;
        ids.reserve(doc.size());
        for (const std::string& word : doc) {
            auto [it, inserted] = word_ids.emplace(word, static_cast<int>(vocab_.size()));
            if (inserted) vocab_.push_back(word);
            ids.push_back(it->second);
        }
        docs_.push_back(std::move(ids));
    }

    const std::size_t m = docs_.size();
    const std::size_t v = vocab_.size();
    n_dk_.assign(m * static_cast<std::size_t>(k_), 0);
    n_kw_.assign(static_cast<std::size_t>(k_) * v, 0);
    n_k_.assign(static_cast<std::size_t>(k_), 0);
    cumulative_.assign(static_cast<std::size_t>(k_), 0.0);

    z_.resize(m);
    for (std::size_t d = 0; d < m; ++d) {
        z_[d].resize(docs_[d].size());
        for (std::size_t i = 0; i < docs_[d].size(); ++i) {
            int topic = static_cast<int>(uniform01(rng_) * k_);
            if (topic >= k_) topic = k_ - 1;
            z_[d][i] = topic;
            ++n_dk_[d * k_ + topic];
            ++n_kw_[static_cast<std::size_t>(topic) * v + docs_[d][i]];
            ++n_k_[topic];
        }
    }
}

void GibbsSampler::sweep() {
    const std::size_t v = vocab_.size();
    const double vbeta = static_cast<double>(v) * beta_;
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        for (std::size_t i = 0; i < docs_[d].size(); ++i) {
            const int w = docs_[d][i];
            const int old_topic = z_[d][i];
            --n_dk_[d * k_ + old_topic];
            --n_kw_[static_cast<std::size_t>(old_topic) * v + w];
            --n_k_[old_topic];

            double total = 0.0;
            for (int t = 0; t < k_; ++t) {
                total += (n_dk_[d * k_ + t] + alpha_) * (n_kw_[static_cast<std::size_t>(t) * v + w] + beta_) /
                         (n_k_[t] + vbeta);
                cumulative_[t] = total;
            }
            const double target = uniform01(rng_) * total;
            int topic = 0;
            while (topic < k_ - 1 && cumulative_[topic] <= target) ++topic;

            z_[d][i] = topic;
            ++n_dk_[d * k_ + topic];
            ++n_kw_[static_cast<std::size_t>(topic) * v + w];
            ++n_k_[topic];
        }
    }
}

LdaModel GibbsSampler::finish(int iterations, std::uint64_t seed) const {
    const std::size_t m = docs_.size();
    const std::size_t v = vocab_.size();
    const double vbeta = static_cast<double>(v) * beta_;
    const double kalpha = static_cast<double>(k_) * alpha_;

    std::vector<double> phi(static_cast<std::size_t>(k_) * v);
    for (int t = 0; t < k_; ++t)
        for (std::size_t w = 0; w < v; ++w)
            phi[static_cast<std::size_t>(t) * v + w] =
                (n_kw_[static_cast<std::size_t>(t) * v + w] + beta_) / (n_k_[t] + vbeta);

    std::vector<double> theta(m * static_cast<std::size_t>(k_));
    for (std::size_t d = 0; d < m; ++d) {
        const double nd = static_cast<double>(docs_[d].size());
        for (int t = 0; t < k_; ++t)
            theta[d * k_ + t] = (n_dk_[d * k_ + t] + alpha_) / (nd + kalpha);
    }

    return LdaModel(k_, alpha_, beta_, iterations, seed, vocab_, std::move(phi), std::move(theta),
                    z_);
}

LdaModel fit_lda(const std::vector<std::vector<std::string>>& corpus_tokens,
                 const LdaParams& params) {
    GibbsSampler sampler(corpus_tokens, params);
    for (int it = 0; it < params.iterations; ++it) sampler.sweep();
    return sampler.finish(params.iterations, params.seed);
}

std::vector<std::pair<std::string, double>> top_words(const LdaModel& model, int topic,
                                                      std::size_t n) {
    if (topic < 0 || topic >= model.topic_count())
        throw std::invalid_argument("lda: topic index out of range");
    if (n < 1 || n > model.vocabulary_size())
        throw std::invalid_argument("lda: n must be in [1, V]");
    auto phi = model.topic_word_distribution(topic);
    std::vector<std::size_t> order(model.vocabulary_size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return phi[a] > phi[b]; });
    std::vector<std::pair<std::string, double>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.emplace_back(model.vocabulary()[order[i]], phi[order[i]]);
    return out;
}

void LdaModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("lda: cannot write " + path.string());
    out << "toplab-lda 1\n";
    out << k_ << ' ' << vocab_.size() << ' ' << document_count() << ' ' << iterations_ << ' '
        << seed_ << '\n';
    write_double(out, alpha_);
    out << ' ';
    write_double(out, beta_);
    out << '\n';
    for (const std::string& w : vocab_) out << w << '\n';
    for (std::size_t i = 0; i < phi_.size(); ++i) {
        write_double(out, phi_[i]);
        out << ((i + 1) % vocab_.size() == 0 ? '\n' : ' ');
    }
    for (std::size_t i = 0; i < theta_.size(); ++i) {
        write_double(out, theta_[i]);
        out << ((i + 1) % static_cast<std::size_t>(k_) == 0 ? '\n' : ' ');
    }
    out << assignments_.size() << '\n';
    for (const auto& doc : assignments_) {
        out << doc.size();
        for (int t : doc) out << ' ' << t;
        out << '\n';
    }
}

LdaModel LdaModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("lda: cannot open " + path.string());
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "toplab-lda" || version != 1)
        throw std::runtime_error("lda: " + path.string() + " is not a toplab-lda v1 model");
    int k = 0, iterations = 0;
    std::size_t v = 0, m = 0;
    std::uint64_t seed = 0;
    double alpha = 0.0, beta = 0.0;
    in >> k >> v >> m >> iterations >> seed;
    alpha = read_double(in);
    beta = read_double(in);
    std::vector<std::string> vocab(v);
    for (auto& w : vocab) in >> w;
    std::vector<double> phi(static_cast<std::size_t>(k) * v);
    for (auto& x : phi) x = read_double(in);
    std::vector<double> theta(m * static_cast<std::size_t>(k));
    for (auto& x : theta) x = read_double(in);
    std::size_t docs = 0;
    in >> docs;
    std::vector<std::vector<int>> assignments(docs);
    for (auto& doc : assignments) {
        std::size_t len = 0;
        in >> len;
        doc.resize(len);
        for (auto& t : doc) in >> t;
    }
    if (!in) throw std::runtime_error("lda: truncated model file " + path.string());
    return LdaModel(k, alpha, beta, iterations, seed, std::move(vocab), std::move(phi),
                    std::move(theta), std::move(assignments));
}

}  // namespace toplab::lda
