#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "toplab/lda.hpp"

using namespace toplab;

namespace {

using Corpus = std::vector<std::vector<std::string>>;

void check_row_normalization(const lda::LdaModel& m) {
    for (int t = 0; t < m.topic_count(); ++t) {
        auto phi = m.topic_word_distribution(t);
        const double sum = std::accumulate(phi.begin(), phi.end(), 0.0);
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
    for (std::size_t d = 0; d < m.document_count(); ++d) {
        auto theta = m.document_topic_distribution(d);
        const double sum = std::accumulate(theta.begin(), theta.end(), 0.0);
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}

// exact collapsed posterior over all K^N assignment configurations
std::map<std::vector<int>, double> enumerate_posterior(const Corpus& corpus,
                                                       const std::vector<std::string>& vocab,
                                                       int k, double alpha, double beta) {
    std::map<std::string, int> ids;
    for (std::size_t i = 0; i < vocab.size(); ++i) ids[vocab[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> tokens;  // (doc, word)
    for (std::size_t d = 0; d < corpus.size(); ++d)
        for (const std::string& w : corpus[d]) tokens.emplace_back(static_cast<int>(d), ids[w]);

    const int v = static_cast<int>(vocab.size());
    const int m = static_cast<int>(corpus.size());
    const std::size_t n = tokens.size();
    std::map<std::vector<int>, double> posterior;
    std::vector<int> z(n, 0);
    double norm = 0.0;
    while (true) {
        std::vector<std::vector<int>> ndk(m, std::vector<int>(k, 0));
        std::vector<std::vector<int>> nkw(k, std::vector<int>(v, 0));
        std::vector<int> nk(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            ndk[tokens[i].first][z[i]]++;
            nkw[z[i]][tokens[i].second]++;
            nk[z[i]]++;
        }
        double logp = 0.0;
        for (int d = 0; d < m; ++d) {
            int nd = 0;
            for (int t = 0; t < k; ++t) {
                logp += std::lgamma(ndk[d][t] + alpha) - std::lgamma(alpha);
                nd += ndk[d][t];
            }
            logp += std::lgamma(k * alpha) - std::lgamma(nd + k * alpha);
        }
        for (int t = 0; t < k; ++t) {
            for (int w = 0; w < v; ++w)
                logp += std::lgamma(nkw[t][w] + beta) - std::lgamma(beta);
            logp += std::lgamma(v * beta) - std::lgamma(nk[t] + v * beta);
        }
        const double p = std::exp(logp);
        posterior[z] = p;
        norm += p;

        std::size_t i = 0;
        while (i < n && z[i] == k - 1) z[i++] = 0;
        if (i == n) break;
        ++z[i];
    }
    for (auto& [state, p] : posterior) p /= norm;
    return posterior;
}

}  // namespace

TEST_CASE("K=1 gives the smoothed unigram distribution and unit theta") {
    Corpus corpus{{"a", "a", "b"}, {"b", "c"}};
    lda::LdaParams params;
    params.topics = 1;
    params.alpha = 0.5;
    params.beta = 0.01;
    params.iterations = 10;
    auto m = lda::fit_lda(corpus, params);
    REQUIRE(m.vocabulary() == std::vector<std::string>{"a", "b", "c"});
    auto phi = m.topic_word_distribution(0);
    const double denom = 5.0 + 3.0 * 0.01;
    CHECK(phi[0] == doctest::Approx((2 + 0.01) / denom).epsilon(1e-12));
    CHECK(phi[1] == doctest::Approx((2 + 0.01) / denom).epsilon(1e-12));
    CHECK(phi[2] == doctest::Approx((1 + 0.01) / denom).epsilon(1e-12));
    for (std::size_t d = 0; d < m.document_count(); ++d)
        CHECK(m.document_topic_distribution(d)[0] == doctest::Approx(1.0).epsilon(1e-12));
    check_row_normalization(m);
}

TEST_CASE("identical seeds give identical models") {
    Corpus corpus{{"topic", "model", "word"}, {"word", "cluster"}, {"topic", "cluster", "label"}};
    lda::LdaParams params;
    params.topics = 3;
    params.iterations = 50;
    params.seed = 1;
    auto a = lda::fit_lda(corpus, params);
    auto b = lda::fit_lda(corpus, params);
    CHECK(a.assignments() == b.assignments());
    for (int t = 0; t < a.topic_count(); ++t) {
        auto pa = a.topic_word_distribution(t);
        auto pb = b.topic_word_distribution(t);
        for (std::size_t w = 0; w < pa.size(); ++w) CHECK(pa[w] == pb[w]);
    }
    params.seed = 2;
    auto c = lda::fit_lda(corpus, params);
    CHECK(a.assignments() != c.assignments());  // different chain, overwhelmingly
    check_row_normalization(a);
    check_row_normalization(c);
}

TEST_CASE("errors: bad arguments") {
    Corpus corpus{{"a"}};
    lda::LdaParams params;
    params.topics = 0;
    CHECK_THROWS_AS(lda::fit_lda(corpus, params), std::invalid_argument);
    params.topics = 2;
    CHECK_THROWS_AS(lda::fit_lda(Corpus{}, params), std::invalid_argument);
    CHECK_THROWS_AS(lda::fit_lda(Corpus{{}, {}}, params), std::invalid_argument);
}

TEST_CASE("gibbs bookkeeping stays consistent through sweeps") {
    Corpus corpus{{"a", "b", "c", "a"}, {"b", "b", "d"}, {"d", "a"}};
    lda::LdaParams params;
    params.topics = 3;
    params.alpha = 0.4;
    params.beta = 0.05;
    params.seed = 9;
    lda::GibbsSampler sampler(corpus, params);
    for (int sweep = 0; sweep < 20; ++sweep) {
        sampler.sweep();
        const int k = sampler.topic_count();
        const std::size_t v = sampler.vocabulary_size();
        auto ndk = sampler.doc_topic_counts();
        auto nkw = sampler.topic_word_counts();
        auto nk = sampler.topic_counts();
        for (std::size_t d = 0; d < corpus.size(); ++d) {
            int row = 0;
            for (int t = 0; t < k; ++t) row += ndk[d * k + t];
            CHECK(row == static_cast<int>(corpus[d].size()));
        }
        for (int t = 0; t < k; ++t) {
            int row = 0;
            for (std::size_t w = 0; w < v; ++w) row += nkw[static_cast<std::size_t>(t) * v + w];
            CHECK(row == nk[t]);
        }
        for (const auto& doc : sampler.assignments())
            for (int z : doc) {
                CHECK(z >= 0);
                CHECK(z < k);
            }
    }
}

TEST_CASE("sampled assignment distribution matches exhaustive enumeration") {
    // 3 tokens, V=2, K=2: 8 configurations enumerated exactly
    Corpus corpus{{"w0", "w1"}, {"w0"}};
    const double alpha = 0.5, beta = 0.5;
    auto exact = enumerate_posterior(corpus, {"w0", "w1"}, 2, alpha, beta);
    REQUIRE(exact.size() == 8);

    lda::LdaParams params;
    params.topics = 2;
    params.alpha = alpha;
    params.beta = beta;
    params.seed = 1;
    lda::GibbsSampler sampler(corpus, params);
    const int burnin = 2000, sweeps = 50000;
    for (int i = 0; i < burnin; ++i) sampler.sweep();
    std::map<std::vector<int>, int> histogram;
    for (int i = 0; i < sweeps; ++i) {
        sampler.sweep();
        std::vector<int> state;
        for (const auto& doc : sampler.assignments())
            state.insert(state.end(), doc.begin(), doc.end());
        histogram[state]++;
    }
    double tv = 0.0;
    for (const auto& [state, p] : exact) {
        const double empirical =
            histogram.count(state) ? static_cast<double>(histogram[state]) / sweeps : 0.0;
        tv += std::abs(empirical - p);
    }
    tv /= 2.0;
    CHECK(tv < 0.05);
}

TEST_CASE("top_words ordering, ties and bounds") {
    Corpus corpus{{"b", "a", "a", "c", "b"}};
    lda::LdaParams params;
    params.topics = 1;
    params.alpha = 1.0;
    params.beta = 0.1;
    params.iterations = 5;
    auto m = lda::fit_lda(corpus, params);
    // vocab order: b, a, c ; counts: b=2 a=2 c=1 -> tie between b and a broken
    // by vocabulary index (b first)
    auto top = lda::top_words(m, 0, 3);
    REQUIRE(top.size() == 3);
    CHECK(top[0].first == "b");
    CHECK(top[1].first == "a");
    CHECK(top[2].first == "c");
    CHECK(top[0].second >= top[1].second);
    CHECK(top[1].second >= top[2].second);

    auto all = lda::top_words(m, 0, m.vocabulary_size());
    double sum = 0.0;
    for (const auto& [w, p] : all) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-9);

    CHECK_THROWS_AS(lda::top_words(m, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(lda::top_words(m, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(lda::top_words(m, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(lda::top_words(m, 0, 99), std::invalid_argument);
}

TEST_CASE("final assignments reconstruct the phi and theta numerators") {
    Corpus corpus{{"a", "b", "c", "a"}, {"b", "d"}, {"c", "c", "d", "a"}};
    lda::LdaParams params;
    params.topics = 2;
    params.alpha = 0.7;
    params.beta = 0.03;
    params.iterations = 40;
    params.seed = 13;
    auto m = lda::fit_lda(corpus, params);

    std::map<std::string, int> ids;
    for (std::size_t i = 0; i < m.vocabulary_size(); ++i) ids[m.vocabulary()[i]] = int(i);
    const int k = m.topic_count();
    const std::size_t v = m.vocabulary_size();
    std::vector<int> nkw(k * v, 0), nk(k, 0);
    std::vector<std::vector<int>> ndk(corpus.size(), std::vector<int>(k, 0));
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        REQUIRE(m.assignments()[d].size() == corpus[d].size());
        for (std::size_t i = 0; i < corpus[d].size(); ++i) {
            const int z = m.assignments()[d][i];
            ++nkw[static_cast<std::size_t>(z) * v + ids[corpus[d][i]]];
            ++nk[z];
            ++ndk[d][z];
        }
    }
    for (int t = 0; t < k; ++t) {
        auto phi = m.topic_word_distribution(t);
        for (std::size_t w = 0; w < v; ++w) {
            const double want = (nkw[static_cast<std::size_t>(t) * v + w] + m.beta()) /
                                (nk[t] + v * m.beta());
            CHECK(phi[w] == doctest::Approx(want).epsilon(1e-12));
        }
    }
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        auto theta = m.document_topic_distribution(d);
        for (int t = 0; t < k; ++t) {
            const double want =
                (ndk[d][t] + m.alpha()) / (corpus[d].size() + k * m.alpha());
            CHECK(theta[t] == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("model persistence round-trips") {
    Corpus corpus{{"alpha", "beta", "gamma"}, {"beta", "gamma", "gamma"}};
    lda::LdaParams params;
    params.topics = 2;
    params.iterations = 30;
    params.seed = 5;
    auto m = lda::fit_lda(corpus, params);
    const auto path = std::filesystem::temp_directory_path() / "toplab-lda-roundtrip.txt";
    m.save(path);
    auto loaded = lda::LdaModel::load(path);
    std::filesystem::remove(path);
    CHECK(loaded.topic_count() == m.topic_count());
    CHECK(loaded.vocabulary() == m.vocabulary());
    CHECK(loaded.assignments() == m.assignments());
    CHECK(loaded.alpha() == m.alpha());
    CHECK(loaded.beta() == m.beta());
    for (int t = 0; t < m.topic_count(); ++t) {
        auto a = m.topic_word_distribution(t);
        auto b = loaded.topic_word_distribution(t);
        for (std::size_t w = 0; w < a.size(); ++w) CHECK(a[w] == b[w]);  // bitwise
    }
    for (std::size_t d = 0; d < m.document_count(); ++d) {
        auto a = m.document_topic_distribution(d);
        auto b = loaded.document_topic_distribution(d);
        for (int t = 0; t < m.topic_count(); ++t) CHECK(a[t] == b[t]);
    }
}
