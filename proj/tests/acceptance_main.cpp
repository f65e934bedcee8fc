// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "toplab/embedding.hpp"
#include "toplab/kmeans.hpp"
#include "toplab/labeler.hpp"
#include "toplab/lda.hpp"
#include "toplab/phrases.hpp"
#include "toplab/report.hpp"
#include "toplab/textprep.hpp"
#include "toplab/wordnet.hpp"

using namespace toplab;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void verdict(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++failures;
}

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string data_path(const std::string& rel) { return std::string(TOPLAB_DATA_DIR) + "/" + rel; }

// ---------------------------------------------------------------- criterion 1
void criterion_1_ngram_golden() {
    // warm-up so the timed run measures the operation, not first-touch costs
    (void)textprep::tokenize("warm up pass");
    const auto t0 = Clock::now();
    auto sentences = textprep::tokenize("Please enter your abstract text");
    std::vector<phrases::NGram> bigrams, trigrams;
    if (sentences.size() == 1) {
        bigrams = phrases::ngrams(sentences[0], 2);
        trigrams = phrases::ngrams(sentences[0], 3);
    }
    const double elapsed = ms_since(t0);

    std::vector<std::string> bi, tri;
    for (const auto& g : bigrams) bi.push_back(g.joined());
    for (const auto& g : trigrams) tri.push_back(g.joined());
    const bool ok =
        bi == std::vector<std::string>{"please enter", "enter your", "your abstract",
                                       "abstract text"} &&
        tri == std::vector<std::string>{"please enter your", "enter your abstract",
                                        "your abstract text"} &&
        elapsed < 1.0;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "n-gram golden table (%zu bigrams, %zu trigrams, %.3f ms)", bi.size(),
                  tri.size(), elapsed);
    verdict(1, ok, detail);
}

// ---------------------------------------------------------------- criterion 2
void criterion_2_wup_golden(const wordnet::WordNetDb& db) {
    struct Pair {
        const char* w1;
        const char* w2;
        double reference;
        const char* note;  // non-null for expected sense-policy skew
    };
    const Pair pairs[] = {
        {"topic", "conversation", 0.54, nullptr},
        {"use", "service", 0.80, nullptr},
        {"document", "information", 0.54, nullptr},
        {"news", "information", 0.90, nullptr},
        {"headline", "story", 0.40, nullptr},
        {"label", "identification", 0.62, nullptr},
        {"algorithm", "rule", 0.35,
         "sense-policy skew: the formula sense of 'rule' is algorithm's direct hypernym, so "
         "max-over-senses gives 0.94; the reference assumes the regulation sense (0.35)"},
        {"sentiment", "feeling", 0.90, nullptr},
        {"user", "person", 0.80,
         "sense-policy skew: the direct user-of-a-thing sense is a child of 'person' (0.89); "
         "the reference matches the exploiter sense pairing (0.80)"},
        {"noun", "preposition", 0.75, nullptr},
    };
    const auto t0 = Clock::now();
    int hits = 0;
    std::string misses;
    for (const Pair& p : pairs) {
        const double got = db.wup_words(p.w1, p.w2);
        if (std::abs(got - p.reference) <= 0.02) {
            ++hits;
        } else {
            char line[256];
            std::snprintf(line, sizeof line, "  NOTE %s/%s: got %.4f vs reference %.2f -- %s\n",
                          p.w1, p.w2, got, p.reference,
                          p.note ? p.note : "unexplained miss");
            misses += line;
            if (!p.note) hits = -100;  // unexplained misses are a failure
        }
    }
    const double elapsed = ms_since(t0);
    const bool ok = hits >= 8 && elapsed < 1000.0;
    char detail[128];
    std::snprintf(detail, sizeof detail, "WUP golden suite %d/10 within +/-0.02 (%.1f ms)", hits,
                  elapsed);
    verdict(2, ok, detail);
    std::fputs(misses.c_str(), stdout);
}

// ---------------------------------------------------------------- criterion 3
// independent brute-force oracle: BFS distances off the synset structs,
// depths by rootward search, Wu-Palmer maximized over common ancestors
std::unordered_map<std::uint32_t, int> oracle_distances(const wordnet::WordNetDb& db,
                                                        const wordnet::Synset& s) {
    std::unordered_map<std::uint32_t, int> dist{{s.offset, 0}};
    std::deque<const wordnet::Synset*> queue{&s};
    while (!queue.empty()) {
        const wordnet::Synset* cur = queue.front();
        queue.pop_front();
        for (std::uint32_t h : cur->hypernyms) {
            auto [it, inserted] = dist.emplace(h, dist[cur->offset] + 1);
            if (inserted) queue.push_back(db.find(wordnet::Pos::Noun, h));
        }
    }
    return dist;
}

int oracle_depth(const wordnet::WordNetDb& db, const wordnet::Synset& s) {
    int best = std::numeric_limits<int>::max();
    for (const auto& [offset, dist] : oracle_distances(db, s))
        if (db.find(wordnet::Pos::Noun, offset)->hypernyms.empty())
            best = std::min(best, dist + 1);
    return best;
}

double oracle_wup_words(const wordnet::WordNetDb& db, const std::string& w1,
                        const std::string& w2) {
    auto s1 = db.synsets(w1, wordnet::Pos::Noun);
    auto s2 = db.synsets(w2, wordnet::Pos::Noun);
    if (s1.empty() || s2.empty()) return 0.0;
    double best = 0.0;
    for (const wordnet::Synset* a : s1) {
        auto da = oracle_distances(db, *a);
        for (const wordnet::Synset* b : s2) {
            auto db2 = oracle_distances(db, *b);
            for (const auto& [offset, dist_a] : da) {
                auto it = db2.find(offset);
                if (it == db2.end()) continue;
                const double d = oracle_depth(db, *db.find(wordnet::Pos::Noun, offset));
                best = std::max(best, 2.0 * d / (dist_a + it->second + 2.0 * d));
            }
        }
    }
    return best;
}

void criterion_3_wup_oracle(const wordnet::WordNetDb& db) {
    std::vector<std::string> words;
    for (const wordnet::Synset& s : db.all_synsets(wordnet::Pos::Noun))
        words.push_back(s.lemmas.front());
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());

    std::mt19937_64 rng(20260808);
    bool ok = true;
    double max_err = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::string& w1 = words[rng() % words.size()];
        const std::string& w2 = words[rng() % words.size()];
        const double err = std::abs(db.wup_words(w1, w2) - oracle_wup_words(db, w1, w2));
        max_err = std::max(max_err, err);
        ok = ok && err < 1e-9;
        ok = ok && db.wup_words(w1, w2) == db.wup_words(w2, w1);
        ok = ok && db.wup_words(w1, w1) == 1.0;
    }
    const auto& nouns = db.all_synsets(wordnet::Pos::Noun);
    for (int i = 0; i < 50; ++i) {
        const wordnet::Synset& s = nouns[rng() % nouns.size()];
        const wordnet::Synset& t = nouns[rng() % nouns.size()];
        ok = ok && db.wup(s, s) == 1.0;
        ok = ok && db.wup(s, t) == db.wup(t, s);
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "WUP brute-force oracle on 50 random pairs (max |err| %.2e), identities and "
                  "symmetry",
                  max_err);
    verdict(3, ok, detail);
}

// ---------------------------------------------------------------- criterion 4
void criterion_4_candidates(const wordnet::WordNetDb& db, const textprep::Resources& res) {
    bool ok = true;
    std::string detail = "candidate/label goldens:";

    auto topic_set = labeler::generate_candidates(db, res, "topic");
    std::set<std::string> topic_labels;
    for (const auto& c : topic_set.candidates) topic_labels.insert(c.label);
    for (const char* want : {"matter", "conversation", "discussion", "situation", "event"})
        ok = ok && topic_labels.count(want) > 0;

    labeler::TopicSummary topic_summary;
    topic_summary.doc_set_id = "g";
    topic_summary.top_weighted = "topic";
    auto topic_result = labeler::select_label(db, topic_summary, topic_set);
    const double want_topic_score = db.wup_words("topic", "conversation");
    ok = ok && topic_result.label == "conversation" &&
         std::abs(topic_result.wup_score - want_topic_score) < 1e-12;
    detail += " topic->" + topic_result.label;

    auto news_set = labeler::generate_candidates(db, res, "news");
    std::set<std::string> news_labels;
    for (const auto& c : news_set.candidates) news_labels.insert(c.label);
    for (const char* want : {"information", "event", "magazine", "newspaper", "commentary"})
        ok = ok && news_labels.count(want) > 0;
    labeler::TopicSummary news_summary;
    news_summary.doc_set_id = "g";
    news_summary.top_weighted = "news";
    auto news_result = labeler::select_label(db, news_summary, news_set);
    ok = ok && news_result.label == "information";
    detail += ", news->" + news_result.label;
    verdict(4, ok, detail);
}

// ---------------------------------------------------------------- criterion 5
void criterion_5_aggregation() {
    auto result_of = [](const char* doc, double score) {
        labeler::LabelResult r;
        r.summary.doc_set_id = doc;
        r.wup_score = score;
        return r;
    };
    std::vector<labeler::LabelResult> lda_scores{
        result_of("S1", 0.54), result_of("S1", 0.80), result_of("S1", 0.54),
        result_of("S2", 0.90), result_of("S2", 0.90), result_of("S2", 0.40),
        result_of("S3", 0.54), result_of("S3", 0.62), result_of("S3", 0.54),
    };
    auto lda_report = labeler::aggregate(labeler::ModelKind::Lda, lda_scores);
    std::vector<labeler::LabelResult> km_scores{
        result_of("S1", 0.54), result_of("S1", 0.54), result_of("S1", 0.35),
        result_of("S2", 0.90), result_of("S2", 0.90), result_of("S2", 0.90),
        result_of("S3", 0.54), result_of("S3", 0.80), result_of("S3", 0.75),
    };
    auto km_report = labeler::aggregate(labeler::ModelKind::KMeans, km_scores);

    const double lda_expect[] = {0.62, 0.73, 0.56};
    const double km_expect[] = {0.47, 0.90, 0.69};
    bool ok = lda_report.per_document.size() == 3 && km_report.per_document.size() == 3;
    for (int i = 0; ok && i < 3; ++i) {
        ok = ok && std::abs(lda_report.per_document[i].avg_wup - lda_expect[i]) <= 0.015;
        ok = ok && std::abs(km_report.per_document[i].avg_wup - km_expect[i]) <= 0.015;
    }
    ok = ok && std::abs(lda_report.total_avg - 0.63) <= 0.015;
    ok = ok && std::abs(km_report.total_avg - 0.68) <= 0.015;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "aggregation arithmetic: totals %.4f vs 0.63 and %.4f vs 0.68 (tolerance 0.015)",
                  lda_report.total_avg, km_report.total_avg);
    verdict(5, ok, detail);
}

// ---------------------------------------------------------------- criterion 6
void criterion_6_lda_oracle() {
    const std::vector<std::vector<std::string>> corpus{{"w0", "w1"}, {"w0"}};
    const double alpha = 0.5, beta = 0.5;
    const int k = 2, v = 2;

    // exact collapsed posterior over the 8 assignment configurations
    std::map<std::vector<int>, double> exact;
    std::vector<std::pair<int, int>> tokens{{0, 0}, {0, 1}, {1, 0}};
    std::vector<int> z(3, 0);
    double norm = 0.0;
    while (true) {
        int ndk[2][2] = {{0, 0}, {0, 0}}, nkw[2][2] = {{0, 0}, {0, 0}}, nk[2] = {0, 0};
        for (std::size_t i = 0; i < 3; ++i) {
            ndk[tokens[i].first][z[i]]++;
            nkw[z[i]][tokens[i].second]++;
            nk[z[i]]++;
        }
        double logp = 0.0;
        for (int d = 0; d < 2; ++d) {
            int nd = 0;
            for (int t = 0; t < k; ++t) {
                logp += std::lgamma(ndk[d][t] + alpha) - std::lgamma(alpha);
                nd += ndk[d][t];
            }
            logp += std::lgamma(k * alpha) - std::lgamma(nd + k * alpha);
        }
        for (int t = 0; t < k; ++t) {
            for (int w = 0; w < v; ++w) logp += std::lgamma(nkw[t][w] + beta) - std::lgamma(beta);
            logp += std::lgamma(v * beta) - std::lgamma(nk[t] + v * beta);
        }
        const double p = std::exp(logp);
        exact[z] = p;
        norm += p;
        std::size_t i = 0;
        while (i < 3 && z[i] == k - 1) z[i++] = 0;
        if (i == 3) break;
        ++z[i];
    }
    for (auto& [state, p] : exact) p /= norm;

    const auto t0 = Clock::now();
    lda::LdaParams params;
    params.topics = k;
    params.alpha = alpha;
    params.beta = beta;
    params.seed = 1;
    lda::GibbsSampler sampler(corpus, params);
    for (int i = 0; i < 2000; ++i) sampler.sweep();
    std::map<std::vector<int>, int> histogram;
    const int sweeps = 50000;
    for (int i = 0; i < sweeps; ++i) {
        sampler.sweep();
        std::vector<int> state;
        for (const auto& doc : sampler.assignments())
            state.insert(state.end(), doc.begin(), doc.end());
        histogram[state]++;
    }
    double tv = 0.0;
    for (const auto& [state, p] : exact)
        tv += std::abs((histogram.count(state) ? double(histogram[state]) / sweeps : 0.0) - p);
    tv /= 2.0;
    const double elapsed = ms_since(t0);

    // row normalization on fitted models
    bool rows_ok = true;
    for (auto seed : {1ull, 7ull}) {
        lda::LdaParams fp;
        fp.topics = 3;
        fp.iterations = 100;
        fp.seed = seed;
        auto model = lda::fit_lda(
            {{"topic", "model", "word"}, {"word", "cluster", "label"}, {"topic", "label"}}, fp);
        for (int t = 0; t < model.topic_count(); ++t) {
            auto phi = model.topic_word_distribution(t);
            rows_ok =
                rows_ok && std::abs(std::accumulate(phi.begin(), phi.end(), 0.0) - 1.0) < 1e-9;
        }
        for (std::size_t d = 0; d < model.document_count(); ++d) {
            auto theta = model.document_topic_distribution(d);
            rows_ok =
                rows_ok && std::abs(std::accumulate(theta.begin(), theta.end(), 0.0) - 1.0) < 1e-9;
        }
    }

    const bool ok = tv < 0.05 && elapsed < 10000.0 && rows_ok;
    char detail[160];
    std::snprintf(detail, sizeof detail,
                  "Gibbs vs enumerated posterior TV=%.4f over %d sweeps (%.0f ms), "
                  "row sums within 1e-9",
                  tv, sweeps, elapsed);
    verdict(6, ok, detail);
}

// ---------------------------------------------------------------- criterion 7
void criterion_7_kmeans(const wordnet::WordNetDb& db, const textprep::Resources& res) {
    bool monotone = true, oracle_ok = true, fixtures_ok = true;

    // exhaustive-partition oracle on random M<=8 instances
    std::mt19937_64 rng(31);
    for (int round = 0; round < 6; ++round) {
        const std::size_t m = 5 + round % 4;
        std::vector<std::vector<double>> points;
        for (std::size_t i = 0; i < m; ++i)
            points.push_back({double(rng() % 1000) / 100.0, double(rng() % 1000) / 100.0});
        kmeans::TfidfMatrix x;
        x.row_count = m;
        x.vocab = {"x", "y"};
        x.idf = {1.0, 1.0};
        for (const auto& p : points) x.data.insert(x.data.end(), p.begin(), p.end());

        kmeans::KMeansParams params;
        params.k = 2;
        params.n_init = 20;
        params.seed = 100 + round;
        auto model = kmeans::fit_kmeans(x, params);
        for (const auto& trace : model.inertia_traces)
            for (std::size_t i = 1; i < trace.size(); ++i)
                monotone = monotone && trace[i] <= trace[i - 1] + 1e-12;

        double best = std::numeric_limits<double>::infinity();
        for (std::size_t mask = 1; mask + 1 < (1u << m); ++mask) {
            std::vector<double> mean0(2, 0.0), mean1(2, 0.0);
            std::size_t n0 = 0, n1 = 0;
            for (std::size_t i = 0; i < m; ++i) {
                auto& mean = (mask >> i & 1u) ? mean1 : mean0;
                ((mask >> i & 1u) ? n1 : n0)++;
                mean[0] += points[i][0];
                mean[1] += points[i][1];
            }
            mean0[0] /= n0; mean0[1] /= n0;
            mean1[0] /= n1; mean1[1] /= n1;
            double inertia = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const auto& mean = (mask >> i & 1u) ? mean1 : mean0;
                inertia += (points[i][0] - mean[0]) * (points[i][0] - mean[0]) +
                           (points[i][1] - mean[1]) * (points[i][1] - mean[1]);
            }
            best = std::min(best, inertia);
        }
        oracle_ok = oracle_ok && std::abs(model.inertia - best) <= 1e-9;
    }

    // stated hyperparameters run to completion on the bundled abstracts
    try {
        auto fixture = corpus::load_jsonl(data_path("fixtures/abstracts.jsonl"));
        textprep::Pipeline pipeline(res, db);
        for (const auto& doc : fixture.documents) {
            std::vector<std::vector<std::string>> units;
            for (const auto& sentence : pipeline.preprocess_text_sentences(doc.modeling_text())) {
                if (sentence.empty()) continue;
                std::vector<std::string> lemmas;
                for (const auto& tok : sentence) lemmas.push_back(tok.lemma);
                units.push_back(std::move(lemmas));
            }
            kmeans::KMeansParams params;
            params.k = 3;
            params.n_init = 1;
            params.max_iter = 100;
            params.seed = 1;
            auto model = kmeans::fit_kmeans(kmeans::tfidf(units), params);
            for (const auto& trace : model.inertia_traces)
                for (std::size_t i = 1; i < trace.size(); ++i)
                    monotone = monotone && trace[i] <= trace[i - 1] + 1e-12;
        }
    } catch (const std::exception& e) {
        fixtures_ok = false;
    }

    const bool ok = monotone && oracle_ok && fixtures_ok;
    std::string detail = "K-Means: Lloyd monotone, exhaustive-partition optimum within 1e-9, ";
    detail += fixtures_ok ? "k=3/n_init=1/max_iter=100 completed on fixtures"
                          : "fixture run FAILED";
    verdict(7, ok, detail);
}

// ---------------------------------------------------------------- criterion 8
void criterion_8_word2vec() {
    // gradient check
    std::mt19937_64 rng(3);
    const std::size_t dim = 10;
    double max_rel = 0.0;
    for (bool positive : {true, false}) {
        std::vector<double> center(dim), context(dim);
        for (double& x : center) x = (double(rng() >> 11) * 0x1.0p-53 - 0.5) * 2.0;
        for (double& x : context) x = (double(rng() >> 11) * 0x1.0p-53 - 0.5) * 2.0;
        std::vector<double> g_center(dim, 0.0), g_context(dim, 0.0);
        embedding::detail::sgns_term_gradients(center, context, positive, g_center, g_context);
        const double eps = 1e-6;
        for (std::size_t i = 0; i < dim; ++i) {
            center[i] += eps;
            const double up = embedding::detail::sgns_term_loss(center, context, positive);
            center[i] -= 2 * eps;
            const double down = embedding::detail::sgns_term_loss(center, context, positive);
            center[i] += eps;
            const double numeric = (up - down) / (2 * eps);
            max_rel = std::max(max_rel,
                               std::abs(numeric - g_center[i]) / std::max(1e-8, std::abs(numeric)));
            context[i] += eps;
            const double up2 = embedding::detail::sgns_term_loss(center, context, positive);
            context[i] -= 2 * eps;
            const double down2 = embedding::detail::sgns_term_loss(center, context, positive);
            context[i] += eps;
            const double numeric2 = (up2 - down2) / (2 * eps);
            max_rel = std::max(
                max_rel, std::abs(numeric2 - g_context[i]) / std::max(1e-8, std::abs(numeric2)));
        }
    }

    // synthetic two-context-cluster corpus
    std::vector<std::vector<std::string>> corpus;
    const std::vector<std::string> left{"cat", "dog", "pet", "fur", "paw", "tail"};
    const std::vector<std::string> right{"bridge", "steel", "bolt", "beam", "weld", "rivet"};
    std::mt19937_64 crng(17);
    for (int s = 0; s < 30; ++s) {
        std::vector<std::string> a, b;
        for (int i = 0; i < 8; ++i) {
            a.push_back(left[crng() % left.size()]);
            b.push_back(right[crng() % right.size()]);
        }
        corpus.push_back(a);
        corpus.push_back(b);
    }
    embedding::Word2VecParams params;
    params.dimension = 16;
    params.window = 3;
    params.negatives = 4;
    params.epochs = 8;
    params.learning_rate = 0.05;
    params.seed = 1;
    auto model = embedding::train_word2vec(corpus, params);
    auto vec = [&](const std::string& w) { return model.vector_of(*model.index_of(w)); };
    double within = 0.0, across = 0.0;
    int wn = 0, an = 0;
    for (std::size_t i = 0; i < left.size(); ++i) {
        for (std::size_t j = i + 1; j < left.size(); ++j) {
            within += embedding::cosine(vec(left[i]), vec(left[j]));
            within += embedding::cosine(vec(right[i]), vec(right[j]));
            wn += 2;
        }
        for (std::size_t j = 0; j < right.size(); ++j) {
            across += embedding::cosine(vec(left[i]), vec(right[j]));
            ++an;
        }
    }
    const double mean_within = within / wn, mean_across = across / an;

    auto sims = embedding::most_similar(model, "cat", 10);

    const bool ok = max_rel < 1e-4 && mean_within > mean_across && sims.size() == 10;
    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "SGNS gradients rel err %.2e, cosine within %.3f > across %.3f, most_similar "
                  "returns %zu rows",
                  max_rel, mean_within, mean_across, sims.size());
    verdict(8, ok, detail);
}

// ---------------------------------------------------------------- criterion 9
void criterion_9_end_to_end() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "toplab-acceptance";
    fs::create_directories(dir);
    const fs::path out1 = dir / "run1.json";
    const fs::path out2 = dir / "run2.json";

    auto invoke = [&](const fs::path& out) {
        std::string cmd = std::string(TOPLAB_CLI_BIN) + " run --input " +
                          data_path("fixtures/abstracts.jsonl") + " --wordnet-dir " +
                          data_path("wordnet_mini") +
                          " --model both --topics 3 --words 3 --seed 1 --out " + out.string();
        return std::system(cmd.c_str());
    };

    const auto t0 = Clock::now();
    const int rc1 = invoke(out1);
    const int rc2 = invoke(out2);
    const double elapsed = ms_since(t0);

    bool ok = rc1 == 0 && rc2 == 0 && elapsed < 60000.0;
    bool identical = false, shape_ok = false;
    if (ok) {
        std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
        std::stringstream b1, b2;
        b1 << f1.rdbuf();
        b2 << f2.rdbuf();
        identical = b1.str() == b2.str() && !b1.str().empty();

        auto report = nlohmann::json::parse(b1.str());
        shape_ok = report["models"].size() == 2;
        for (const auto& model : report["models"]) {
            shape_ok = shape_ok && model["documents"].size() == 3;
            for (const auto& doc : model["documents"]) {
                shape_ok = shape_ok && doc["topics"].size() == 3;
                for (const auto& topic : doc["topics"]) {
                    shape_ok = shape_ok && topic["top_words"].size() == 3;
                    shape_ok = shape_ok && !topic["label"].get<std::string>().empty();
                    const double wup = topic["wup"].get<double>();
                    shape_ok = shape_ok && wup >= 0.0 && wup <= 1.0;
                }
            }
        }
    }
    ok = ok && identical && shape_ok;
    char detail[200];
    std::snprintf(detail, sizeof detail,
                  "end-to-end: two runs in %.0f ms, byte-identical JSON=%s, 3x3x3 shape with "
                  "labels=%s",
                  elapsed, identical ? "yes" : "NO", shape_ok ? "yes" : "NO");
    verdict(9, ok, detail);
    fs::remove_all(dir);
}

}  // namespace

int main() {
    try {
        const auto db = wordnet::WordNetDb::load(data_path("wordnet_mini"));
        const auto res = textprep::Resources::builtin();

        criterion_1_ngram_golden();
        criterion_2_wup_golden(db);
        criterion_3_wup_oracle(db);
        criterion_4_candidates(db, res);
        criterion_5_aggregation();
        criterion_6_lda_oracle();
        criterion_7_kmeans(db, res);
        criterion_8_word2vec();
        criterion_9_end_to_end();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance suite aborted: %s\n", e.what());
        return 2;
    }
    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
