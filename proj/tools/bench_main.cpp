// Benchmark of the OpenMP kernels against their serial references: K-Means
// assignment, batch WUP scoring and per-document preprocessing.
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "toplab/kmeans.hpp"
#include "toplab/textprep.hpp"
#include "toplab/wordnet.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-24s serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n", name, serial_ms,
                parallel_ms, parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
    const std::string wordnet_dir = argc > 1 ? argv[1] : "data/wordnet_mini";

    // ---- kmeans assignment ----
    {
        std::mt19937_64 rng(7);
        const std::size_t m = 4000, v = 256;
        const int k = 16;
        toplab::kmeans::TfidfMatrix x;
        x.row_count = m;
        x.vocab.resize(v);
        for (std::size_t t = 0; t < v; ++t) x.vocab[t] = "t" + std::to_string(t);
        x.idf.assign(v, 1.0);
        x.data.resize(m * v);
        for (double& d : x.data) d = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::vector<double> centroids(static_cast<std::size_t>(k) * v);
        for (double& d : centroids) d = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::vector<int> a_serial(m), a_parallel(m);

        auto t0 = Clock::now();
        for (int rep = 0; rep < 20; ++rep)
            toplab::kmeans::detail::assign_points_serial(x, centroids, k, a_serial);
        const double serial = ms_since(t0);
        t0 = Clock::now();
        for (int rep = 0; rep < 20; ++rep)
            toplab::kmeans::detail::assign_points(x, centroids, k, a_parallel);
        const double parallel = ms_since(t0);
        if (a_serial != a_parallel) {
            std::fprintf(stderr, "kmeans assignment mismatch between serial and parallel\n");
            return 1;
        }
        report("kmeans assign", serial, parallel);
    }

    try {
        const auto db = toplab::wordnet::WordNetDb::load(wordnet_dir);

        // ---- batch wup ----
        {
            const auto& nouns = db.all_synsets(toplab::wordnet::Pos::Noun);
            std::vector<std::pair<std::string, std::string>> pairs;
            std::mt19937_64 rng(11);
            for (int i = 0; i < 4000; ++i) {
                const auto& a = nouns[rng() % nouns.size()];
                const auto& b = nouns[rng() % nouns.size()];
                pairs.emplace_back(a.lemmas.front(), b.lemmas.front());
            }
            auto t0 = Clock::now();
            const auto serial_scores = db.wup_words_batch_serial(pairs);
            const double serial = ms_since(t0);
            t0 = Clock::now();
            const auto parallel_scores = db.wup_words_batch(pairs);
            const double parallel = ms_since(t0);
            if (serial_scores != parallel_scores) {
                std::fprintf(stderr, "wup batch mismatch between serial and parallel\n");
                return 1;
            }
            report("wup batch", serial, parallel);
        }

        // ---- preprocessing fan-out ----
        {
            const auto resources = toplab::textprep::Resources::builtin();
            toplab::textprep::Pipeline pipeline(resources, db);
            toplab::corpus::Corpus corpus;
            for (int d = 0; d < 400; ++d) {
                toplab::corpus::Document doc;
                doc.id = "d" + std::to_string(d);
                for (int s = 0; s < 30; ++s)
                    doc.text += "The topic modeling algorithms label the documents of journals. ";
                corpus.documents.push_back(std::move(doc));
            }
            auto t0 = Clock::now();
            const auto serial_tokens = pipeline.preprocess_corpus_serial(corpus);
            const double serial = ms_since(t0);
            t0 = Clock::now();
            const auto parallel_tokens = pipeline.preprocess_corpus(corpus);
            const double parallel = ms_since(t0);
            bool equal = serial_tokens.size() == parallel_tokens.size();
            for (std::size_t i = 0; equal && i < serial_tokens.size(); ++i) {
                equal = serial_tokens[i].size() == parallel_tokens[i].size();
                for (std::size_t j = 0; equal && j < serial_tokens[i].size(); ++j)
                    equal = serial_tokens[i][j].surface == parallel_tokens[i][j].surface &&
                            serial_tokens[i][j].lemma == parallel_tokens[i][j].lemma &&
                            serial_tokens[i][j].tag == parallel_tokens[i][j].tag;
            }
            if (!equal) {
                std::fprintf(stderr, "preprocess mismatch between serial and parallel\n");
                return 1;
            }
            report("preprocess corpus", serial, parallel);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "skipping wordnet benches: %s\n", e.what());
    }
    return 0;
}
