#include "toplab/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace toplab::kmeans {

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    std::size_t i = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n));
    return i >= n ? n - 1 : i;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
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

TfidfMatrix tfidf(const std::vector<std::vector<std::string>>& corpus_tokens) {
    if (corpus_tokens.empty()) throw std::invalid_argument("tfidf: corpus is empty");
    TfidfMatrix x;
    x.row_count = corpus_tokens.size();

    std::unordered_map<std::string, std::size_t> term_ids;
    std::vector<std::size_t> df;
    std::vector<std::unordered_map<std::size_t, double>> tf(corpus_tokens.size());
    for (std::size_t d = 0; d < corpus_tokens.size(); ++d) {
        for (const std::string& term : corpus_tokens[d]) {
            auto [it, inserted] = term_ids.emplace(term, x.vocab.size());
            if (inserted) {
                x.vocab.push_back(term);
                df.push_back(0);
            }
            if (tf[d][it->second] == 0.0) ++df[it->second];
            tf[d][it->second] += 1.0;
        }
    }

    const double m = static_cast<double>(corpus_tokens.size());
    x.idf.resize(x.vocab.size());
    for (std::size_t t = 0; t < x.vocab.size(); ++t)
        x.idf[t] = std::log((1.0 + m) / (1.0 + static_cast<double>(df[t]))) + 1.0;

    x.data.assign(x.rows() * x.cols(), 0.0);
    for (std::size_t d = 0; d < corpus_tokens.size(); ++d) {
        double norm = 0.0;
        for (const auto& [t, count] : tf[d]) {
            const double w = count * x.idf[t];
            x.data[d * x.cols() + t] = w;
            norm += w * w;
        }
        if (norm > 0.0) {
            norm = std::sqrt(norm);
            for (const auto& [t, count] : tf[d]) x.data[d * x.cols() + t] /= norm;
        } else {
            x.empty_rows.push_back(d);
        }
    }
    return x;
}

namespace detail {

void assign_points_serial(const TfidfMatrix& x, std::span<const double> centroids, int k,
                          std::span<int> assignments) {
    const std::size_t v = x.cols();
    for (std::size_t r = 0; r < x.rows(); ++r) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (int c = 0; c < k; ++c) {
            const double d =
                squared_distance(x.row(r), centroids.subspan(static_cast<std::size_t>(c) * v, v));
            if (d < best) {
                best = d;
                best_c = c;
            }
        }
        assignments[r] = best_c;
    }
}

void assign_points(const TfidfMatrix& x, std::span<const double> centroids, int k,
                   std::span<int> assignments) {
    const std::size_t v = x.cols();
#ifdef TOPLAB_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(x.rows()); ++r) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (int c = 0; c < k; ++c) {
            const double d = squared_distance(
                x.row(static_cast<std::size_t>(r)), centroids.subspan(static_cast<std::size_t>(c) * v, v));
            if (d < best) {
                best = d;
                best_c = c;
            }
        }
        assignments[static_cast<std::size_t>(r)] = best_c;
    }
}

double inertia_of(const TfidfMatrix& x, std::span<const double> centroids, int k,
                  std::span<const int> assignments) {
    (void)k;
    const std::size_t v = x.cols();
    double total = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r)
        total += squared_distance(
            x.row(r), centroids.subspan(static_cast<std::size_t>(assignments[r]) * v, v));
    return total;
}

}  // namespace detail

namespace {

struct LloydResult {
    std::vector<double> centroids;
    std::vector<int> assignments;
    double inertia = 0.0;
    std::vector<double> trace;
};

LloydResult lloyd_once(const TfidfMatrix& x, int k, int max_iter, std::mt19937_64& rng) {
    const std::size_t v = x.cols();
    const std::size_t m = x.rows();

    // Forgy init: k distinct non-zero rows
    std::vector<std::size_t> usable;
    for (std::size_t r = 0; r < m; ++r) usable.push_back(r);
    for (std::size_t e : x.empty_rows)
        usable.erase(std::find(usable.begin(), usable.end(), e));
    std::vector<double> centroids(static_cast<std::size_t>(k) * v);
    for (int c = 0; c < k; ++c) {
        const std::size_t pick = uniform_index(rng, usable.size());
        const std::size_t row = usable[pick];
        usable.erase(usable.begin() + static_cast<std::ptrdiff_t>(pick));
        std::copy_n(x.row(row).data(), v, centroids.begin() + static_cast<std::size_t>(c) * v);
    }

    std::vector<int> assignments(m, -1);
    std::vector<int> previous(m, -1);
    std::vector<double> trace;
    for (int iter = 0; iter < max_iter; ++iter) {
        detail::assign_points(x, centroids, k, assignments);

        // empty-cluster repair: reseed to the point farthest from the empty
        // cluster's previous centroid, lowest index on ties
        std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
        for (int a : assignments) ++sizes[static_cast<std::size_t>(a)];
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] > 0) continue;
            double far = -1.0;
            std::size_t far_row = 0;
            for (std::size_t r = 0; r < m; ++r) {
                const double d = squared_distance(
                    x.row(r), std::span<const double>(centroids).subspan(static_cast<std::size_t>(c) * v, v));
                if (d > far) {
                    far = d;
                    far_row = r;
                }
            }
            --sizes[static_cast<std::size_t>(assignments[far_row])];
            assignments[far_row] = c;
            ++sizes[static_cast<std::size_t>(c)];
            std::copy_n(x.row(far_row).data(), v, centroids.begin() + static_cast<std::size_t>(c) * v);
        }

        // recompute means (serial: deterministic reduction order)
        std::fill(centroids.begin(), centroids.end(), 0.0);
        for (std::size_t r = 0; r < m; ++r) {
            auto row = x.row(r);
            double* c = centroids.data() + static_cast<std::size_t>(assignments[r]) * v;
            for (std::size_t t = 0; t < v; ++t) c[t] += row[t];
        }
        for (int c = 0; c < k; ++c) {
            if (sizes[static_cast<std::size_t>(c)] == 0) continue;
            const double inv = 1.0 / static_cast<double>(sizes[static_cast<std::size_t>(c)]);
            for (std::size_t t = 0; t < v; ++t)
                centroids[static_cast<std::size_t>(c) * v + t] *= inv;
        }

        trace.push_back(detail::inertia_of(x, centroids, k, assignments));
        if (assignments == previous) break;
        previous = assignments;
    }

    // final assignment against the converged means
    detail::assign_points(x, centroids, k, assignments);
    LloydResult result;
    result.inertia = detail::inertia_of(x, centroids, k, assignments);
    result.centroids = std::move(centroids);
    result.assignments = std::move(assignments);
    result.trace = std::move(trace);
    return result;
}

}  // namespace

KMeansModel fit_kmeans(const TfidfMatrix& x, const KMeansParams& params) {
    if (params.k < 1) throw std::invalid_argument("kmeans: k must be >= 1");
    if (static_cast<std::size_t>(params.k) > x.nonzero_rows())
        throw std::invalid_argument("kmeans: k=" + std::to_string(params.k) +
                                    " exceeds the " + std::to_string(x.nonzero_rows()) +
                                    " usable rows");
    if (params.n_init < 1) throw std::invalid_argument("kmeans: n_init must be >= 1");

    std::mt19937_64 rng(params.seed);
    KMeansModel model;
    model.k = params.k;
    model.n_init = params.n_init;
    model.max_iter = params.max_iter;
    model.seed = params.seed;
    model.vocab = x.vocab;

    double best = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < params.n_init; ++restart) {
        LloydResult result = lloyd_once(x, params.k, params.max_iter, rng);
        model.inertia_traces.push_back(result.trace);
        if (result.inertia < best) {
            best = result.inertia;
            model.centroids = std::move(result.centroids);
            model.assignments = std::move(result.assignments);
            model.inertia = result.inertia;
            model.best_restart = restart;
        }
    }
    return model;
}

std::vector<std::pair<std::string, double>> top_terms(const KMeansModel& model, int cluster,
                                                      std::size_t n) {
    if (cluster < 0 || cluster >= model.k)
        throw std::invalid_argument("kmeans: cluster index out of range");
    auto c = model.centroid(cluster);
    if (std::all_of(c.begin(), c.end(), [](double w) { return w == 0.0; })) return {};
    std::vector<std::size_t> order(c.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c[a] > c[b]; });
    const std::size_t take = std::min(n, c.size());
    std::vector<std::pair<std::string, double>> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.emplace_back(model.vocab[order[i]], c[order[i]]);
    return out;
}

void KMeansModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("kmeans: cannot write " + path.string());
    out << "toplab-kmeans 1\n";
    out << k << ' ' << vocab.size() << ' ' << assignments.size() << ' ' << n_init << ' '
        << max_iter << ' ' << seed << ' ' << best_restart << '\n';
    write_double(out, inertia);
    out << '\n';
    for (const std::string& w : vocab) out << w << '\n';
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        write_double(out, centroids[i]);
        out << ((i + 1) % vocab.size() == 0 ? '\n' : ' ');
    }
    for (std::size_t i = 0; i < assignments.size(); ++i)
        out << assignments[i] << (i + 1 == assignments.size() ? '\n' : ' ');
}

KMeansModel KMeansModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("kmeans: cannot open " + path.string());
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "toplab-kmeans" || version != 1)
        throw std::runtime_error("kmeans: " + path.string() + " is not a toplab-kmeans v1 model");
    KMeansModel model;
    std::size_t v = 0, m = 0;
    in >> model.k >> v >> m >> model.n_init >> model.max_iter >> model.seed >> model.best_restart;
    model.inertia = read_double(in);
    model.vocab.resize(v);
    for (auto& w : model.vocab) in >> w;
    model.centroids.resize(static_cast<std::size_t>(model.k) * v);
    for (auto& c : model.centroids) c = read_double(in);
    model.assignments.resize(m);
    for (auto& a : model.assignments) in >> a;
    if (!in) throw std::runtime_error("kmeans: truncated model file " + path.string());
    return model;
}

}  // namespace toplab::kmeans
