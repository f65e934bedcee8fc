// TF-IDF vectorization and Lloyd's K-Means with per-cluster top terms.
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace toplab::kmeans {

struct TfidfMatrix {
    std::vector<std::string> vocab;       // term order = first occurrence
    std::vector<double> idf;              // V
    std::vector<double> data;             // M x V, rows L2-normalized
    std::size_t row_count = 0;
    std::vector<std::size_t> empty_rows;  // documents with no tokens

    std::size_t rows() const { return row_count; }
    std::size_t cols() const { return vocab.size(); }
    std::span<const double> row(std::size_t r) const {
        return std::span<const double>(data).subspan(r * cols(), cols());
    }
    std::size_t nonzero_rows() const { return row_count - empty_rows.size(); }
};

// tf = raw count, idf = ln((1+M)/(1+df)) + 1, rows L2-normalized.
TfidfMatrix tfidf(const std::vector<std::vector<std::string>>& corpus_tokens);

struct KMeansParams {
    int k = 3;
    int n_init = 1;
    int max_iter = 100;
    std::uint64_t seed = 1;
};

struct KMeansModel {
    int k = 0;
    int n_init = 1;
    int max_iter = 100;
    std::uint64_t seed = 1;
    std::vector<std::string> vocab;
    std::vector<double> centroids;        // k x V
    std::vector<int> assignments;         // M
    double inertia = 0.0;
    // per-restart inertia after each Lloyd iteration, best restart last run
    std::vector<std::vector<double>> inertia_traces;
    int best_restart = 0;

    std::span<const double> centroid(int cluster) const {
        return std::span<const double>(centroids)
            .subspan(static_cast<std::size_t>(cluster) * vocab.size(), vocab.size());
    }

    void save(const std::filesystem::path& path) const;
    static KMeansModel load(const std::filesystem::path& path);
};

// Lloyd iterations until stable assignments or max_iter; best of n_init
// seeded restarts by inertia. k must not exceed the non-zero row count.
KMeansModel fit_kmeans(const TfidfMatrix& x, const KMeansParams& params = {});

// The n largest-coordinate terms of a centroid, ties by vocabulary index.
// An all-zero centroid yields an empty list.
std::vector<std::pair<std::string, double>> top_terms(const KMeansModel& model, int cluster,
                                                      std::size_t n = 3);

namespace detail {

// nearest centroid per row, Euclidean distance, ties to the lower index
void assign_points_serial(const TfidfMatrix& x, std::span<const double> centroids, int k,
                          std::span<int> assignments);
void assign_points(const TfidfMatrix& x, std::span<const double> centroids, int k,
                   std::span<int> assignments);

double inertia_of(const TfidfMatrix& x, std::span<const double> centroids, int k,
                  std::span<const int> assignments);

}  // namespace detail

}  // namespace toplab::kmeans
