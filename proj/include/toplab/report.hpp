// End-to-end pipeline orchestration and report rendering.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toplab/labeler.hpp"

namespace toplab::report {

struct RunConfig {
    std::filesystem::path input;
    std::string format = "jsonl";  // jsonl | txt-dir
    std::filesystem::path wordnet_dir;
    std::string model = "both";  // lda | kmeans | both
    int topics = 3;
    int words_per_topic = 3;
    std::uint64_t seed = 1;
    int lda_iterations = 1000;
    int kmeans_n_init = 1;
    int kmeans_max_iter = 100;
    bool use_embedding = false;
    std::filesystem::path out = "report.json";
    std::string emit = "json";  // json | markdown | both
    std::optional<std::filesystem::path> stopwords_path;
    std::optional<std::filesystem::path> lexicon_path;
};

// per-document n-gram diagnostics over the chunk-filtered token stream
struct DocumentDiagnostics {
    std::string id;
    std::size_t sentence_count = 0;
    std::vector<std::pair<std::string, std::size_t>> top_bigrams;
};

struct RunOutput {
    nlohmann::ordered_json report;
    std::vector<labeler::ModelReport> model_reports;
    std::vector<DocumentDiagnostics> diagnostics;
    std::size_t skipped_topics = 0;
};

// corpus -> preprocessing -> models -> labels -> aggregation. Documents are
// modeled over their sentences (each document trains its own topic/cluster
// models). Throws with a stage-prefixed message on failure.
RunOutput run_pipeline(const RunConfig& config);

// Executes run_pipeline and writes the requested report files; returns the
// process exit status.
int run(const RunConfig& config);

nlohmann::ordered_json build_report_json(const RunConfig& config,
                                         const std::vector<labeler::ModelReport>& reports,
                                         const std::vector<DocumentDiagnostics>& diagnostics,
                                         std::size_t skipped_topics);

// Markdown tables mirroring the report: one label table and one WUP table per
// model plus the model-comparison table. Numbers render to 2 decimals.
std::string render_tables(const std::vector<labeler::ModelReport>& reports);

// Structural validation against the shipped report schema
// (docs/report_schema.json). Returns false and fills `error` on mismatch.
bool validate_report(const nlohmann::json& report, std::string* error = nullptr);

}  // namespace toplab::report
