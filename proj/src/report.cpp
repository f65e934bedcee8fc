#include "toplab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "toplab/corpus.hpp"
#include "toplab/phrases.hpp"

#include <algorithm>
#include <unordered_map>

namespace toplab::report {

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

std::string two_decimals(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string join_words(const std::vector<std::pair<std::string, double>>& words) {
    std::string out;
    for (const auto& [w, weight] : words) {
        if (!out.empty()) out += ", ";
        out += w;
    }
    return out;
}

std::string join_candidates(const labeler::CandidateSet& set) {
    std::string out;
    for (const labeler::Candidate& c : set.candidates) {
        if (!out.empty()) out += ", ";
        out += c.label;
    }
    return out;
}

const char* group_noun(labeler::ModelKind kind) {
    return kind == labeler::ModelKind::Lda ? "Topic" : "Cluster";
}

const char* model_name(labeler::ModelKind kind) {
    return kind == labeler::ModelKind::Lda ? "LDA" : "K-Means";
}

// top bigrams by count over the chunk-filtered lemma stream, ties by first
// occurrence
DocumentDiagnostics diagnose(const std::string& id, std::size_t sentence_count,
                             std::span<const textprep::Token> tokens) {
    DocumentDiagnostics diag;
    diag.id = id;
    diag.sentence_count = sentence_count;
    std::vector<std::string> lemmas;
    for (const textprep::Token& tok : phrases::chunk_filter(tokens)) lemmas.push_back(tok.lemma);
    std::unordered_map<std::string, std::size_t> counts;
    std::vector<std::string> order;
    for (const phrases::NGram& gram : phrases::ngrams(lemmas, 2)) {
        const std::string key = gram.joined();
        auto [it, inserted] = counts.emplace(key, 0);
        if (inserted) order.push_back(key);
        ++it->second;
    }
    std::stable_sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        return counts[a] > counts[b];
    });
    for (std::size_t i = 0; i < order.size() && i < 5; ++i)
        diag.top_bigrams.emplace_back(order[i], counts[order[i]]);
    return diag;
}

}  // namespace

RunOutput run_pipeline(const RunConfig& config) {
    if (config.topics < 1) throw std::invalid_argument("config: --topics must be >= 1");
    if (config.words_per_topic < 1) throw std::invalid_argument("config: --words must be >= 1");
    if (config.model != "lda" && config.model != "kmeans" && config.model != "both")
        throw std::invalid_argument("config: --model must be lda, kmeans or both");

    const corpus::Corpus documents = stage("corpus", [&] {
        return config.format == "txt-dir" ? corpus::load_text_dir(config.input)
                                          : corpus::load_jsonl(config.input);
    });

    const wordnet::WordNetDb db =
        stage("wordnet", [&] { return wordnet::WordNetDb::load(config.wordnet_dir); });

    const textprep::Resources resources = stage("textprep", [&] {
        return config.stopwords_path && config.lexicon_path
                   ? textprep::Resources::from_files(*config.stopwords_path, *config.lexicon_path)
                   : textprep::Resources::builtin();
    });
    textprep::Pipeline pipeline(resources, db);

    // sentence units per document; empty sentences dropped
    std::vector<std::vector<std::vector<std::string>>> units(documents.size());
    std::vector<DocumentDiagnostics> diagnostics(documents.size());
    stage("textprep", [&] {
        for (std::size_t d = 0; d < documents.size(); ++d) {
            std::vector<textprep::Token> flat;
            for (const auto& sentence :
                 pipeline.preprocess_text_sentences(documents.documents[d].modeling_text())) {
                if (sentence.empty()) continue;
                std::vector<std::string> lemmas;
                lemmas.reserve(sentence.size());
                for (const textprep::Token& tok : sentence) {
                    lemmas.push_back(tok.lemma);
                    flat.push_back(tok);
                }
                units[d].push_back(std::move(lemmas));
            }
            diagnostics[d] = diagnose(documents.documents[d].id, units[d].size(), flat);
        }
        return 0;
    });

    std::optional<embedding::EmbeddingModel> model_embedding;
    if (config.use_embedding) {
        stage("embedding", [&] {
            std::vector<std::vector<std::string>> all_units;
            for (const auto& doc_units : units)
                all_units.insert(all_units.end(), doc_units.begin(), doc_units.end());
            embedding::Word2VecParams params;
            params.seed = config.seed;
            model_embedding = embedding::train_word2vec(all_units, params);
            return 0;
        });
    }
    const embedding::EmbeddingModel* emb = model_embedding ? &*model_embedding : nullptr;

    const bool want_lda = config.model == "lda" || config.model == "both";
    const bool want_kmeans = config.model == "kmeans" || config.model == "both";

    std::vector<labeler::LabelResult> lda_results, kmeans_results;
    std::size_t skipped = 0;
    for (std::size_t d = 0; d < documents.size(); ++d) {
        const std::string& id = documents.documents[d].id;
        if (units[d].empty())
            throw std::runtime_error("textprep: document '" + id + "' has no usable sentences");
        if (want_lda) {
            const lda::LdaModel model = stage("lda", [&] {
                lda::LdaParams params;
                params.topics = config.topics;
                params.iterations = config.lda_iterations;
                params.seed = config.seed;
                return lda::fit_lda(units[d], params);
            });
            auto summaries = labeler::summarize(db, model, id,
                                                static_cast<std::size_t>(config.words_per_topic));
            std::size_t dropped = 0;
            auto labeled = stage("labeler", [&] {
                return labeler::label_summaries(db, resources, summaries, emb, &dropped);
            });
            skipped += dropped;
            lda_results.insert(lda_results.end(), labeled.begin(), labeled.end());
        }
        if (want_kmeans) {
            const kmeans::KMeansModel model = stage("kmeans", [&] {
                kmeans::KMeansParams params;
                params.k = config.topics;
                params.n_init = config.kmeans_n_init;
                params.max_iter = config.kmeans_max_iter;
                params.seed = config.seed;
                return kmeans::fit_kmeans(kmeans::tfidf(units[d]), params);
            });
            auto summaries = labeler::summarize(db, model, id,
                                                static_cast<std::size_t>(config.words_per_topic));
            std::size_t dropped = 0;
            auto labeled = stage("labeler", [&] {
                return labeler::label_summaries(db, resources, summaries, emb, &dropped);
            });
            skipped += dropped;
            kmeans_results.insert(kmeans_results.end(), labeled.begin(), labeled.end());
        }
    }

    RunOutput out;
    if (want_lda)
        out.model_reports.push_back(labeler::aggregate(labeler::ModelKind::Lda, lda_results));
    if (want_kmeans)
        out.model_reports.push_back(labeler::aggregate(labeler::ModelKind::KMeans, kmeans_results));
    out.diagnostics = std::move(diagnostics);
    out.skipped_topics = skipped;
    out.report = build_report_json(config, out.model_reports, out.diagnostics, skipped);
    std::string error;
    if (!validate_report(out.report, &error))
        throw std::runtime_error("report: generated report failed schema validation: " + error);
    return out;
}

nlohmann::ordered_json build_report_json(const RunConfig& config,
                                         const std::vector<labeler::ModelReport>& reports,
                                         const std::vector<DocumentDiagnostics>& diagnostics,
                                         std::size_t skipped_topics) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["config"] = {
        {"input", config.input.string()},
        {"format", config.format},
        {"wordnet_dir", config.wordnet_dir.string()},
        {"model", config.model},
        {"topics", config.topics},
        {"words_per_topic", config.words_per_topic},
        {"seed", config.seed},
        {"lda_iterations", config.lda_iterations},
        {"kmeans_n_init", config.kmeans_n_init},
        {"kmeans_max_iter", config.kmeans_max_iter},
        {"use_embedding", config.use_embedding},
    };
    j["documents"] = nlohmann::ordered_json::array();
    for (const DocumentDiagnostics& diag : diagnostics) {
        nlohmann::ordered_json jd;
        jd["id"] = diag.id;
        jd["sentences"] = diag.sentence_count;
        jd["top_bigrams"] = nlohmann::ordered_json::array();
        for (const auto& [bigram, count] : diag.top_bigrams)
            jd["top_bigrams"].push_back({{"bigram", bigram}, {"count", count}});
        j["documents"].push_back(std::move(jd));
    }
    j["models"] = nlohmann::ordered_json::array();
    for (const labeler::ModelReport& report : reports) {
        nlohmann::ordered_json jm;
        jm["model"] = labeler::to_string(report.model_kind);
        jm["documents"] = nlohmann::ordered_json::array();
        for (const labeler::DocumentScores& doc : report.per_document) {
            nlohmann::ordered_json jd;
            jd["id"] = doc.doc_set_id;
            jd["topics"] = nlohmann::ordered_json::array();
            for (const labeler::LabelResult& r : doc.results) {
                nlohmann::ordered_json jt;
                jt["index"] = r.summary.index;
                jt["top_words"] = nlohmann::ordered_json::array();
                for (const auto& [word, weight] : r.summary.top_words)
                    jt["top_words"].push_back({{"word", word}, {"weight", weight}});
                jt["top_weighted"] = r.summary.top_weighted;
                jt["candidates"] = nlohmann::ordered_json::array();
                for (const labeler::Candidate& c : r.candidates.candidates)
                    jt["candidates"].push_back(
                        {{"label", c.label}, {"source", labeler::to_string(c.source)}});
                jt["label"] = r.label;
                jt["wup"] = r.wup_score;
                jd["topics"].push_back(std::move(jt));
            }
            jd["avg_wup"] = doc.avg_wup;
            jm["documents"].push_back(std::move(jd));
        }
        jm["total_avg"] = report.total_avg;
        j["models"].push_back(std::move(jm));
    }
    j["skipped_topics"] = skipped_topics;
    return j;
}

std::string render_tables(const std::vector<labeler::ModelReport>& reports) {
    std::string md;
    for (const labeler::ModelReport& report : reports) {
        md += std::string("### Labels (") + model_name(report.model_kind) + ")\n\n";
        md += "| Document(s) | " + std::string(group_noun(report.model_kind)) + "(s) | " +
              group_noun(report.model_kind) +
              " Word(s) | Top Weighted Word(s) | Candidate Label(s) | Label |\n";
        md += "|---|---|---|---|---|---|\n";
        for (const labeler::DocumentScores& doc : report.per_document) {
            for (std::size_t i = 0; i < doc.results.size(); ++i) {
                const labeler::LabelResult& r = doc.results[i];
                md += "| " + (i == 0 ? doc.doc_set_id : std::string()) + " | " +
                      group_noun(report.model_kind) + " " + std::to_string(r.summary.index) +
                      " | " + join_words(r.summary.top_words) + " | " + r.summary.top_weighted +
                      " | " + join_candidates(r.candidates) + " | " + r.label + " |\n";
            }
        }
        md += "\n### WUP similarity (" + std::string(model_name(report.model_kind)) + ")\n\n";
        md += "| Document(s) | Top Weighted word(s) | Labels | WUP similarity | Average WUP |\n";
        md += "|---|---|---|---|---|\n";
        for (const labeler::DocumentScores& doc : report.per_document) {
            for (std::size_t i = 0; i < doc.results.size(); ++i) {
                const labeler::LabelResult& r = doc.results[i];
                md += "| " + (i == 0 ? doc.doc_set_id : std::string()) + " | " +
                      r.summary.top_weighted + " | " + r.label + " | " +
                      two_decimals(r.wup_score) + " | " +
                      (i == 0 ? two_decimals(doc.avg_wup) : std::string()) + " |\n";
            }
        }
        md += "\n";
    }
    md += "### WUP similarities among models\n\n";
    md += "| Models | Document Sets | Average WUP | Total Average |\n";
    md += "|---|---|---|---|\n";
    for (const labeler::ModelReport& report : reports) {
        for (std::size_t i = 0; i < report.per_document.size(); ++i) {
            const labeler::DocumentScores& doc = report.per_document[i];
            md += std::string("| ") + (i == 0 ? model_name(report.model_kind) : "") +
                  " | Document " + doc.doc_set_id + " | " + two_decimals(doc.avg_wup) + " | " +
                  (i == 0 ? two_decimals(report.total_avg) : std::string()) + " |\n";
        }
    }
    return md;
}

bool validate_report(const nlohmann::json& report, std::string* error) {
    auto fail = [&](const std::string& msg) {
        if (error) *error = msg;
        return false;
    };
    if (!report.is_object()) return fail("report is not an object");
    for (const char* key : {"version", "config", "documents", "models", "skipped_topics"})
        if (!report.contains(key)) return fail(std::string("missing key '") + key + "'");
    if (!report["version"].is_number_integer()) return fail("version must be an integer");
    if (!report["config"].is_object()) return fail("config must be an object");
    for (const char* key : {"input", "format", "model", "topics", "words_per_topic", "seed"})
        if (!report["config"].contains(key))
            return fail(std::string("config missing key '") + key + "'");
    if (!report["documents"].is_array()) return fail("documents must be an array");
    for (const auto& doc : report["documents"])
        for (const char* key : {"id", "sentences", "top_bigrams"})
            if (!doc.contains(key))
                return fail(std::string("diagnostics document missing key '") + key + "'");
    if (!report["models"].is_array()) return fail("models must be an array");
    for (const auto& model : report["models"]) {
        for (const char* key : {"model", "documents", "total_avg"})
            if (!model.contains(key)) return fail(std::string("model missing key '") + key + "'");
        if (!model["documents"].is_array()) return fail("model documents must be an array");
        for (const auto& doc : model["documents"]) {
            for (const char* key : {"id", "topics", "avg_wup"})
                if (!doc.contains(key))
                    return fail(std::string("document missing key '") + key + "'");
            for (const auto& topic : doc["topics"]) {
                for (const char* key :
                     {"index", "top_words", "top_weighted", "candidates", "label", "wup"})
                    if (!topic.contains(key))
                        return fail(std::string("topic missing key '") + key + "'");
                if (!topic["wup"].is_number()) return fail("topic wup must be a number");
                for (const auto& w : topic["top_words"])
                    if (!w.contains("word") || !w.contains("weight"))
                        return fail("top_words entries need word and weight");
                for (const auto& c : topic["candidates"])
                    if (!c.contains("label") || !c.contains("source"))
                        return fail("candidate entries need label and source");
            }
        }
    }
    return true;
}

int run(const RunConfig& config) {
    if (config.emit != "json" && config.emit != "markdown" && config.emit != "both")
        throw std::invalid_argument("config: --emit must be json, markdown or both");
    RunOutput output = run_pipeline(config);
    const bool want_markdown = config.emit == "markdown" || config.emit == "both";

    // the JSON report is always written; markdown is additive
    {
        std::ofstream out(config.out, std::ios::binary);
        if (!out) throw std::runtime_error("report: cannot write " + config.out.string());
        out << output.report.dump(2) << '\n';
    }
    if (want_markdown) {
        std::filesystem::path md_path = config.out;
        md_path.replace_extension(".md");
        std::ofstream out(md_path, std::ios::binary);
        if (!out) throw std::runtime_error("report: cannot write " + md_path.string());
        out << render_tables(output.model_reports);
    }
    return 0;
}

}  // namespace toplab::report
