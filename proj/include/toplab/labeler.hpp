// Topic labeling: top-word summaries, WordNet candidate generation, WUP-based
// label selection, and report aggregation.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "toplab/embedding.hpp"
#include "toplab/kmeans.hpp"
#include "toplab/lda.hpp"
#include "toplab/textprep.hpp"
#include "toplab/wordnet.hpp"

namespace toplab::labeler {

enum class ModelKind { Lda, KMeans };
const char* to_string(ModelKind kind);

enum class CandidateSource { SynsetLemma, GlossNoun, EmbeddingNeighbor };
const char* to_string(CandidateSource source);

struct TopicSummary {
    ModelKind model_kind = ModelKind::Lda;
    std::string doc_set_id;
    int index = 1;  // 1-based topic/cluster number
    std::vector<std::pair<std::string, double>> top_words;
    std::string top_weighted;  // highest-weight word with a noun synset
    bool unlabeled = false;    // no top word has a noun synset
};

struct Candidate {
    std::string label;
    CandidateSource source = CandidateSource::GlossNoun;
};

struct CandidateSet {
    std::string top_weighted;
    std::vector<Candidate> candidates;
};

struct LabelResult {
    TopicSummary summary;
    CandidateSet candidates;
    std::string label;
    double wup_score = 0.0;
};

struct DocumentScores {
    std::string doc_set_id;
    std::vector<LabelResult> results;
    double avg_wup = 0.0;
};

struct ModelReport {
    ModelKind model_kind = ModelKind::Lda;
    std::vector<DocumentScores> per_document;
    double total_avg = 0.0;
};

// One summary per topic/cluster. top_weighted falls back past words without
// any noun synset; when none qualifies the summary is flagged unlabeled.
std::vector<TopicSummary> summarize(const wordnet::WordNetDb& db, const lda::LdaModel& model,
                                    std::string_view doc_set_id, std::size_t words_per_topic = 3);
std::vector<TopicSummary> summarize(const wordnet::WordNetDb& db, const kmeans::KMeansModel& model,
                                    std::string_view doc_set_id, std::size_t words_per_topic = 3);

// Candidates from every noun sense of the top word: split parts of multiword
// co-lemmas, then the nouns of the preprocessed gloss, then optional
// embedding neighbors that have noun synsets. The top word, its morphy
// variants and its single-word co-lemmas are excluded; first occurrence wins.
CandidateSet generate_candidates(const wordnet::WordNetDb& db, const textprep::Resources& res,
                                 std::string_view top_weighted,
                                 const embedding::EmbeddingModel* embedding = nullptr);

// Noun-tagged surfaces ordered by descending frequency, ties by first
// occurrence.
std::vector<std::string> extract_nouns(std::span<const textprep::Token> tagged_tokens);

// argmax of wup_words(top_weighted, candidate); ties keep the earlier
// candidate. Empty candidate sets are an error.
LabelResult select_label(const wordnet::WordNetDb& db, const TopicSummary& summary,
                         const CandidateSet& candidates);

// Groups results by doc_set_id in first-seen order; per-document mean of
// scores, total = mean of the per-document means. Rounding happens only at
// render time.
ModelReport aggregate(ModelKind kind, std::span<const LabelResult> results);

// Labels every summary; summaries flagged unlabeled or with empty candidate
// sets are skipped (reported via the skipped counter).
std::vector<LabelResult> label_summaries(const wordnet::WordNetDb& db,
                                         const textprep::Resources& res,
                                         std::span<const TopicSummary> summaries,
                                         const embedding::EmbeddingModel* embedding = nullptr,
                                         std::size_t* skipped = nullptr);

}  // namespace toplab::labeler
