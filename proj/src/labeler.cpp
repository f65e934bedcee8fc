#include "toplab/labeler.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace toplab::labeler {

namespace {

std::vector<TopicSummary> summarize_rows(const wordnet::WordNetDb& db, ModelKind kind,
                                         std::string_view doc_set_id, int groups,
                                         auto&& top_words_of) {
    std::vector<TopicSummary> out;
    out.reserve(static_cast<std::size_t>(groups));
    for (int g = 0; g < groups; ++g) {
        TopicSummary summary;
        summary.model_kind = kind;
        summary.doc_set_id = std::string(doc_set_id);
        summary.index = g + 1;
        summary.top_words = top_words_of(g);
        summary.unlabeled = true;
        for (const auto& [word, weight] : summary.top_words) {
            if (db.has_noun_synset(word)) {
                summary.top_weighted = word;
                summary.unlabeled = false;
                break;
            }
        }
        out.push_back(std::move(summary));
    }
    return out;
}

// splittable multiword lemma parts ("news_program" -> "news", "program")
std::vector<std::string> lemma_parts(const std::string& lemma) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= lemma.size()) {
        std::size_t end = lemma.find('_', start);
        if (end == std::string::npos) end = lemma.size();
        if (end > start) parts.push_back(lemma.substr(start, end - start));
        start = end + 1;
    }
    return parts;
}

}  // namespace

const char* to_string(ModelKind kind) { return kind == ModelKind::Lda ? "lda" : "kmeans"; }

const char* to_string(CandidateSource source) {
    switch (source) {
        case CandidateSource::SynsetLemma: return "synset_lemma";
        case CandidateSource::GlossNoun: return "gloss_noun";
        case CandidateSource::EmbeddingNeighbor: return "embedding_neighbor";
    }
    return "?";
}

std::vector<TopicSummary> summarize(const wordnet::WordNetDb& db, const lda::LdaModel& model,
                                    std::string_view doc_set_id, std::size_t words_per_topic) {
    return summarize_rows(db, ModelKind::Lda, doc_set_id, model.topic_count(), [&](int topic) {
        return lda::top_words(model, topic, std::min(words_per_topic, model.vocabulary_size()));
    });
}

std::vector<TopicSummary> summarize(const wordnet::WordNetDb& db, const kmeans::KMeansModel& model,
                                    std::string_view doc_set_id, std::size_t words_per_topic) {
    return summarize_rows(db, ModelKind::KMeans, doc_set_id, model.k, [&](int cluster) {
        return kmeans::top_terms(model, cluster, words_per_topic);
    });
}

CandidateSet generate_candidates(const wordnet::WordNetDb& db, const textprep::Resources& res,
                                 std::string_view top_weighted,
                                 const embedding::EmbeddingModel* embedding) {
    const std::string top = wordnet::WordNetDb::normalize(top_weighted);
    auto senses = db.synsets(top, wordnet::Pos::Noun);
    if (senses.empty())
        throw std::invalid_argument("labeler: '" + top + "' has no noun synset");

    // exclusion set: the top word, its morphy variants (anything morphy maps
    // onto the top word), and its single-word co-lemmas, which would score a
    // perfect wup by sharing a synset
    std::unordered_set<std::string> excluded{top};
    if (auto base = db.morphy(top, wordnet::Pos::Noun)) excluded.insert(*base);
    for (const wordnet::Synset* sense : senses)
        for (const std::string& lemma : sense->lemmas)
            excluded.insert(wordnet::WordNetDb::normalize(lemma));

    CandidateSet set;
    set.top_weighted = top;
    std::unordered_set<std::string> seen;
    auto add = [&](const std::string& raw, CandidateSource source) {
        const std::string word = wordnet::WordNetDb::normalize(raw);
        if (word.empty() || excluded.count(word) || seen.count(word)) return;
        if (auto base = db.morphy(word, wordnet::Pos::Noun); base && excluded.count(*base)) return;
        seen.insert(word);
        set.candidates.push_back(Candidate{word, source});
    };

    textprep::Pipeline pipeline(res, db);
    for (const wordnet::Synset* sense : senses) {
        for (const std::string& lemma : sense->lemmas) {
            if (lemma.find('_') == std::string::npos) continue;  // single words are co-lemmas
            for (const std::string& part : lemma_parts(lemma)) {
                auto tagged = textprep::pos_tag(res, std::span<const std::string>(&part, 1));
                if (!textprep::is_noun(tagged.front().second)) continue;
                add(textprep::lemmatize(db, part, tagged.front().second),
                    CandidateSource::SynsetLemma);
            }
        }
        for (const textprep::Token& token : pipeline.preprocess_text(sense->definition)) {
            if (!textprep::is_noun(token.tag)) continue;
            add(token.lemma, CandidateSource::GlossNoun);
        }
    }

    if (embedding && embedding->index_of(top)) {
        for (const auto& [word, score] : most_similar(*embedding, top, 10)) {
            if (!db.has_noun_synset(word)) continue;
            add(word, CandidateSource::EmbeddingNeighbor);
        }
    }
    return set;
}

std::vector<std::string> extract_nouns(std::span<const textprep::Token> tagged_tokens) {
    std::unordered_map<std::string, std::size_t> counts;
    std::vector<std::string> order;  // first-occurrence surfaces, case-insensitive key
    std::unordered_map<std::string, std::string> display;
    for (const textprep::Token& tok : tagged_tokens) {
        if (!textprep::is_noun(tok.tag)) continue;
        const std::string key = wordnet::WordNetDb::normalize(tok.surface);
        auto [it, inserted] = counts.emplace(key, 0);
        if (inserted) {
            order.push_back(key);
            display.emplace(key, tok.surface);
        }
        ++it->second;
    }
    std::stable_sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        return counts[a] > counts[b];
    });
    std::vector<std::string> out;
    out.reserve(order.size());
    for (const std::string& key : order) out.push_back(display[key]);
    return out;
}

LabelResult select_label(const wordnet::WordNetDb& db, const TopicSummary& summary,
                         const CandidateSet& candidates) {
    if (candidates.candidates.empty())
        throw std::invalid_argument("labeler: no candidates for '" + candidates.top_weighted +
                                    "'");
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(candidates.candidates.size());
    for (const Candidate& c : candidates.candidates)
        pairs.emplace_back(candidates.top_weighted, c.label);
    const std::vector<double> scores = db.wup_words_batch(pairs);

    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;

    LabelResult result;
    result.summary = summary;
    result.candidates = candidates;
    result.label = candidates.candidates[best].label;
    result.wup_score = scores[best];
    return result;
}

ModelReport aggregate(ModelKind kind, std::span<const LabelResult> results) {
    ModelReport report;
    report.model_kind = kind;
    for (const LabelResult& r : results) {
        auto it = std::find_if(report.per_document.begin(), report.per_document.end(),
                               [&](const DocumentScores& d) {
                                   return d.doc_set_id == r.summary.doc_set_id;
                               });
        if (it == report.per_document.end()) {
            report.per_document.push_back(DocumentScores{r.summary.doc_set_id, {}, 0.0});
            it = report.per_document.end() - 1;
        }
        it->results.push_back(r);
    }
    // empty groups cannot arise from the grouping above; guard anyway
    std::erase_if(report.per_document, [](const DocumentScores& d) { return d.results.empty(); });
    double total = 0.0;
    for (DocumentScores& doc : report.per_document) {
        double sum = 0.0;
        for (const LabelResult& r : doc.results) sum += r.wup_score;
        doc.avg_wup = sum / static_cast<double>(doc.results.size());
        total += doc.avg_wup;
    }
    report.total_avg =
        report.per_document.empty() ? 0.0 : total / static_cast<double>(report.per_document.size());
    return report;
}

std::vector<LabelResult> label_summaries(const wordnet::WordNetDb& db,
                                         const textprep::Resources& res,
                                         std::span<const TopicSummary> summaries,
                                         const embedding::EmbeddingModel* embedding,
                                         std::size_t* skipped) {
    std::vector<LabelResult> out;
    std::size_t dropped = 0;
    for (const TopicSummary& summary : summaries) {
        if (summary.unlabeled) {
            ++dropped;
            continue;
        }
        CandidateSet candidates = generate_candidates(db, res, summary.top_weighted, embedding);
        if (candidates.candidates.empty()) {
            ++dropped;
            continue;
        }
        out.push_back(select_label(db, summary, candidates));
    }
    if (skipped) *skipped = dropped;
    return out;
}

}  // namespace toplab::labeler
