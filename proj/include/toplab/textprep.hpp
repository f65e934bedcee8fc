// Preprocessing pipeline: tokenization, POS tagging, stop-word removal and
// morphy lemmatization. Tagging runs before stop-word removal so the tagger
// sees intact context.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "toplab/corpus.hpp"

namespace toplab::wordnet {
class WordNetDb;
}

namespace toplab::textprep {

enum class PennTag {
    NN, NNS, NNP, NNPS,
    VB, VBD, VBG, VBN, VBP, VBZ,
    JJ, JJR, JJS,
    RB, RBR, RBS,
    DT, IN, PRP, CC, CD,
    PUNCT, OTHER,
};

const char* to_string(PennTag tag);
std::optional<PennTag> tag_from_string(std::string_view s);

bool is_noun(PennTag tag);
bool is_verb(PennTag tag);
bool is_adjective(PennTag tag);
bool is_adverb(PennTag tag);

struct Token {
    std::string surface;
    std::string lemma;
    PennTag tag = PennTag::NN;
    std::size_t position = 0;  // index within its sentence
};

// Stop list (one lowercase word per line) and tagger lexicon (word<TAB>tag
// per line). The bundled copies are compiled in; files can override them.
class Resources {
  public:
    static Resources builtin();
    static Resources from_files(const std::filesystem::path& stopwords_path,
                                const std::filesystem::path& lexicon_path);

    bool is_stopword(std::string_view word) const;
    std::optional<PennTag> lexicon_tag(std::string_view word) const;
    std::size_t stopword_count() const { return stopwords_.size(); }
    std::size_t lexicon_size() const { return lexicon_.size(); }

  private:
    friend Resources parse_resources(std::string_view stoplist, std::string_view lexicon,
                                     const std::string& where);
    std::unordered_set<std::string> stopwords_;
    std::unordered_map<std::string, PennTag> lexicon_;
};

// Sentences split on ./!/? followed by whitespace; words split on whitespace
// and punctuation except apostrophes internal to a word; tokens lowercased
// except fully-uppercase acronyms.
std::vector<std::vector<std::string>> tokenize(std::string_view text);

std::vector<std::string> remove_stopwords(const Resources& res,
                                          std::span<const std::string> tokens);

// Lexicon lookup, then suffix rules (-ing VBG, -ed VBD, -ly RB, -s NNS),
// default NN. Pure punctuation tokens get PUNCT, numbers CD.
std::vector<std::pair<std::string, PennTag>> pos_tag(const Resources& res,
                                                     std::span<const std::string> sentence);

// Base form via WordNet morphy for noun/verb/adjective/adverb tags, identity
// otherwise (and for words morphy cannot resolve).
std::string lemmatize(const wordnet::WordNetDb& db, std::string_view surface, PennTag tag);

class Pipeline {
  public:
    Pipeline(const Resources& res, const wordnet::WordNetDb& db) : res_(&res), db_(&db) {}

    // tokenize -> pos_tag -> remove_stopwords -> lemmatize -> drop PUNCT
    std::vector<Token> preprocess(const corpus::Document& doc) const;
    std::vector<Token> preprocess_text(std::string_view text) const;

    // Same pipeline with sentence boundaries kept (model training units).
    std::vector<std::vector<Token>> preprocess_text_sentences(std::string_view text) const;

    // One token list per document; the parallel version must match the serial
    // reference exactly.
    std::vector<std::vector<Token>> preprocess_corpus(const corpus::Corpus& corpus) const;
    std::vector<std::vector<Token>> preprocess_corpus_serial(const corpus::Corpus& corpus) const;

    const Resources& resources() const { return *res_; }

  private:
    const Resources* res_;
    const wordnet::WordNetDb* db_;
};

}  // namespace toplab::textprep
