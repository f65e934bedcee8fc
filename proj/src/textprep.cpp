#include "toplab/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "toplab/wordnet.hpp"

namespace toplab::textprep {

namespace detail {
const char* builtin_stopwords();
const char* builtin_lexicon();
}  // namespace detail

namespace {

constexpr std::pair<const char*, PennTag> kTagNames[] = {
    {"NN", PennTag::NN},   {"NNS", PennTag::NNS},   {"NNP", PennTag::NNP},
    {"NNPS", PennTag::NNPS}, {"VB", PennTag::VB},   {"VBD", PennTag::VBD},
    {"VBG", PennTag::VBG}, {"VBN", PennTag::VBN},   {"VBP", PennTag::VBP},
    {"VBZ", PennTag::VBZ}, {"JJ", PennTag::JJ},     {"JJR", PennTag::JJR},
    {"JJS", PennTag::JJS}, {"RB", PennTag::RB},     {"RBR", PennTag::RBR},
    {"RBS", PennTag::RBS}, {"DT", PennTag::DT},     {"IN", PennTag::IN},
    {"PRP", PennTag::PRP}, {"CC", PennTag::CC},     {"CD", PennTag::CD},
    {"PUNCT", PennTag::PUNCT}, {"OTHER", PennTag::OTHER},
};

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80;
}

std::string lowercased(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

// fully-uppercase acronyms ("LDA") keep their case for display
std::string display_case(std::string_view word) {
    std::size_t letters = 0, uppers = 0;
    for (unsigned char c : word) {
        if (std::isalpha(c)) {
            ++letters;
            if (std::isupper(c)) ++uppers;
        }
    }
    if (letters >= 2 && letters == uppers) return std::string(word);
    return lowercased(word);
}

bool all_punct(std::string_view token) {
    return !token.empty() &&
           std::none_of(token.begin(), token.end(),
                        [](unsigned char c) { return is_word_byte(c); });
}

bool looks_numeric(std::string_view token) {
    bool digit = false;
    for (unsigned char c : token) {
        if (std::isdigit(c)) digit = true;
        else if (c != '.' && c != ',' && c != '-') return false;
    }
    return digit;
}

}  // namespace

const char* to_string(PennTag tag) {
    for (const auto& [name, value] : kTagNames)
        if (value == tag) return name;
    return "OTHER";
}

std::optional<PennTag> tag_from_string(std::string_view s) {
    for (const auto& [name, value] : kTagNames)
        if (s == name) return value;
    return std::nullopt;
}

bool is_noun(PennTag t) {
    return t == PennTag::NN || t == PennTag::NNS || t == PennTag::NNP || t == PennTag::NNPS;
}
bool is_verb(PennTag t) {
    return t == PennTag::VB || t == PennTag::VBD || t == PennTag::VBG || t == PennTag::VBN ||
           t == PennTag::VBP || t == PennTag::VBZ;
}
bool is_adjective(PennTag t) {
    return t == PennTag::JJ || t == PennTag::JJR || t == PennTag::JJS;
}
bool is_adverb(PennTag t) {
    return t == PennTag::RB || t == PennTag::RBR || t == PennTag::RBS;
}

Resources parse_resources(std::string_view stoplist, std::string_view lexicon,
                          const std::string& where) {
    Resources res;
    std::istringstream stop_in{std::string(stoplist)};
    std::string line;
    while (std::getline(stop_in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) res.stopwords_.insert(lowercased(line));
    }
    std::istringstream lex_in{std::string(lexicon)};
    std::size_t line_no = 0;
    while (std::getline(lex_in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(where + ":" + std::to_string(line_no) +
                                     ": lexicon line is not word<TAB>tag");
        auto tag = tag_from_string(std::string_view(line).substr(tab + 1));
        if (!tag)
            throw std::runtime_error(where + ":" + std::to_string(line_no) + ": unknown tag '" +
                                     line.substr(tab + 1) + "'");
        res.lexicon_.emplace(lowercased(std::string_view(line).substr(0, tab)), *tag);
    }
    return res;
}

Resources Resources::builtin() {
    return parse_resources(detail::builtin_stopwords(), detail::builtin_lexicon(), "<builtin>");
}

Resources Resources::from_files(const std::filesystem::path& stopwords_path,
                                const std::filesystem::path& lexicon_path) {
    auto read = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("textprep: cannot open " + p.string());
        return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    };
    return parse_resources(read(stopwords_path), read(lexicon_path), lexicon_path.string());
}

bool Resources::is_stopword(std::string_view word) const {
    return stopwords_.count(lowercased(word)) > 0;
}

std::optional<PennTag> Resources::lexicon_tag(std::string_view word) const {
    auto it = lexicon_.find(lowercased(word));
    if (it == lexicon_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::vector<std::string>> tokenize(std::string_view text) {
    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> current;

    auto is_terminator = [](char c) { return c == '.' || c == '!' || c == '?'; };
    auto flush = [&] {
        if (!current.empty()) {
            sentences.push_back(std::move(current));
            current.clear();
        }
    };

    const std::size_t n = text.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (is_word_byte(c)) {
            std::size_t start = i;
            while (i < n) {
                unsigned char cur = static_cast<unsigned char>(text[i]);
                if (is_word_byte(cur)) {
                    ++i;
                    continue;
                }
                // apostrophes inside a word ("don't"); dots inside numbers
                bool internal =
                    i + 1 < n && i > start &&
                    is_word_byte(static_cast<unsigned char>(text[i + 1])) &&
                    (cur == '\'' ||
                     (cur == '.' && std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                      std::isdigit(static_cast<unsigned char>(text[i + 1]))));
                if (!internal) break;
                ++i;
            }
            current.push_back(display_case(text.substr(start, i - start)));
            continue;
        }
        // punctuation run
        std::size_t start = i;
        while (i < n && !std::isspace(static_cast<unsigned char>(text[i])) &&
               !is_word_byte(static_cast<unsigned char>(text[i])))
            ++i;
        std::string_view punct = text.substr(start, i - start);
        bool ends_sentence =
            std::any_of(punct.begin(), punct.end(), is_terminator) &&
            (i >= n || std::isspace(static_cast<unsigned char>(text[i])));
        if (ends_sentence) {
            flush();
        } else {
            current.emplace_back(punct);
        }
    }
    flush();
    return sentences;
}

std::vector<std::string> remove_stopwords(const Resources& res,
                                          std::span<const std::string> tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& tok : tokens)
        if (!res.is_stopword(tok)) out.push_back(tok);
    return out;
}

std::vector<std::pair<std::string, PennTag>> pos_tag(const Resources& res,
                                                     std::span<const std::string> sentence) {
    std::vector<std::pair<std::string, PennTag>> out;
    out.reserve(sentence.size());
    for (const std::string& tok : sentence) {
        PennTag tag;
        if (all_punct(tok)) {
            tag = PennTag::PUNCT;
        } else if (auto hit = res.lexicon_tag(tok)) {
            tag = *hit;
        } else if (looks_numeric(tok)) {
            tag = PennTag::CD;
        } else if (tok.size() > 3 && tok.ends_with("ing")) {
            tag = PennTag::VBG;
        } else if (tok.size() > 2 && tok.ends_with("ed")) {
            tag = PennTag::VBD;
        } else if (tok.size() > 2 && tok.ends_with("ly")) {
            tag = PennTag::RB;
        } else if (tok.size() > 1 && tok.ends_with("s")) {
            tag = PennTag::NNS;
        } else {
            tag = PennTag::NN;
        }
        out.emplace_back(tok, tag);
    }
    return out;
}

std::string lemmatize(const wordnet::WordNetDb& db, std::string_view surface, PennTag tag) {
    wordnet::Pos pos;
    if (is_noun(tag)) pos = wordnet::Pos::Noun;
    else if (is_verb(tag)) pos = wordnet::Pos::Verb;
    else if (is_adjective(tag)) pos = wordnet::Pos::Adj;
    else if (is_adverb(tag)) pos = wordnet::Pos::Adv;
    else return std::string(surface);
    std::string normalized = wordnet::WordNetDb::normalize(surface);
    if (auto base = db.morphy(normalized, pos)) return *base;
    return normalized;
}

std::vector<std::vector<Token>> Pipeline::preprocess_text_sentences(std::string_view text) const {
    std::vector<std::vector<Token>> out;
    for (const auto& sentence : tokenize(text)) {
        auto tagged = pos_tag(*res_, sentence);
        std::vector<Token> kept;
        for (std::size_t i = 0; i < tagged.size(); ++i) {
            const auto& [surface, tag] = tagged[i];
            if (res_->is_stopword(surface)) continue;
            if (tag == PennTag::PUNCT) continue;
            kept.push_back(Token{surface, lemmatize(*db_, surface, tag), tag, i});
        }
        out.push_back(std::move(kept));
    }
    return out;
}

std::vector<Token> Pipeline::preprocess_text(std::string_view text) const {
    std::vector<Token> out;
    for (auto& sentence : preprocess_text_sentences(text))
        for (Token& tok : sentence) out.push_back(std::move(tok));
    return out;
}

std::vector<Token> Pipeline::preprocess(const corpus::Document& doc) const {
    return preprocess_text(doc.modeling_text());
}

std::vector<std::vector<Token>> Pipeline::preprocess_corpus_serial(
    const corpus::Corpus& corpus) const {
    std::vector<std::vector<Token>> out(corpus.size());
    for (std::size_t d = 0; d < corpus.size(); ++d) out[d] = preprocess(corpus.documents[d]);
    return out;
}

std::vector<std::vector<Token>> Pipeline::preprocess_corpus(const corpus::Corpus& corpus) const {
    std::vector<std::vector<Token>> out(corpus.size());
#ifdef TOPLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t d = 0; d < static_cast<std::ptrdiff_t>(corpus.size()); ++d)
        out[d] = preprocess(corpus.documents[d]);
    return out;
}

}  // namespace toplab::textprep
