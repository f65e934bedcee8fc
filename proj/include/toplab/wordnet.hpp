// WordNet 3.0 database reader: synset lookup, morphy lemmatization, hypernym
// traversal and Wu-Palmer similarity over the noun graph.
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace toplab::wordnet {

enum class Pos { Noun, Verb, Adj, Adv };

const char* to_string(Pos pos);
char pos_char(Pos pos);

struct Synset {
    std::uint32_t offset = 0;  // byte offset of the record in its data file
    Pos pos = Pos::Noun;
    std::vector<std::string> lemmas;        // as stored, underscores for spaces
    std::string definition;                 // gloss text before the first quoted example
    std::vector<std::string> examples;      // quoted example sentences
    std::vector<std::uint32_t> hypernyms;   // same-POS @ / @i targets
};

// Parsed, validated, immutable database. All queries are const and safe for
// concurrent use; noun depths are precomputed at load.
class WordNetDb {
  public:
    static WordNetDb load(const std::filesystem::path& dir);

    // Sense-ordered synsets for a word; morphy is applied when the surface
    // form is absent from the index. Unknown words yield an empty list.
    std::vector<const Synset*> synsets(std::string_view word, Pos pos) const;

    const Synset* find(Pos pos, std::uint32_t offset) const;

    // WordNet's rule-plus-exception-list lemmatizer. Returns the base form if
    // one resolves within the index, otherwise nullopt.
    std::optional<std::string> morphy(std::string_view word, Pos pos) const;

    // 1 + length of the shortest hypernym path to the root; root depth is 1.
    // Noun synsets only.
    int depth(const Synset& s) const;

    // Deepest common ancestor-or-self under the Wu-Palmer score, ties broken
    // by smaller offset.
    const Synset& lcs(const Synset& a, const Synset& b) const;

    // Wu-Palmer similarity in (0, 1]; noun synsets only.
    double wup(const Synset& a, const Synset& b) const;

    // Maximum wup over all noun-sense pairs; 0 when either word has no noun
    // synset.
    double wup_words(std::string_view w1, std::string_view w2) const;

    std::vector<double> wup_words_batch(
        std::span<const std::pair<std::string, std::string>> pairs) const;
    std::vector<double> wup_words_batch_serial(
        std::span<const std::pair<std::string, std::string>> pairs) const;

    bool has_noun_synset(std::string_view word) const;
    std::size_t synset_count(Pos pos) const;
    const std::vector<Synset>& all_synsets(Pos pos) const;

    // lowercase, spaces to underscores
    static std::string normalize(std::string_view word);

  private:
    struct PosData {
        std::vector<Synset> synsets;
        std::unordered_map<std::uint32_t, std::size_t> by_offset;
        std::unordered_map<std::string, std::vector<std::size_t>> index;
        std::unordered_map<std::string, std::vector<std::string>> exceptions;
    };

    struct WupResult {
        double score = 0.0;
        std::size_t lcs_index = 0;
    };

    const PosData& pos_data(Pos pos) const { return pos_[static_cast<int>(pos)]; }
    PosData& pos_data(Pos pos) { return pos_[static_cast<int>(pos)]; }
    std::unordered_map<std::size_t, int> ancestor_distances(std::size_t noun_index) const;
    WupResult wup_impl(std::size_t a, std::size_t b) const;
    void validate_noun_graph();

    std::array<PosData, 4> pos_;
    std::vector<int> noun_depths_;
};

}  // namespace toplab::wordnet
