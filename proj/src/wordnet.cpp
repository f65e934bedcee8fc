#include "toplab/wordnet.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace toplab::wordnet {

namespace {

[[noreturn]] void fail(const std::filesystem::path& file, std::size_t line, const std::string& msg) {
    throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + msg);
}

std::optional<Pos> pos_from_char(char c) {
    switch (c) {
        case 'n': return Pos::Noun;
        case 'v': return Pos::Verb;
        case 'a': return Pos::Adj;
        case 's': return Pos::Adj;  // adjective satellite
        case 'r': return Pos::Adv;
        default: return std::nullopt;
    }
}

struct Splitter {
    std::string_view text;
    std::size_t pos = 0;
    std::string_view next() {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != ' ') ++pos;
        return text.substr(start, pos - start);
    }
    bool done() {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        return pos >= text.size();
    }
};

std::uint32_t parse_offset(std::string_view field, const std::filesystem::path& file,
                           std::size_t line) {
    if (field.size() != 8 || !std::all_of(field.begin(), field.end(),
                                          [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        fail(file, line, "expected 8-digit synset offset, got '" + std::string(field) + "'");
    return static_cast<std::uint32_t>(std::stoul(std::string(field)));
}

unsigned parse_hex(std::string_view field, const std::filesystem::path& file, std::size_t line) {
    unsigned value = 0;
    for (char c : field) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else fail(file, line, "bad hex field '" + std::string(field) + "'");
        value = value * 16 + static_cast<unsigned>(d);
    }
    return value;
}

unsigned parse_dec(std::string_view field, const std::filesystem::path& file, std::size_t line) {
    if (field.empty()) fail(file, line, "empty numeric field");
    unsigned value = 0;
    for (char c : field) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(file, line, "bad numeric field '" + std::string(field) + "'");
        value = value * 10 + static_cast<unsigned>(c - '0');
    }
    return value;
}

// The gloss is a definition optionally followed by quoted example sentences.
void split_gloss(std::string_view gloss, std::string& definition, std::vector<std::string>& examples) {
    std::size_t first_quote = gloss.find('"');
    std::string_view def = gloss.substr(0, first_quote == std::string_view::npos ? gloss.size() : first_quote);
    while (!def.empty() && (def.back() == ' ' || def.back() == ';')) def.remove_suffix(1);
    definition = std::string(def);
    std::size_t i = first_quote;
    while (i != std::string_view::npos && i < gloss.size()) {
        std::size_t end = gloss.find('"', i + 1);
        if (end == std::string_view::npos) break;
        examples.emplace_back(gloss.substr(i + 1, end - i - 1));
        i = gloss.find('"', end + 1);
    }
}

struct MorphRule {
    std::string_view suffix;
    std::string_view replacement;
};

std::span<const MorphRule> rules_for(Pos pos) {
    static constexpr MorphRule noun_rules[] = {{"s", ""},     {"ses", "s"}, {"xes", "x"},
                                               {"zes", "z"},  {"ches", "ch"}, {"shes", "sh"},
                                               {"men", "man"}, {"ies", "y"}};
    static constexpr MorphRule verb_rules[] = {{"s", ""},   {"ies", "y"}, {"es", "e"}, {"es", ""},
                                               {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};
    static constexpr MorphRule adj_rules[] = {{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};
    switch (pos) {
        case Pos::Noun: return noun_rules;
        case Pos::Verb: return verb_rules;
        case Pos::Adj: return adj_rules;
        case Pos::Adv: return {};
    }
    return {};
}

}  // namespace

const char* to_string(Pos pos) {
    switch (pos) {
        case Pos::Noun: return "noun";
        case Pos::Verb: return "verb";
        case Pos::Adj: return "adj";
        case Pos::Adv: return "adv";
    }
    return "?";
}

char pos_char(Pos pos) {
    switch (pos) {
        case Pos::Noun: return 'n';
        case Pos::Verb: return 'v';
        case Pos::Adj: return 'a';
        case Pos::Adv: return 'r';
    }
    return '?';
}

std::string WordNetDb::normalize(std::string_view word) {
    std::string out;
    out.reserve(word.size());
    for (char c : word) {
        if (c == ' ') out.push_back('_');
        else out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

WordNetDb WordNetDb::load(const std::filesystem::path& dir) {
    static const struct {
        Pos pos;
        const char* data_name;
        const char* index_name;
        const char* exc_name;
        bool frames;
    } kFiles[] = {
        {Pos::Noun, "data.noun", "index.noun", "noun.exc", false},
        {Pos::Verb, "data.verb", "index.verb", "verb.exc", true},
        {Pos::Adj, "data.adj", "index.adj", "adj.exc", false},
        {Pos::Adv, "data.adv", "index.adv", "adv.exc", false},
    };

    WordNetDb db;
    for (const auto& entry : kFiles) {
        for (const char* name : {entry.data_name, entry.index_name, entry.exc_name}) {
            if (!std::filesystem::exists(dir / name))
                throw std::runtime_error("wordnet: missing database file " + (dir / name).string());
        }
        PosData& pd = db.pos_data(entry.pos);

        // ---- data file ----
        const std::filesystem::path data_path = dir / entry.data_name;
        std::ifstream data(data_path, std::ios::binary);
        if (!data) throw std::runtime_error("wordnet: cannot open " + data_path.string());
        std::string line;
        std::size_t line_no = 0;
        std::uint64_t byte_pos = 0;
        while (std::getline(data, line)) {
            ++line_no;
            const std::uint64_t record_pos = byte_pos;
            byte_pos += line.size() + 1;
            if (line.empty() || line[0] == ' ') continue;  // copyright header
            std::size_t bar = line.find(" | ");
            if (bar == std::string::npos) fail(data_path, line_no, "record has no gloss separator");
            Splitter fields{std::string_view(line).substr(0, bar)};

            Synset syn;
            syn.offset = parse_offset(fields.next(), data_path, line_no);
            if (syn.offset != record_pos)
                fail(data_path, line_no,
                     "synset offset field " + std::to_string(syn.offset) +
                         " does not match record position " + std::to_string(record_pos));
            fields.next();  // lex_filenum
            std::string_view ss_type = fields.next();
            auto pos = ss_type.size() == 1 ? pos_from_char(ss_type[0]) : std::nullopt;
            if (!pos) fail(data_path, line_no, "bad ss_type '" + std::string(ss_type) + "'");
            syn.pos = *pos;
            unsigned w_cnt = parse_hex(fields.next(), data_path, line_no);
            if (w_cnt == 0) fail(data_path, line_no, "synset has no words");
            for (unsigned i = 0; i < w_cnt; ++i) {
                std::string_view word = fields.next();
                if (word.empty()) fail(data_path, line_no, "truncated word list");
                // adjective syntax markers: lemma(a), lemma(p), lemma(ip)
                if (syn.pos == Pos::Adj && word.ends_with(")")) {
                    std::size_t open = word.rfind('(');
                    if (open != std::string_view::npos) word = word.substr(0, open);
                }
                syn.lemmas.emplace_back(word);
                parse_hex(fields.next(), data_path, line_no);  // lex_id
            }
            unsigned p_cnt = parse_dec(fields.next(), data_path, line_no);
            for (unsigned i = 0; i < p_cnt; ++i) {
                std::string_view symbol = fields.next();
                std::uint32_t target = parse_offset(fields.next(), data_path, line_no);
                std::string_view tpos = fields.next();
                fields.next();  // source/target
                if (symbol.empty() || tpos.size() != 1) fail(data_path, line_no, "truncated pointer");
                if ((symbol == "@" || symbol == "@i") && pos_from_char(tpos[0]) == syn.pos)
                    syn.hypernyms.push_back(target);
            }
            if (entry.frames) {
                unsigned f_cnt = parse_dec(fields.next(), data_path, line_no);
                for (unsigned i = 0; i < f_cnt; ++i) {
                    fields.next();  // '+'
                    fields.next();  // frame number
                    fields.next();  // word number
                }
            }
            if (!fields.done()) fail(data_path, line_no, "trailing fields before gloss");
            split_gloss(std::string_view(line).substr(bar + 3), syn.definition, syn.examples);
            if (syn.definition.empty()) fail(data_path, line_no, "empty gloss");

            pd.by_offset.emplace(syn.offset, pd.synsets.size());
            pd.synsets.push_back(std::move(syn));
        }

        // ---- index file ----
        const std::filesystem::path index_path = dir / entry.index_name;
        std::ifstream index(index_path, std::ios::binary);
        line_no = 0;
        while (std::getline(index, line)) {
            ++line_no;
            if (line.empty() || line[0] == ' ') continue;
            Splitter fields{line};
            std::string lemma(fields.next());
            fields.next();  // pos
            unsigned synset_cnt = parse_dec(fields.next(), index_path, line_no);
            unsigned p_cnt = parse_dec(fields.next(), index_path, line_no);
            for (unsigned i = 0; i < p_cnt; ++i) fields.next();
            fields.next();  // sense_cnt
            fields.next();  // tagsense_cnt
            std::vector<std::size_t>& senses = pd.index[lemma];
            for (unsigned i = 0; i < synset_cnt; ++i) {
                std::uint32_t off = parse_offset(fields.next(), index_path, line_no);
                auto it = pd.by_offset.find(off);
                if (it == pd.by_offset.end())
                    fail(index_path, line_no, "index entry '" + lemma + "' references missing synset " +
                                                  std::to_string(off));
                senses.push_back(it->second);
            }
        }

        // ---- exception list ----
        const std::filesystem::path exc_path = dir / entry.exc_name;
        std::ifstream exc(exc_path, std::ios::binary);
        line_no = 0;
        while (std::getline(exc, line)) {
            ++line_no;
            if (line.empty()) continue;
            Splitter fields{line};
            std::string inflected(fields.next());
            std::vector<std::string> bases;
            while (!fields.done()) bases.emplace_back(fields.next());
            if (inflected.empty() || bases.empty()) fail(exc_path, line_no, "malformed exception entry");
            pd.exceptions.emplace(std::move(inflected), std::move(bases));
        }
    }

    // resolve hypernym references
    for (const auto& entry : kFiles) {
        PosData& pd = db.pos_data(entry.pos);
        for (const Synset& syn : pd.synsets) {
            for (std::uint32_t h : syn.hypernyms) {
                if (!pd.by_offset.count(h))
                    throw std::runtime_error("wordnet: " + std::string(entry.data_name) + ": synset " +
                                             std::to_string(syn.offset) + " references missing hypernym " +
                                             std::to_string(h));
            }
        }
    }

    db.validate_noun_graph();
    return db;
}

void WordNetDb::validate_noun_graph() {
    const PosData& nouns = pos_data(Pos::Noun);
    const std::size_t n = nouns.synsets.size();
    noun_depths_.assign(n, 0);
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    for (std::size_t start = 0; start < n; ++start) {
        if (state[start] == 2) continue;
        std::vector<std::size_t> stack{start};
        while (!stack.empty()) {
            std::size_t s = stack.back();
            if (state[s] == 2) {
                stack.pop_back();
                continue;
            }
            bool ready = true;
            for (std::uint32_t h : nouns.synsets[s].hypernyms) {
                std::size_t hi = nouns.by_offset.at(h);
                if (state[hi] == 1 && std::find(stack.begin(), stack.end(), hi) != stack.end())
                    throw std::runtime_error("wordnet: hypernym cycle through noun synset " +
                                             std::to_string(nouns.synsets[s].offset));
                if (state[hi] != 2) {
                    stack.push_back(hi);
                    ready = false;
                }
            }
            if (!ready) {
                state[s] = 1;
                continue;
            }
            int depth = 1;
            if (!nouns.synsets[s].hypernyms.empty()) {
                int best = std::numeric_limits<int>::max();
                for (std::uint32_t h : nouns.synsets[s].hypernyms)
                    best = std::min(best, noun_depths_[nouns.by_offset.at(h)]);
                depth = best + 1;
            }
            noun_depths_[s] = depth;
            state[s] = 2;
            stack.pop_back();
        }
    }
    std::size_t roots = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (nouns.synsets[i].hypernyms.empty()) {
            ++roots;
            const auto& lemmas = nouns.synsets[i].lemmas;
            if (std::find(lemmas.begin(), lemmas.end(), "entity") == lemmas.end())
                throw std::runtime_error("wordnet: rootless noun synset " +
                                         std::to_string(nouns.synsets[i].offset) + " is not 'entity'");
        }
    }
    if (n > 0 && roots != 1)
        throw std::runtime_error("wordnet: expected exactly one noun root, found " + std::to_string(roots));
}

std::vector<const Synset*> WordNetDb::synsets(std::string_view word, Pos pos) const {
    const PosData& pd = pos_data(pos);
    std::string key = normalize(word);
    auto it = pd.index.find(key);
    if (it == pd.index.end()) {
        auto base = morphy(key, pos);
        if (!base) return {};
        it = pd.index.find(*base);
        if (it == pd.index.end()) return {};
    }
    std::vector<const Synset*> out;
    out.reserve(it->second.size());
    for (std::size_t idx : it->second) out.push_back(&pd.synsets[idx]);
    return out;
}

const Synset* WordNetDb::find(Pos pos, std::uint32_t offset) const {
    const PosData& pd = pos_data(pos);
    auto it = pd.by_offset.find(offset);
    return it == pd.by_offset.end() ? nullptr : &pd.synsets[it->second];
}

std::optional<std::string> WordNetDb::morphy(std::string_view word, Pos pos) const {
    const PosData& pd = pos_data(pos);
    std::string key = normalize(word);
    if (pd.index.count(key)) return key;
    if (auto exc = pd.exceptions.find(key); exc != pd.exceptions.end()) {
        for (const std::string& base : exc->second)
            if (pd.index.count(base)) return base;
    }
    for (const MorphRule& rule : rules_for(pos)) {
        if (key.size() <= rule.suffix.size() || !key.ends_with(rule.suffix)) continue;
        std::string candidate = key.substr(0, key.size() - rule.suffix.size());
        candidate += rule.replacement;
        if (pd.index.count(candidate)) return candidate;
    }
    return std::nullopt;
}

int WordNetDb::depth(const Synset& s) const {
    if (s.pos != Pos::Noun)
        throw std::invalid_argument("wordnet: depth is defined for noun synsets only");
    return noun_depths_[pos_data(Pos::Noun).by_offset.at(s.offset)];
}

std::unordered_map<std::size_t, int> WordNetDb::ancestor_distances(std::size_t noun_index) const {
    const PosData& nouns = pos_data(Pos::Noun);
    std::unordered_map<std::size_t, int> dist;
    std::deque<std::size_t> queue;
    dist.emplace(noun_index, 0);
    queue.push_back(noun_index);
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        for (std::uint32_t h : nouns.synsets[s].hypernyms) {
            std::size_t hi = nouns.by_offset.at(h);
            auto [it, inserted] = dist.emplace(hi, dist[s] + 1);
            if (inserted) queue.push_back(hi);
        }
    }
    return dist;
}

WordNetDb::WupResult WordNetDb::wup_impl(std::size_t a, std::size_t b) const {
    const PosData& nouns = pos_data(Pos::Noun);
    auto da = ancestor_distances(a);
    auto db_ = ancestor_distances(b);
    WupResult best;
    best.score = -1.0;
    std::uint32_t best_offset = 0;
    for (const auto& [idx, dist_a] : da) {
        auto it = db_.find(idx);
        if (it == db_.end()) continue;
        const double d = noun_depths_[idx];
        const double score = 2.0 * d / (dist_a + it->second + 2.0 * d);
        const std::uint32_t offset = nouns.synsets[idx].offset;
        if (score > best.score || (score == best.score && offset < best_offset)) {
            best.score = score;
            best.lcs_index = idx;
            best_offset = offset;
        }
    }
    return best;
}

const Synset& WordNetDb::lcs(const Synset& a, const Synset& b) const {
    if (a.pos != Pos::Noun || b.pos != Pos::Noun)
        throw std::invalid_argument("wordnet: lcs is defined for noun synsets only");
    const PosData& nouns = pos_data(Pos::Noun);
    WupResult r = wup_impl(nouns.by_offset.at(a.offset), nouns.by_offset.at(b.offset));
    return nouns.synsets[r.lcs_index];
}

double WordNetDb::wup(const Synset& a, const Synset& b) const {
    if (a.pos != Pos::Noun || b.pos != Pos::Noun)
        throw std::invalid_argument("wordnet: wup is defined for noun synsets only");
    const PosData& nouns = pos_data(Pos::Noun);
    return wup_impl(nouns.by_offset.at(a.offset), nouns.by_offset.at(b.offset)).score;
}

double WordNetDb::wup_words(std::string_view w1, std::string_view w2) const {
    auto s1 = synsets(w1, Pos::Noun);
    auto s2 = synsets(w2, Pos::Noun);
    if (s1.empty() || s2.empty()) return 0.0;
    const PosData& nouns = pos_data(Pos::Noun);
    double best = 0.0;
    for (const Synset* a : s1) {
        for (const Synset* b : s2) {
            double score = wup_impl(nouns.by_offset.at(a->offset), nouns.by_offset.at(b->offset)).score;
            best = std::max(best, score);
        }
    }
    return best;
}

std::vector<double> WordNetDb::wup_words_batch_serial(
    std::span<const std::pair<std::string, std::string>> pairs) const {
    std::vector<double> out(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        out[i] = wup_words(pairs[i].first, pairs[i].second);
    return out;
}

std::vector<double> WordNetDb::wup_words_batch(
    std::span<const std::pair<std::string, std::string>> pairs) const {
    std::vector<double> out(pairs.size());
#ifdef TOPLAB_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pairs.size()); ++i)
        out[i] = wup_words(pairs[i].first, pairs[i].second);
    return out;
}

bool WordNetDb::has_noun_synset(std::string_view word) const {
    return !synsets(word, Pos::Noun).empty();
}

std::size_t WordNetDb::synset_count(Pos pos) const { return pos_data(pos).synsets.size(); }

const std::vector<Synset>& WordNetDb::all_synsets(Pos pos) const { return pos_data(pos).synsets; }

}  // namespace toplab::wordnet
