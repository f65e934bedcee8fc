// toplab CLI: `run` executes the full labeling pipeline; `wup` and `synsets`
// query the lexical database directly.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "toplab/report.hpp"
#include "toplab/wordnet.hpp"

namespace {

std::string wordnet_dir_or_env(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("TOPLAB_WORDNET_DIR")) return env;
    return {};
}

// flat key=value file; values apply only where the flag was not given, so the
// precedence is flags > config file > defaults
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: " + path + ":" + std::to_string(line_no) +
                                     ": expected key=value");
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topic labeling over abstracts: LDA + K-Means + WordNet WUP labels"};
    app.require_subcommand(1);

    // ---- run ----
    toplab::report::RunConfig config;
    std::string input, wordnet_dir, out = "report.json", stopwords, lexicon, config_path;
    CLI::App* run = app.add_subcommand("run", "run the full pipeline and write reports");
    run->add_option("--config", config_path, "flat key=value config file (flags take precedence)");
    run->add_option("--input", input, "corpus file or directory");
    run->add_option("--format", config.format, "input format: jsonl | txt-dir")
        ->check(CLI::IsMember({"jsonl", "txt-dir"}))
        ->capture_default_str();
    run->add_option("--wordnet-dir", wordnet_dir,
                    "WordNet 3.0 dict directory (or env TOPLAB_WORDNET_DIR)");
    run->add_option("--model", config.model, "models to train: lda | kmeans | both")
        ->check(CLI::IsMember({"lda", "kmeans", "both"}))
        ->capture_default_str();
    run->add_option("--topics", config.topics, "topic/cluster count per document")
        ->capture_default_str();
    run->add_option("--words", config.words_per_topic, "top words per topic")
        ->capture_default_str();
    run->add_option("--seed", config.seed, "random seed")->capture_default_str();
    run->add_option("--iters", config.lda_iterations, "Gibbs sweeps")->capture_default_str();
    run->add_option("--n-init", config.kmeans_n_init, "K-Means restarts")->capture_default_str();
    run->add_option("--max-iter", config.kmeans_max_iter, "K-Means iteration cap")
        ->capture_default_str();
    run->add_flag("--use-embedding", config.use_embedding,
                  "add word2vec neighbors to the candidate labels");
    run->add_option("--out", out, "JSON report path")->capture_default_str();
    run->add_option("--emit", config.emit, "json | markdown | both")
        ->check(CLI::IsMember({"json", "markdown", "both"}))
        ->capture_default_str();
    run->add_option("--stopwords", stopwords, "override the bundled stop list");
    run->add_option("--lexicon", lexicon, "override the bundled tagger lexicon");

    // ---- wup ----
    std::string w1, w2, wn_dir2;
    CLI::App* wup = app.add_subcommand("wup", "max Wu-Palmer similarity between two words");
    wup->add_option("word1", w1)->required();
    wup->add_option("word2", w2)->required();
    wup->add_option("--wordnet-dir", wn_dir2, "WordNet 3.0 dict directory");

    // ---- synsets ----
    std::string word, pos_name = "noun", wn_dir3;
    CLI::App* synsets = app.add_subcommand("synsets", "list the synsets of a word");
    synsets->add_option("word", word)->required();
    synsets->add_option("--pos", pos_name, "noun | verb | adj | adv")
        ->check(CLI::IsMember({"noun", "verb", "adj", "adv"}))
        ->capture_default_str();
    synsets->add_option("--wordnet-dir", wn_dir3, "WordNet 3.0 dict directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (!config_path.empty()) {
                const auto file = read_config_file(config_path);
                auto apply = [&](const char* flag, const char* key, auto setter) {
                    auto it = file.find(key);
                    if (it != file.end() && run->count(flag) == 0) setter(it->second);
                };
                apply("--input", "input", [&](const std::string& v) { input = v; });
                apply("--format", "format", [&](const std::string& v) { config.format = v; });
                apply("--wordnet-dir", "wordnet-dir",
                      [&](const std::string& v) { wordnet_dir = v; });
                apply("--model", "model", [&](const std::string& v) { config.model = v; });
                apply("--topics", "topics",
                      [&](const std::string& v) { config.topics = std::stoi(v); });
                apply("--words", "words",
                      [&](const std::string& v) { config.words_per_topic = std::stoi(v); });
                apply("--seed", "seed",
                      [&](const std::string& v) { config.seed = std::stoull(v); });
                apply("--iters", "iters",
                      [&](const std::string& v) { config.lda_iterations = std::stoi(v); });
                apply("--n-init", "n-init",
                      [&](const std::string& v) { config.kmeans_n_init = std::stoi(v); });
                apply("--max-iter", "max-iter",
                      [&](const std::string& v) { config.kmeans_max_iter = std::stoi(v); });
                apply("--use-embedding", "use-embedding", [&](const std::string& v) {
                    config.use_embedding = v == "1" || v == "true" || v == "yes";
                });
                apply("--out", "out", [&](const std::string& v) { out = v; });
                apply("--emit", "emit", [&](const std::string& v) { config.emit = v; });
                apply("--stopwords", "stopwords", [&](const std::string& v) { stopwords = v; });
                apply("--lexicon", "lexicon", [&](const std::string& v) { lexicon = v; });
            }
            if (input.empty()) {
                std::cerr << "config: --input is required (flag or config file)\n";
                return 2;
            }
            config.input = input;
            config.out = out;
            config.wordnet_dir = wordnet_dir_or_env(wordnet_dir);
            if (config.wordnet_dir.empty()) {
                std::cerr << "config: --wordnet-dir (or TOPLAB_WORDNET_DIR) is required\n";
                return 2;
            }
            if (!stopwords.empty()) config.stopwords_path = stopwords;
            if (!lexicon.empty()) config.lexicon_path = lexicon;
            if (config.stopwords_path.has_value() != config.lexicon_path.has_value()) {
                std::cerr << "config: --stopwords and --lexicon must be given together\n";
                return 2;
            }
            return toplab::report::run(config);
        }
        if (wup->parsed()) {
            const std::string dir = wordnet_dir_or_env(wn_dir2);
            if (dir.empty()) {
                std::cerr << "config: --wordnet-dir (or TOPLAB_WORDNET_DIR) is required\n";
                return 2;
            }
            auto db = toplab::wordnet::WordNetDb::load(dir);
            std::printf("wup(%s, %s) = %.6f\n", w1.c_str(), w2.c_str(), db.wup_words(w1, w2));
            return 0;
        }
        if (synsets->parsed()) {
            const std::string dir = wordnet_dir_or_env(wn_dir3);
            if (dir.empty()) {
                std::cerr << "config: --wordnet-dir (or TOPLAB_WORDNET_DIR) is required\n";
                return 2;
            }
            auto db = toplab::wordnet::WordNetDb::load(dir);
            toplab::wordnet::Pos pos = toplab::wordnet::Pos::Noun;
            if (pos_name == "verb") pos = toplab::wordnet::Pos::Verb;
            else if (pos_name == "adj") pos = toplab::wordnet::Pos::Adj;
            else if (pos_name == "adv") pos = toplab::wordnet::Pos::Adv;
            auto senses = db.synsets(word, pos);
            if (senses.empty()) {
                std::printf("no %s synsets for '%s'\n", pos_name.c_str(), word.c_str());
                return 0;
            }
            for (std::size_t i = 0; i < senses.size(); ++i) {
                std::string lemmas;
                for (const std::string& l : senses[i]->lemmas) {
                    if (!lemmas.empty()) lemmas += ", ";
                    lemmas += l;
                }
                std::printf("%zu. (%s) %s | %s\n", i + 1, pos_name.c_str(), lemmas.c_str(),
                            senses[i]->definition.c_str());
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
