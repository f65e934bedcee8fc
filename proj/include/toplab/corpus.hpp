// Document collection loading and validation.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toplab::corpus {

struct Document {
    std::string id;
    std::optional<std::string> title;
    std::string text;

    // title + single space + abstract when a title is present
    std::string modeling_text() const {
        return title ? *title + " " + text : text;
    }
};

struct Corpus {
    std::vector<Document> documents;

    std::size_t size() const { return documents.size(); }
    bool empty() const { return documents.empty(); }
};

// One JSON object per line: {"id": string, "title": string?, "text": string}.
// Line order is preserved; duplicate ids and invalid UTF-8 are rejected.
Corpus load_jsonl(const std::filesystem::path& path);

// Each *.txt file is one document; id = filename stem, documents sorted by id.
Corpus load_text_dir(const std::filesystem::path& dir);

void save_jsonl(const Corpus& corpus, const std::filesystem::path& path);

bool valid_utf8(std::string_view bytes);

}  // namespace toplab::corpus
