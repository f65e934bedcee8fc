#include "toplab/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

namespace toplab::corpus {

namespace {

std::string trimmed(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

void validate_document(const Document& doc, const std::string& where) {
    if (doc.id.empty()) throw std::runtime_error(where + ": document id is empty");
    if (trimmed(doc.text).empty())
        throw std::runtime_error(where + ": document '" + doc.id + "' has empty text");
}

void check_unique_ids(const Corpus& corpus, const std::string& where) {
    std::unordered_set<std::string_view> seen;
    for (const Document& doc : corpus.documents) {
        if (!seen.insert(doc.id).second)
            throw std::runtime_error(where + ": duplicate document id '" + doc.id + "'");
    }
}

}  // namespace

bool valid_utf8(std::string_view bytes) {
    std::size_t i = 0;
    while (i < bytes.size()) {
        unsigned char c = static_cast<unsigned char>(bytes[i]);
        std::size_t len;
        unsigned cp;
        if (c < 0x80) { len = 1; cp = c; }
        else if ((c & 0xE0) == 0xC0) { len = 2; cp = c & 0x1Fu; }
        else if ((c & 0xF0) == 0xE0) { len = 3; cp = c & 0x0Fu; }
        else if ((c & 0xF8) == 0xF0) { len = 4; cp = c & 0x07u; }
        else return false;
        if (i + len > bytes.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            unsigned char cont = static_cast<unsigned char>(bytes[i + k]);
            if ((cont & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cont & 0x3Fu);
        }
        if (len == 2 && cp < 0x80) return false;
        if (len == 3 && cp < 0x800) return false;
        if (len == 4 && (cp < 0x10000 || cp > 0x10FFFF)) return false;
        if (cp >= 0xD800 && cp <= 0xDFFF) return false;
        i += len;
    }
    return true;
}

Corpus load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("corpus: cannot open " + path.string());
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (!valid_utf8(line)) throw std::runtime_error(where + ": invalid UTF-8 byte sequence");
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw std::runtime_error(where + ": malformed JSON: " + e.what());
        }
        if (!obj.is_object() || !obj.contains("id") || !obj.contains("text") ||
            !obj["id"].is_string() || !obj["text"].is_string())
            throw std::runtime_error(where + ": expected an object with string \"id\" and \"text\"");
        Document doc;
        doc.id = obj["id"].get<std::string>();
        doc.text = obj["text"].get<std::string>();
        if (obj.contains("title")) {
            if (!obj["title"].is_string())
                throw std::runtime_error(where + ": \"title\" must be a string");
            doc.title = obj["title"].get<std::string>();
        }
        validate_document(doc, where);
        corpus.documents.push_back(std::move(doc));
    }
    check_unique_ids(corpus, path.string());
    return corpus;
}

Corpus load_text_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error("corpus: not a directory: " + dir.string());
    Corpus corpus;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        if (!in) throw std::runtime_error("corpus: cannot read " + entry.path().string());
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        if (in.bad()) throw std::runtime_error("corpus: I/O error reading " + entry.path().string());
        if (!valid_utf8(text))
            throw std::runtime_error("corpus: invalid UTF-8 in " + entry.path().string());
        Document doc;
        doc.id = entry.path().stem().string();
        doc.text = std::move(text);
        validate_document(doc, entry.path().string());
        corpus.documents.push_back(std::move(doc));
    }
    std::sort(corpus.documents.begin(), corpus.documents.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    check_unique_ids(corpus, dir.string());
    return corpus;
}

void save_jsonl(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("corpus: cannot write " + path.string());
    for (const Document& doc : corpus.documents) {
        nlohmann::ordered_json obj;
        obj["id"] = doc.id;
        if (doc.title) obj["title"] = *doc.title;
        obj["text"] = doc.text;
        out << obj.dump() << '\n';
    }
}

}  // namespace toplab::corpus
