#include "tvaffect/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tvaffect/lexicon.hpp"

namespace tvaffect {

using nlohmann::json;

std::uint64_t total_count(const TermCounts& counts) {
    std::uint64_t total = 0;
    for (const auto& [term, n] : counts) total += n;
    return total;
}

Document make_document(std::string id, std::string channel, std::optional<std::string> genre,
                       std::optional<Timestamp> timestamp, TermCounts counts) {
    Document doc;
    doc.id = std::move(id);
    doc.channel = std::move(channel);
    doc.genre = std::move(genre);
    doc.timestamp = timestamp;
    doc.total_tokens = total_count(counts);
    doc.term_counts = std::move(counts);
    return doc;
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
    std::unordered_set<std::string_view> ids;
    for (const Document& doc : documents_) {
        if (!ids.insert(doc.id).second) throw std::invalid_argument("duplicate document id '" + doc.id + "'");
        for (const auto& [term, n] : doc.term_counts) {
            if (n == 0) throw std::invalid_argument("document '" + doc.id + "': zero count for '" + term + "'");
        }
        if (total_count(doc.term_counts) != doc.total_tokens) {
            throw std::invalid_argument("document '" + doc.id + "': total_tokens disagrees with term counts");
        }
        if (doc.genre) labels_.insert(*doc.genre);
    }
}

std::vector<std::string> Corpus::channels() const {
    std::vector<std::string> out;
    std::unordered_set<std::string_view> seen;
    for (const Document& doc : documents_) {
        if (seen.insert(doc.channel).second) out.push_back(doc.channel);
    }
    return out;
}

namespace {

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'' ||
           c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && is_word_byte(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view raw = text.substr(i, j - i);
        while (!raw.empty() && raw.front() == '\'') raw.remove_prefix(1);
        while (!raw.empty() && raw.back() == '\'') raw.remove_suffix(1);
        if (!raw.empty()) tokens.push_back(ascii_lower(raw));
        i = j;
    }
    return tokens;
}

TermTally count_terms(std::span<const std::string> tokens) {
    TermTally tally;
    for (const std::string& t : tokens) ++tally.counts[t];
    tally.total_tokens = tokens.size();
    return tally;
}

namespace {

std::string require_string(const json& rec, const char* field, std::size_t line_no) {
    const auto it = rec.find(field);
    if (it == rec.end() || it->is_null()) {
        throw ParseError(line_no, std::string("missing required field '") + field + "'");
    }
    if (!it->is_string()) throw ParseError(line_no, std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

TermCounts read_counts(const json& obj, std::size_t line_no) {
    if (!obj.is_object()) throw ParseError(line_no, "'term_counts' must be an object");
    TermCounts counts;
    for (const auto& [token, value] : obj.items()) {
        std::uint64_t n = 0;
        if (value.is_number_unsigned()) {
            n = value.get<std::uint64_t>();
        } else if (value.is_number_integer()) {
            const auto signed_n = value.get<std::int64_t>();
            if (signed_n <= 0) {
                throw ParseError(line_no, "non-positive count " + std::to_string(signed_n) + " for '" + token + "'");
            }
            n = static_cast<std::uint64_t>(signed_n);
        } else {
            throw ParseError(line_no, "count for '" + token + "' is not an integer");
        }
        if (n == 0) throw ParseError(line_no, "non-positive count 0 for '" + token + "'");
        const std::string key = ascii_lower(token);
        if (key.empty()) throw ParseError(line_no, "empty token in 'term_counts'");
        counts[key] += n;
    }
    return counts;
}

Document parse_record(const std::string& line, std::size_t line_no, CorpusFormat format) {
    json rec;
    try {
        rec = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) throw ParseError(line_no, "record is not a JSON object");

    std::string id = require_string(rec, "id", line_no);
    std::string channel = require_string(rec, "channel", line_no);
    const std::string stamp = require_string(rec, "timestamp", line_no);
    const auto timestamp = parse_timestamp(stamp);
    if (!timestamp) throw ParseError(line_no, "timestamp '" + stamp + "' is not ISO-8601 UTC");

    std::optional<std::string> genre;
    if (const auto it = rec.find("genre"); it != rec.end() && !it->is_null()) {
        if (!it->is_string()) throw ParseError(line_no, "field 'genre' must be a string");
        genre = it->get<std::string>();
    }

    const bool has_text = rec.contains("text");
    const bool has_counts = rec.contains("term_counts");
    if (has_text == has_counts) {
        throw ParseError(line_no, "record must have exactly one of 'text' or 'term_counts'");
    }
    if (format == CorpusFormat::text && !has_text) throw ParseError(line_no, "missing required field 'text'");
    if (format == CorpusFormat::counts && !has_counts) {
        throw ParseError(line_no, "missing required field 'term_counts'");
    }

    TermCounts counts;
    if (has_text) {
        const auto& text = rec["text"];
        if (!text.is_string()) throw ParseError(line_no, "field 'text' must be a string");
        const auto tokens = tokenize(text.get<std::string>());
        counts = count_terms(tokens).counts;
    } else {
        counts = read_counts(rec["term_counts"], line_no);
    }
    return make_document(std::move(id), std::move(channel), std::move(genre), timestamp, std::move(counts));
}

}  // namespace

Corpus load_corpus(std::istream& in, CorpusFormat format) {
    std::vector<Document> docs;
    std::unordered_map<std::string, std::size_t> id_lines;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; })) continue;
        Document doc = parse_record(line, line_no, format);
        const auto [it, inserted] = id_lines.emplace(doc.id, line_no);
        if (!inserted) {
            throw ParseError(line_no, "duplicate document id '" + doc.id + "' (first on line " +
                                          std::to_string(it->second) + ")");
        }
        docs.push_back(std::move(doc));
    }
    return Corpus(std::move(docs));
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file '" + path.string() + "'");
    return load_corpus(in, format);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
    for (const Document& doc : corpus.documents()) {
        json rec = json::object();
        rec["id"] = doc.id;
        rec["channel"] = doc.channel;
        if (doc.genre) rec["genre"] = *doc.genre;
        if (!doc.timestamp) throw std::invalid_argument("document '" + doc.id + "' has no timestamp");
        rec["timestamp"] = format_timestamp(*doc.timestamp);
        json counts = json::object();
        for (const auto& [term, n] : doc.term_counts) counts[term] = n;
        rec["term_counts"] = std::move(counts);
        out << rec.dump() << '\n';
    }
}

Corpus filter_min_genre_support(const Corpus& corpus, std::size_t min_programs) {
    if (min_programs == 0) throw std::invalid_argument("min_programs must be at least 1");
    std::map<std::string, std::size_t, std::less<>> support;
    for (const Document& doc : corpus.documents()) {
        if (doc.genre) ++support[*doc.genre];
    }
    std::vector<Document> kept;
    for (const Document& doc : corpus.documents()) {
        if (doc.genre && support[*doc.genre] >= min_programs) kept.push_back(doc);
    }
    return Corpus(std::move(kept));
}

Corpus labeled_subset(const Corpus& corpus) {
    std::vector<Document> kept;
    for (const Document& doc : corpus.documents()) {
        if (doc.genre) kept.push_back(doc);
    }
    return Corpus(std::move(kept));
}

}  // namespace tvaffect
