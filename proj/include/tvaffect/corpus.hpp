#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvaffect/util.hpp"

namespace tvaffect {

// token -> occurrence count (every count >= 1).
using TermCounts = std::map<std::string, std::uint64_t, std::less<>>;

std::uint64_t total_count(const TermCounts& counts);

struct Document {
    std::string id;
    std::string channel;
    std::optional<std::string> genre;
    // Absent only for documents built in code; the JSON-lines loader requires it.
    std::optional<Timestamp> timestamp;
    TermCounts term_counts;
    std::uint64_t total_tokens = 0;

    friend bool operator==(const Document&, const Document&) = default;
};

// Builds a document with total_tokens derived from the counts.
Document make_document(std::string id, std::string channel, std::optional<std::string> genre,
                       std::optional<Timestamp> timestamp, TermCounts counts);

/// Ordered, immutable collection of documents with pairwise distinct ids.
class Corpus {
public:
    Corpus() = default;

    // Throws std::invalid_argument on duplicate ids, zero counts, or a
    // total_tokens that disagrees with the counts.
    explicit Corpus(std::vector<Document> documents);

    const std::vector<Document>& documents() const noexcept { return documents_; }
    const std::set<std::string>& label_set() const noexcept { return labels_; }
    std::size_t size() const noexcept { return documents_.size(); }
    bool empty() const noexcept { return documents_.empty(); }

    // Channels in first-appearance order.
    std::vector<std::string> channels() const;

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    std::vector<Document> documents_;
    std::set<std::string> labels_;
};

/// Lowercases and splits on anything that is not an ASCII letter, digit,
/// apostrophe, or a byte of a multi-byte UTF-8 sequence; then strips leading
/// and trailing apostrophes and drops empty tokens.
std::vector<std::string> tokenize(std::string_view text);

struct TermTally {
    TermCounts counts;
    std::uint64_t total_tokens = 0;
};

TermTally count_terms(std::span<const std::string> tokens);

enum class CorpusFormat {
    text,       // records carry `text`, tokenized on load
    counts,     // records carry `term_counts`, used as given (lowercased, merged)
    automatic,  // each record may use either field
};

/// Reads the JSON-lines corpus format. Each line is an object with `id`,
/// `channel`, `timestamp` (ISO-8601 UTC), optional `genre`, and exactly one
/// of `text` or `term_counts`. Blank lines are skipped.
/// Throws ParseError with the line number for malformed records, duplicate
/// ids, and non-positive counts.
Corpus load_corpus(std::istream& in, CorpusFormat format);
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

// Writes every document in counts form; load_corpus(counts) reads it back.
void write_corpus(std::ostream& out, const Corpus& corpus);

/// Keeps labeled documents whose genre occurs at least `min_programs` times.
/// Relative order is preserved; unlabeled documents are dropped.
Corpus filter_min_genre_support(const Corpus& corpus, std::size_t min_programs);

// Labeled documents only, in corpus order.
Corpus labeled_subset(const Corpus& corpus);

}  // namespace tvaffect
