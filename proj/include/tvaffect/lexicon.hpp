#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvaffect {

enum class Dimension : std::size_t { valence = 0, arousal = 1, dominance = 2 };

inline constexpr std::array<Dimension, 3> kDimensions{Dimension::valence, Dimension::arousal,
                                                      Dimension::dominance};

std::string_view dimension_name(Dimension d);

// One value per affect dimension.
struct Vad {
    double valence = 0.0;
    double arousal = 0.0;
    double dominance = 0.0;

    double& operator[](Dimension d);
    double operator[](Dimension d) const;

    friend bool operator==(const Vad&, const Vad&) = default;
};

// Normalized [0,1] rating statistics for one word on one dimension.
struct RatingStat {
    double mean = 0.0;
    double sd = 0.0;

    friend bool operator==(const RatingStat&, const RatingStat&) = default;
};

struct AffectEntry {
    std::string word;
    RatingStat valence;
    RatingStat arousal;
    RatingStat dominance;

    const RatingStat& rating(Dimension d) const;

    friend bool operator==(const AffectEntry&, const AffectEntry&) = default;
};

/// Error raised while reading a lexicon or corpus file. `line()` is 1-based,
/// 0 when the problem is not tied to a single line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Maps a raw rating on the 1..9 scale onto [0,1] via (raw - 1) / 8.
/// Throws std::domain_error naming the value when raw lies outside [1, 9].
double normalize_rating(double raw);

// Inverse of normalize_rating, and raw_sd = sd * 8 for standard deviations.
double denormalize_rating(double normalized);

/// Immutable word -> affect ratings table. Words are stored lowercased and
/// iterate in byte order.
class AffectLexicon {
public:
    using Map = std::map<std::string, AffectEntry, std::less<>>;

    AffectLexicon() = default;

    // Validates every entry (lowercase, no whitespace, ratings in range) and
    // rejects duplicate words with std::invalid_argument.
    explicit AffectLexicon(std::vector<AffectEntry> entries);

    // Case-insensitive; nullptr when the word is absent.
    const AffectEntry* lookup(std::string_view token) const;
    bool contains(std::string_view token) const { return lookup(token) != nullptr; }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const Map& entries() const noexcept { return entries_; }

    friend bool operator==(const AffectLexicon&, const AffectLexicon&) = default;

private:
    Map entries_;
};

inline constexpr std::string_view kLexiconHeader =
    "word,valence_mean,valence_sd,arousal_mean,arousal_sd,dominance_mean,dominance_sd";

/// Reads the 7-column lexicon CSV. Raw ratings are on the 1..9 scale; means are
/// normalized with normalize_rating and standard deviations scaled by 1/8.
/// Throws ParseError on an empty file, a bad header, a malformed row, an
/// out-of-range rating, or a duplicate word (the message names both lines).
AffectLexicon parse_lexicon(std::istream& in);

AffectLexicon load_lexicon(const std::filesystem::path& path);

// Writes the lexicon back in raw 1..9 form; parse_lexicon reads it back exactly.
void serialize_lexicon(std::ostream& out, const AffectLexicon& lexicon);

}  // namespace tvaffect
