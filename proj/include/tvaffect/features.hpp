#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvaffect/corpus.hpp"
#include "tvaffect/lexicon.hpp"

namespace tvaffect {

// Dense feature rows mark a missing value with a quiet NaN.
using FeatureRow = std::vector<double>;

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double x) { return std::isnan(x); }

struct DimensionStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;

    friend bool operator==(const DimensionStats&, const DimensionStats&) = default;
};

/// Per-document summary: five statistics per affect dimension over the
/// occurrence-weighted matched terms, plus four stylistic counts.
struct MetaFeatureVector {
    // Absent when no term matched the lexicon; all 15 statistics are then missing.
    std::optional<std::array<DimensionStats, 3>> affect;
    std::uint64_t num_words = 0;
    std::uint64_t num_unique_words = 0;
    std::uint64_t num_unique_anew_words = 0;
    std::uint64_t max_word_frequency = 0;

    friend bool operator==(const MetaFeatureVector&, const MetaFeatureVector&) = default;
};

inline constexpr std::size_t kMetaFeatureCount = 19;

// valence_min, valence_max, valence_mean, valence_sd, valence_median, then the
// same for arousal and dominance, then the four stylistic counts.
const std::array<std::string, kMetaFeatureCount>& meta_feature_names();

MetaFeatureVector extract_meta(const Document& doc, const AffectLexicon& lexicon);

// Document counts restricted to lexicon words.
using VsmVector = TermCounts;

VsmVector extract_vsm(const Document& doc, const AffectLexicon& lexicon);

// Early fusion into one dense row in meta_feature_names() order.
FeatureRow fuse(const MetaFeatureVector& meta);

// Header `id,<19 feature names>,genre`.
void write_meta_header(std::ostream& out);
void write_meta_row(std::ostream& out, const Document& doc, const MetaFeatureVector& meta);

// Long form `id,genre,term,count`, one row per lexicon term in the document.
void write_vsm_header(std::ostream& out);
void write_vsm_rows(std::ostream& out, const Document& doc, const VsmVector& vsm);

}  // namespace tvaffect
