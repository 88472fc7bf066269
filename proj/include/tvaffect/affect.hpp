#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tvaffect/corpus.hpp"
#include "tvaffect/lexicon.hpp"

namespace tvaffect {

// Thrown when no token of the input appears in the lexicon, so the weighted
// mean is undefined.
class NoSignalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AffectScore {
    Vad mean;
    std::uint64_t matched_distinct_terms = 0;
    std::uint64_t matched_token_total = 0;

    friend bool operator==(const AffectScore&, const AffectScore&) = default;
};

// Score plus the count-weighted population standard deviation per dimension.
struct AffectSummary {
    AffectScore score;
    Vad sd;

    friend bool operator==(const AffectSummary&, const AffectSummary&) = default;
};

// One lexicon hit: the entry and how often its word occurred.
struct MatchedTerm {
    const AffectEntry* entry;
    std::uint64_t count;
};

// Terms of `counts` that the lexicon knows, in the counts' key order.
std::vector<MatchedTerm> match_terms(const TermCounts& counts, const AffectLexicon& lexicon);

// sum(f_i * m_i) / sum(f_i) over the matched terms; requires a non-empty match.
Vad weighted_mean(std::span<const MatchedTerm> matches);

// sqrt(sum(f_i * (m_i - mean)^2) / sum(f_i)).
Vad weighted_sd(std::span<const MatchedTerm> matches, const Vad& mean);

// Score of an already-matched term list. Throws NoSignalError when empty.
AffectScore score_matches(std::span<const MatchedTerm> matches);

/// Frequency-weighted mean valence/arousal/dominance of a term-count map:
/// each term's lexicon mean is multiplied by its count, summed, and divided
/// by the total matched count. Throws NoSignalError if nothing matches.
AffectScore score_counts(const TermCounts& counts, const AffectLexicon& lexicon);

/// Pools the term counts of `docs` into one map and scores it, adding the
/// weighted standard deviation. Throws NoSignalError if nothing matches.
AffectSummary score_pooled(std::span<const Document* const> docs, const AffectLexicon& lexicon);

/// Channel-level score over all of the channel's documents (count pooling,
/// so longer documents weigh more). Throws NoSignalError for an unknown
/// channel or when none of its tokens match.
AffectSummary score_channel(const Corpus& corpus, const std::string& channel, const AffectLexicon& lexicon);

struct SeriesPoint {
    Timestamp window_start;
    std::size_t document_count = 0;
    // Absent for a gap: no documents, or no matched tokens, in this window.
    std::optional<AffectSummary> value;
};

struct AffectSeries {
    std::string channel;
    std::chrono::seconds window_length{0};
    std::vector<SeriesPoint> points;
};

/// Buckets the channel's documents into half-open windows
/// [origin + k*len, origin + (k+1)*len) and scores each window by pooling.
/// Points run contiguously from the first to the last occupied window; windows
/// without documents or without matched tokens are gaps. A channel with no
/// documents yields an empty series. Throws std::invalid_argument for a
/// non-positive window length or a channel document without a timestamp.
AffectSeries score_windows(const Corpus& corpus, const std::string& channel, const AffectLexicon& lexicon,
                           std::chrono::seconds window_length, Timestamp origin);

inline constexpr std::string_view kSeriesCsvHeader =
    "channel,window_start,valence,arousal,dominance,valence_sd,arousal_sd,dominance_sd,matched_tokens";

// Writes rows only; gap windows have empty value fields and matched_tokens 0.
void write_series_rows(std::ostream& out, const AffectSeries& series);

}  // namespace tvaffect
