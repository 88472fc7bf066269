#include "tvaffect/affect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

namespace tvaffect {

std::vector<MatchedTerm> match_terms(const TermCounts& counts, const AffectLexicon& lexicon) {
    std::vector<MatchedTerm> out;
    for (const auto& [term, n] : counts) {
        if (const AffectEntry* e = lexicon.lookup(term)) out.push_back({e, n});
    }
    return out;
}

Vad weighted_mean(std::span<const MatchedTerm> matches) {
    Vad sum;
    double weight = 0.0;
    for (const MatchedTerm& m : matches) {
        const double f = static_cast<double>(m.count);
        for (const Dimension d : kDimensions) sum[d] += f * m.entry->rating(d).mean;
        weight += f;
    }
    Vad mean;
    for (const Dimension d : kDimensions) mean[d] = sum[d] / weight;
    return mean;
}

Vad weighted_sd(std::span<const MatchedTerm> matches, const Vad& mean) {
    Vad sum;
    double weight = 0.0;
    for (const MatchedTerm& m : matches) {
        const double f = static_cast<double>(m.count);
        for (const Dimension d : kDimensions) {
            const double dev = m.entry->rating(d).mean - mean[d];
            sum[d] += f * dev * dev;
        }
        weight += f;
    }
    Vad sd;
    for (const Dimension d : kDimensions) sd[d] = std::sqrt(sum[d] / weight);
    return sd;
}

AffectScore score_matches(std::span<const MatchedTerm> matches) {
    if (matches.empty()) throw NoSignalError("no token matched the lexicon");
    AffectScore score;
    score.mean = weighted_mean(matches);
    // Rounding can push a mean of identical values a hair outside the range.
    for (const Dimension d : kDimensions) {
        double lo = 1.0;
        double hi = 0.0;
        for (const MatchedTerm& m : matches) {
            lo = std::min(lo, m.entry->rating(d).mean);
            hi = std::max(hi, m.entry->rating(d).mean);
        }
        score.mean[d] = std::clamp(score.mean[d], lo, hi);
    }
    score.matched_distinct_terms = matches.size();
    for (const MatchedTerm& m : matches) score.matched_token_total += m.count;
    return score;
}

AffectScore score_counts(const TermCounts& counts, const AffectLexicon& lexicon) {
    return score_matches(match_terms(counts, lexicon));
}

AffectSummary score_pooled(std::span<const Document* const> docs, const AffectLexicon& lexicon) {
    TermCounts pooled;
    for (const Document* doc : docs) {
        for (const auto& [term, n] : doc->term_counts) pooled[term] += n;
    }
    const auto matches = match_terms(pooled, lexicon);
    if (matches.empty()) throw NoSignalError("no token matched the lexicon");
    AffectSummary summary;
    summary.score = score_matches(matches);
    summary.sd = weighted_sd(matches, summary.score.mean);
    return summary;
}

AffectSummary score_channel(const Corpus& corpus, const std::string& channel, const AffectLexicon& lexicon) {
    std::vector<const Document*> docs;
    for (const Document& doc : corpus.documents()) {
        if (doc.channel == channel) docs.push_back(&doc);
    }
    if (docs.empty()) throw NoSignalError("channel '" + channel + "' has no documents");
    try {
        return score_pooled(docs, lexicon);
    } catch (const NoSignalError&) {
        throw NoSignalError("channel '" + channel + "' has no tokens in the lexicon");
    }
}

namespace {

// floor((t - origin) / len), also for t before origin.
std::int64_t window_index(Timestamp t, Timestamp origin, std::chrono::seconds len) {
    const auto offset = (t - origin).count();
    const auto step = len.count();
    auto q = offset / step;
    if (offset % step != 0 && offset < 0) --q;
    return q;
}

}  // namespace

AffectSeries score_windows(const Corpus& corpus, const std::string& channel, const AffectLexicon& lexicon,
                           std::chrono::seconds window_length, Timestamp origin) {
    if (window_length.count() <= 0) throw std::invalid_argument("window length must be positive");
    AffectSeries series;
    series.channel = channel;
    series.window_length = window_length;

    std::map<std::int64_t, std::vector<const Document*>> buckets;
    for (const Document& doc : corpus.documents()) {
        if (doc.channel != channel) continue;
        if (!doc.timestamp) {
            throw std::invalid_argument("document '" + doc.id + "' has no timestamp; cannot window it");
        }
        buckets[window_index(*doc.timestamp, origin, window_length)].push_back(&doc);
    }
    if (buckets.empty()) return series;

    const std::int64_t first = buckets.begin()->first;
    const std::int64_t last = buckets.rbegin()->first;
    for (std::int64_t k = first; k <= last; ++k) {
        SeriesPoint point;
        point.window_start = origin + k * window_length;
        if (const auto it = buckets.find(k); it != buckets.end()) {
            point.document_count = it->second.size();
            try {
                point.value = score_pooled(it->second, lexicon);
            } catch (const NoSignalError&) {
                // gap
            }
        }
        series.points.push_back(std::move(point));
    }
    return series;
}

void write_series_rows(std::ostream& out, const AffectSeries& series) {
    for (const SeriesPoint& p : series.points) {
        out << csv_field(series.channel) << ',' << format_timestamp(p.window_start);
        if (p.value) {
            for (const Dimension d : kDimensions) out << ',' << format_double(p.value->score.mean[d]);
            for (const Dimension d : kDimensions) out << ',' << format_double(p.value->sd[d]);
            out << ',' << p.value->score.matched_token_total << '\n';
        } else {
            out << ",,,,,,,0\n";
        }
    }
}

}  // namespace tvaffect
