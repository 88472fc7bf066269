#include "tvaffect/features.hpp"

#include <algorithm>
#include <ostream>

#include "tvaffect/affect.hpp"

namespace tvaffect {

const std::array<std::string, kMetaFeatureCount>& meta_feature_names() {
    static const std::array<std::string, kMetaFeatureCount> names = [] {
        std::array<std::string, kMetaFeatureCount> n;
        std::size_t i = 0;
        for (const Dimension d : kDimensions) {
            const std::string base(dimension_name(d));
            for (const char* stat : {"_min", "_max", "_mean", "_sd", "_median"}) n[i++] = base + stat;
        }
        n[i++] = "num_words";
        n[i++] = "num_unique_words";
        n[i++] = "num_unique_anew_words";
        n[i++] = "max_word_frequency";
        return n;
    }();
    return names;
}

namespace {

// Lower-middle element of the occurrence-expanded multiset: index (W-1)/2.
double weighted_median(std::vector<std::pair<double, std::uint64_t>> values) {
    std::sort(values.begin(), values.end());
    std::uint64_t total = 0;
    for (const auto& [v, w] : values) total += w;
    const std::uint64_t target = (total - 1) / 2;
    std::uint64_t seen = 0;
    for (const auto& [v, w] : values) {
        seen += w;
        if (seen > target) return v;
    }
    return values.back().first;
}

}  // namespace

MetaFeatureVector extract_meta(const Document& doc, const AffectLexicon& lexicon) {
    MetaFeatureVector meta;
    meta.num_words = doc.total_tokens;
    meta.num_unique_words = doc.term_counts.size();
    for (const auto& [term, n] : doc.term_counts) meta.max_word_frequency = std::max(meta.max_word_frequency, n);

    const auto matches = match_terms(doc.term_counts, lexicon);
    meta.num_unique_anew_words = matches.size();
    if (matches.empty()) return meta;

    // The mean comes from the same routine that scores documents.
    const AffectScore score = score_matches(matches);
    const Vad sd = weighted_sd(matches, score.mean);

    std::array<DimensionStats, 3> stats{};
    for (const Dimension d : kDimensions) {
        DimensionStats& s = stats[static_cast<std::size_t>(d)];
        std::vector<std::pair<double, std::uint64_t>> values;
        values.reserve(matches.size());
        for (const MatchedTerm& m : matches) values.emplace_back(m.entry->rating(d).mean, m.count);
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        s.min = lo->first;
        s.max = hi->first;
        s.mean = score.mean[d];
        s.sd = sd[d];
        s.median = weighted_median(std::move(values));
    }
    meta.affect = stats;
    return meta;
}

VsmVector extract_vsm(const Document& doc, const AffectLexicon& lexicon) {
    VsmVector out;
    for (const auto& [term, n] : doc.term_counts) {
        if (lexicon.contains(term)) out.emplace(term, n);
    }
    return out;
}

FeatureRow fuse(const MetaFeatureVector& meta) {
    FeatureRow row;
    row.reserve(kMetaFeatureCount);
    for (std::size_t d = 0; d < 3; ++d) {
        if (meta.affect) {
            const DimensionStats& s = (*meta.affect)[d];
            row.insert(row.end(), {s.min, s.max, s.mean, s.sd, s.median});
        } else {
            row.insert(row.end(), 5, kMissing);
        }
    }
    row.push_back(static_cast<double>(meta.num_words));
    row.push_back(static_cast<double>(meta.num_unique_words));
    row.push_back(static_cast<double>(meta.num_unique_anew_words));
    row.push_back(static_cast<double>(meta.max_word_frequency));
    return row;
}

void write_meta_header(std::ostream& out) {
    out << "id";
    for (const auto& name : meta_feature_names()) out << ',' << name;
    out << ",genre\n";
}

void write_meta_row(std::ostream& out, const Document& doc, const MetaFeatureVector& meta) {
    out << csv_field(doc.id);
    for (const double v : fuse(meta)) {
        out << ',';
        if (!is_missing(v)) out << format_double(v);
    }
    out << ',' << csv_field(doc.genre.value_or("")) << '\n';
}

void write_vsm_header(std::ostream& out) { out << "id,genre,term,count\n"; }

void write_vsm_rows(std::ostream& out, const Document& doc, const VsmVector& vsm) {
    for (const auto& [term, n] : vsm) {
        out << csv_field(doc.id) << ',' << csv_field(doc.genre.value_or("")) << ',' << csv_field(term) << ',' << n
            << '\n';
    }
}

}  // namespace tvaffect
