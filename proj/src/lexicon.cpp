#include "tvaffect/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "tvaffect/util.hpp"

namespace tvaffect {

std::string_view dimension_name(Dimension d) {
    switch (d) {
        case Dimension::valence:
            return "valence";
        case Dimension::arousal:
            return "arousal";
        case Dimension::dominance:
            return "dominance";
    }
    return "unknown";
}

double& Vad::operator[](Dimension d) {
    switch (d) {
        case Dimension::arousal:
            return arousal;
        case Dimension::dominance:
            return dominance;
        default:
            return valence;
    }
}

double Vad::operator[](Dimension d) const {
    return const_cast<Vad&>(*this)[d];
}

const RatingStat& AffectEntry::rating(Dimension d) const {
    switch (d) {
        case Dimension::arousal:
            return arousal;
        case Dimension::dominance:
            return dominance;
        default:
            return valence;
    }
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

double normalize_rating(double raw) {
    if (!(raw >= 1.0 && raw <= 9.0)) {
        throw std::domain_error("rating " + format_double(raw) + " outside the [1, 9] scale");
    }
    return (raw - 1.0) / 8.0;
}

double denormalize_rating(double normalized) { return normalized * 8.0 + 1.0; }

namespace {

bool has_whitespace(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

void validate_entry(const AffectEntry& e) {
    if (e.word.empty()) throw std::invalid_argument("lexicon word is empty");
    if (has_whitespace(e.word)) throw std::invalid_argument("lexicon word '" + e.word + "' contains whitespace");
    if (ascii_lower(e.word) != e.word) throw std::invalid_argument("lexicon word '" + e.word + "' is not lowercase");
    for (const Dimension d : kDimensions) {
        const RatingStat& r = e.rating(d);
        if (!(r.mean >= 0.0 && r.mean <= 1.0)) {
            throw std::invalid_argument("word '" + e.word + "': " + std::string(dimension_name(d)) +
                                        " mean " + format_double(r.mean) + " outside [0, 1]");
        }
        if (!(r.sd >= 0.0) || !std::isfinite(r.sd)) {
            throw std::invalid_argument("word '" + e.word + "': " + std::string(dimension_name(d)) +
                                        " sd " + format_double(r.sd) + " is negative or not finite");
        }
    }
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

bool is_blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

AffectLexicon::AffectLexicon(std::vector<AffectEntry> entries) {
    for (auto& e : entries) {
        validate_entry(e);
        std::string key = e.word;
        auto [it, inserted] = entries_.emplace(std::move(key), std::move(e));
        if (!inserted) throw std::invalid_argument("duplicate lexicon word '" + it->first + "'");
    }
}

const AffectEntry* AffectLexicon::lookup(std::string_view token) const {
    const auto it = entries_.find(ascii_lower(token));
    return it == entries_.end() ? nullptr : &it->second;
}

AffectLexicon parse_lexicon(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (!saw_header && std::getline(in, line)) {
        ++line_no;
        const auto view = strip_cr(line);
        if (is_blank(view)) continue;
        std::string_view header = view;
        // UTF-8 byte order mark
        if (header.substr(0, 3) == "\xEF\xBB\xBF") header.remove_prefix(3);
        if (header != kLexiconHeader) {
            throw ParseError(line_no, "expected header '" + std::string(kLexiconHeader) + "'");
        }
        saw_header = true;
    }
    if (!saw_header) throw ParseError(0, "lexicon is empty");

    std::vector<AffectEntry> entries;
    std::unordered_map<std::string, std::size_t> first_line;
    while (std::getline(in, line)) {
        ++line_no;
        const auto view = strip_cr(line);
        if (is_blank(view)) continue;
        const auto cols = split(view, ',');
        if (cols.size() != 7) {
            throw ParseError(line_no, "expected 7 columns, found " + std::to_string(cols.size()));
        }
        AffectEntry e;
        e.word = ascii_lower(cols[0]);
        if (e.word.empty() || has_whitespace(e.word)) {
            throw ParseError(line_no, "word '" + cols[0] + "' is empty or contains whitespace");
        }
        std::array<double, 6> raw{};
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const auto v = parse_double(cols[i + 1]);
            if (!v) throw ParseError(line_no, "non-numeric rating '" + cols[i + 1] + "'");
            raw[i] = *v;
        }
        RatingStat* stats[] = {&e.valence, &e.arousal, &e.dominance};
        for (std::size_t d = 0; d < 3; ++d) {
            try {
                stats[d]->mean = normalize_rating(raw[2 * d]);
            } catch (const std::domain_error& err) {
                throw ParseError(line_no, err.what());
            }
            const double sd = raw[2 * d + 1];
            if (sd < 0.0) throw ParseError(line_no, "negative standard deviation " + format_double(sd));
            stats[d]->sd = sd / 8.0;
        }
        const auto [it, inserted] = first_line.emplace(e.word, line_no);
        if (!inserted) {
            throw ParseError(line_no, "duplicate word '" + e.word + "' (first seen on line " +
                                          std::to_string(it->second) + ", again on line " +
                                          std::to_string(line_no) + ")");
        }
        entries.push_back(std::move(e));
    }
    if (entries.empty()) throw ParseError(0, "lexicon has a header but no entries");
    return AffectLexicon(std::move(entries));
}

AffectLexicon load_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file '" + path.string() + "'");
    return parse_lexicon(in);
}

void serialize_lexicon(std::ostream& out, const AffectLexicon& lexicon) {
    out << kLexiconHeader << '\n';
    for (const auto& [word, e] : lexicon.entries()) {
        out << word;
        for (const Dimension d : kDimensions) {
            const RatingStat& r = e.rating(d);
            out << ',' << format_double(denormalize_rating(r.mean)) << ',' << format_double(r.sd * 8.0);
        }
        out << '\n';
    }
}

}  // namespace tvaffect
