#include "tvaffect/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace tvaffect {

namespace {

constexpr std::array<const char*, 40> kFillerWords = {
    "the", "a",    "an",   "and",  "of",   "to",   "in",    "is",   "it",   "that",
    "was", "for",  "on",   "are",  "with", "as",   "i",     "his",  "they", "be",
    "at",  "one",  "have", "this", "from", "or",   "had",   "by",   "but",  "what",
    "we",  "can",  "out",  "were", "all",  "there", "when", "your", "how",  "said"};

void validate(const GenreProfile& p) {
    const auto fail = [&](const std::string& what) {
        throw std::invalid_argument("profile '" + p.label + "': " + what);
    };
    if (p.label.empty()) throw std::invalid_argument("profile label is empty");
    if (p.document_count < 1) fail("document_count must be at least 1");
    if (!(p.vocabulary_bias >= 0.0 && p.vocabulary_bias <= 1.0)) fail("vocabulary_bias must lie in [0, 1]");
    for (const Dimension d : kDimensions) {
        if (!(p.target[d] >= 0.0 && p.target[d] <= 1.0)) fail(std::string(dimension_name(d)) + " target outside [0, 1]");
    }
    if (p.tokens_min < 1 || p.tokens_max < p.tokens_min) fail("token range must satisfy 1 <= min <= max");
}

std::string document_id(const GenreProfile& p, std::size_t profile_index, std::size_t j) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "-%zu-%05zu", profile_index, j);
    return p.label + buf.data();
}

}  // namespace

Corpus generate(std::span<const GenreProfile> profiles, const AffectLexicon& lexicon, const SynthOptions& options) {
    if (profiles.empty()) throw std::invalid_argument("no genre profiles given");
    if (lexicon.empty()) throw std::invalid_argument("lexicon is empty");

    std::vector<std::string> background;
    for (const auto& [word, e] : lexicon.entries()) background.push_back(word);
    for (const char* w : kFillerWords) {
        if (!lexicon.contains(w)) background.emplace_back(w);
    }

    std::vector<std::vector<std::string>> pools;
    for (const GenreProfile& p : profiles) {
        validate(p);
        std::vector<std::string> pool;
        for (const auto& [word, e] : lexicon.entries()) {
            // Tolerance absorbs rounding in values like 0.3 + 0.1.
            if (std::abs(e.valence.mean - p.target.valence) <= kValenceBand + 1e-12) pool.push_back(word);
        }
        if (pool.empty()) {
            throw std::invalid_argument("profile '" + p.label + "': no lexicon word has valence within 0.1 of " +
                                        format_double(p.target.valence));
        }
        pools.push_back(std::move(pool));
    }

    Rng rng(options.seed);
    std::vector<Document> docs;
    for (std::size_t pi = 0; pi < profiles.size(); ++pi) {
        const GenreProfile& p = profiles[pi];
        const auto& pool = pools[pi];
        for (std::size_t j = 0; j < p.document_count; ++j) {
            const std::size_t length = p.tokens_min + rng.uniform_index(p.tokens_max - p.tokens_min + 1);
            TermCounts counts;
            for (std::size_t t = 0; t < length; ++t) {
                const bool from_genre = rng.uniform_real() < p.vocabulary_bias;
                const auto& source = from_genre ? pool : background;
                ++counts[source[rng.uniform_index(source.size())]];
            }
            const Timestamp stamp = options.start + static_cast<std::int64_t>(j) * options.spacing;
            docs.push_back(make_document(document_id(p, pi, j), p.channel.empty() ? p.label : p.channel, p.label,
                                         stamp, std::move(counts)));
        }
    }
    return Corpus(std::move(docs));
}

AffectLexicon generate_lexicon(std::size_t size, std::uint64_t seed) {
    static constexpr std::array<char, 15> kConsonants = {'b', 'd', 'f', 'g', 'k', 'l', 'm', 'n',
                                                         'p', 'r', 's', 't', 'v', 'z', 'h'};
    static constexpr std::array<char, 5> kVowels = {'a', 'e', 'i', 'o', 'u'};
    Rng rng(seed);
    const auto round2 = [](double x) { return std::round(x * 100.0) / 100.0; };

    std::set<std::string> used(std::begin(kFillerWords), std::end(kFillerWords));
    std::vector<AffectEntry> entries;
    entries.reserve(size);
    while (entries.size() < size) {
        const std::size_t syllables = 2 + rng.uniform_index(3);
        std::string word;
        for (std::size_t s = 0; s < syllables; ++s) {
            word += kConsonants[rng.uniform_index(kConsonants.size())];
            word += kVowels[rng.uniform_index(kVowels.size())];
        }
        if (!used.insert(word).second) continue;

        const double valence = round2(1.0 + 8.0 * rng.uniform_real());
        const double arousal = round2(2.0 + 6.0 * rng.uniform_real());
        // Dominance tracks valence loosely, as in human-rated norms.
        const double dominance = round2(std::clamp(5.0 + 0.6 * (valence - 5.0) + 2.0 * (rng.uniform_real() - 0.5), 1.0, 9.0));
        AffectEntry e;
        e.word = word;
        e.valence = {normalize_rating(valence), round2(0.8 + 1.8 * rng.uniform_real()) / 8.0};
        e.arousal = {normalize_rating(arousal), round2(1.5 + 1.5 * rng.uniform_real()) / 8.0};
        e.dominance = {normalize_rating(dominance), round2(1.5 + 1.5 * rng.uniform_real()) / 8.0};
        entries.push_back(std::move(e));
    }
    return AffectLexicon(std::move(entries));
}

std::vector<GenreProfile> genre_benchmark_profiles() {
    const auto make = [](std::string label, std::size_t count, double valence) {
        GenreProfile p;
        p.label = label;
        p.channel = std::move(label);
        p.document_count = count;
        p.vocabulary_bias = 0.6;
        p.target = {valence, 0.5, 0.5};
        p.tokens_min = 150;
        p.tokens_max = 400;
        return p;
    };
    return {make("animated", 120, 0.7), make("documentary", 65, 0.5), make("horror", 24, 0.1),
            make("newscast", 41, 0.3), make("reality", 93, 0.9)};
}

std::vector<GenreProfile> channel_profiles() {
    std::vector<GenreProfile> out;
    const auto add = [&](const char* channel, const char* genre, double valence) {
        GenreProfile p;
        p.label = genre;
        p.channel = channel;
        p.document_count = 52;
        p.vocabulary_bias = 0.5;
        p.target = {valence, 0.5, 0.5};
        p.tokens_min = 300;
        p.tokens_max = 600;
        out.push_back(std::move(p));
    };
    add("news-1", "newscast", 0.3);
    add("news-2", "newscast", 0.3);
    add("news-3", "newscast", 0.3);
    add("entertainment-1", "reality", 0.7);
    add("entertainment-2", "reality", 0.7);
    add("entertainment-3", "reality", 0.7);
    return out;
}

std::vector<GenreProfile> parse_profiles_json(std::string_view text) {
    using nlohmann::json;
    const json j = json::parse(text);
    if (!j.is_array()) throw std::invalid_argument("profiles document must be a JSON array");
    std::vector<GenreProfile> out;
    for (const json& o : j) {
        GenreProfile p;
        p.label = o.at("label").get<std::string>();
        p.channel = o.value("channel", p.label);
        p.document_count = o.value("count", p.document_count);
        p.vocabulary_bias = o.value("bias", p.vocabulary_bias);
        p.target.valence = o.value("valence", p.target.valence);
        p.target.arousal = o.value("arousal", p.target.arousal);
        p.target.dominance = o.value("dominance", p.target.dominance);
        p.tokens_min = o.value("tokens_min", p.tokens_min);
        p.tokens_max = o.value("tokens_max", p.tokens_max);
        validate(p);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace tvaffect
