#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvaffect/corpus.hpp"
#include "tvaffect/lexicon.hpp"

namespace tvaffect {

struct GenreProfile {
    std::string label;
    // Channel stamped on the generated documents; defaults to the label.
    std::string channel;
    std::size_t document_count = 1;
    // Probability that a token comes from the genre's valence band rather
    // than the shared background pool.
    double vocabulary_bias = 0.5;
    // Only the valence target steers sampling; arousal and dominance follow
    // whatever the sampled words carry.
    Vad target{0.5, 0.5, 0.5};
    std::size_t tokens_min = 100;
    std::size_t tokens_max = 300;
};

struct SynthOptions {
    std::uint64_t seed = 42;
    // Document j of every profile is stamped start + j * spacing.
    Timestamp start{std::chrono::sys_days{std::chrono::year{2013} / 1 / 1}};
    std::chrono::seconds spacing = std::chrono::weeks{1};
};

inline constexpr double kValenceBand = 0.1;

/// Generates a labeled corpus. Each document draws its length uniformly from
/// the profile's token range; every token comes, with probability
/// vocabulary_bias, from lexicon words whose valence lies within 0.1 of the
/// target, otherwise from a background pool (the whole lexicon plus filler
/// words absent from it). Identical inputs give an identical corpus.
/// Throws std::invalid_argument for empty inputs, invalid profiles, or a
/// profile whose valence band holds no lexicon word (naming the profile).
Corpus generate(std::span<const GenreProfile> profiles, const AffectLexicon& lexicon, const SynthOptions& options);

// Pseudo-word lexicon with raw ratings rounded to two decimals, spread over
// the full 1..9 valence scale.
AffectLexicon generate_lexicon(std::size_t size, std::uint64_t seed);

// Five genres sized animated 120, documentary 65, horror 24, newscast 41 and
// reality 93 (343 documents), with valence targets 0.7, 0.5, 0.1, 0.3, 0.9.
std::vector<GenreProfile> genre_benchmark_profiles();

// Three low-valence news channels and three high-valence entertainment
// channels, 52 weekly documents each.
std::vector<GenreProfile> channel_profiles();

// JSON array of objects with keys label, channel, count, bias, valence,
// arousal, dominance, tokens_min, tokens_max (all but label optional).
std::vector<GenreProfile> parse_profiles_json(std::string_view text);

}  // namespace tvaffect
