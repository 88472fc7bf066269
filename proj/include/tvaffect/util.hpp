#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tvaffect {

using Timestamp = std::chrono::sys_seconds;

// ASCII-only lowercasing; bytes outside [A-Z] pass through unchanged.
std::string ascii_lower(std::string_view s);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Parses the whole of `text` as a decimal number. Leading/trailing spaces are
// allowed; anything else makes the parse fail.
std::optional<double> parse_double(std::string_view text);

// Accepts `YYYY-MM-DD`, `YYYY-MM-DDTHH:MM:SS` optionally followed by `Z` or
// `+00:00`. Returns nullopt on malformed or non-UTC input.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// Always `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp t);

// `<n>d` or `<n>w` with n >= 1.
std::optional<std::chrono::seconds> parse_window_length(std::string_view text);

Timestamp truncate_to_midnight(Timestamp t);

// Quotes a CSV field when it contains a comma, quote, or line break.
std::string csv_field(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);

/// Seeded random source whose output is identical on every platform.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// derives bounded integers and reals from raw 64-bit draws itself, because the
/// standard distributions and std::shuffle are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    // Uniform in [0, bound); bound must be positive. Rejection sampling, unbiased.
    std::uint64_t uniform_index(std::uint64_t bound);

    // Uniform in [0, 1) with 53 random bits.
    double uniform_real();

    // Fisher-Yates, drawing j uniformly from [0, i] for i = n-1 .. 1.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace tvaffect
