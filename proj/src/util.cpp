#include "tvaffect/util.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace tvaffect {

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
    if (text.empty()) return std::nullopt;
    // from_chars rejects a leading '+', which some CSV writers emit.
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

namespace {

std::optional<int> parse_fixed_digits(std::string_view s) {
    int v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    using namespace std::chrono;
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    const auto y = parse_fixed_digits(text.substr(0, 4));
    const auto mo = parse_fixed_digits(text.substr(5, 2));
    const auto d = parse_fixed_digits(text.substr(8, 2));
    if (!y || !mo || !d) return std::nullopt;
    const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*mo)}, day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    Timestamp t{sys_days{ymd}};
    std::string_view rest = text.substr(10);
    if (rest.empty()) return t;

    if (rest.size() < 9 || (rest[0] != 'T' && rest[0] != ' ') || rest[3] != ':' || rest[6] != ':') {
        return std::nullopt;
    }
    const auto hh = parse_fixed_digits(rest.substr(1, 2));
    const auto mm = parse_fixed_digits(rest.substr(4, 2));
    const auto ss = parse_fixed_digits(rest.substr(7, 2));
    if (!hh || !mm || !ss || *hh > 23 || *mm > 59 || *ss > 59) return std::nullopt;
    t += hours{*hh} + minutes{*mm} + seconds{*ss};
    rest = rest.substr(9);
    if (rest.empty() || rest == "Z" || rest == "+00:00") return t;
    return std::nullopt;
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const auto dp = floor<days>(t);
    const year_month_day ymd{dp};
    const hh_mm_ss<seconds> hms{t - dp};
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()));
    return buf.data();
}

std::optional<std::chrono::seconds> parse_window_length(std::string_view text) {
    if (text.size() < 2) return std::nullopt;
    const char unit = text.back();
    const std::string_view digits = text.substr(0, text.size() - 1);
    long long n = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || n < 1) return std::nullopt;
    switch (unit) {
        case 'd':
            return std::chrono::days{n};
        case 'w':
            return std::chrono::weeks{n};
        default:
            return std::nullopt;
    }
}

Timestamp truncate_to_midnight(Timestamp t) {
    return Timestamp{std::chrono::floor<std::chrono::days>(t)};
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split(std::string_view s, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(delim, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next() { return engine_(); }

std::uint64_t Rng::uniform_index(std::uint64_t bound) {
    // threshold = 2^64 mod bound; [threshold, 2^64) holds a whole number of
    // residue cycles, so rejecting below it leaves x % bound unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    std::uint64_t x = 0;
    do {
        x = engine_();
    } while (x < threshold);
    return x % bound;
}

double Rng::uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace tvaffect
