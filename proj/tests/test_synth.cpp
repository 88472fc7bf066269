#include <gtest/gtest.h>

#include "tvaffect/affect.hpp"
#include "tvaffect/synth.hpp"

namespace tvaffect {
namespace {

GenreProfile profile(std::string label, std::size_t n, double valence) {
    GenreProfile p;
    p.label = std::move(label);
    p.document_count = n;
    p.vocabulary_bias = 0.8;
    p.target = {valence, 0.5, 0.5};
    return p;
}

TEST(Generate, CountsLabelsAndStamps) {
    const auto lex = generate_lexicon(300, 1);
    const std::vector<GenreProfile> ps{profile("x", 5, 0.5)};
    const auto c = generate(ps, lex, SynthOptions{});
    ASSERT_EQ(c.size(), 5u);
    for (std::size_t j = 0; j < 5; ++j) {
        const auto& d = c.documents()[j];
        EXPECT_EQ(d.genre, "x");
        EXPECT_EQ(d.channel, "x");
        EXPECT_GE(d.total_tokens, 100u);
        EXPECT_LE(d.total_tokens, 300u);
        EXPECT_EQ(*d.timestamp, SynthOptions{}.start + std::chrono::weeks{static_cast<long>(j)});
    }
}

TEST(Generate, TargetsOrderScores) {
    const auto lex = generate_lexicon(400, 2);
    const std::vector<GenreProfile> ps{profile("low", 20, 0.2), profile("high", 20, 0.8)};
    const auto c = generate(ps, lex, SynthOptions{});
    EXPECT_LT(score_channel(c, "low", lex).score.mean.valence, score_channel(c, "high", lex).score.mean.valence);
}

TEST(Generate, Deterministic) {
    const auto lex = generate_lexicon(200, 3);
    const auto ps = genre_benchmark_profiles();
    SynthOptions o;
    o.seed = 77;
    EXPECT_EQ(generate(ps, lex, o), generate(ps, lex, o));
    EXPECT_EQ(generate_lexicon(200, 3), lex);
    o.seed = 78;
    EXPECT_NE(generate(ps, lex, o), generate(ps, lex, SynthOptions{}));
}

TEST(Generate, EmptyBandNamesProfile) {
    const AffectLexicon lex({AffectEntry{"mid", {0.5, 0.1}, {0.5, 0.1}, {0.5, 0.1}}});
    const std::vector<GenreProfile> ps{profile("edge", 3, 0.9)};
    try {
        generate(ps, lex, SynthOptions{});
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("edge"), std::string::npos);
    }
}

TEST(Presets, Sizes) {
    std::size_t total = 0;
    for (const auto& p : genre_benchmark_profiles()) total += p.document_count;
    EXPECT_EQ(total, 343u);
    EXPECT_EQ(channel_profiles().size(), 6u);
}

TEST(ParseProfiles, DefaultsAndValidation) {
    const auto ps = parse_profiles_json(R"([{"label":"a","count":3,"valence":0.2},{"label":"b","channel":"B1"}])");
    ASSERT_EQ(ps.size(), 2u);
    EXPECT_EQ(ps[0].channel, "a");
    EXPECT_EQ(ps[0].document_count, 3u);
    EXPECT_EQ(ps[1].channel, "B1");
    EXPECT_THROW(parse_profiles_json(R"([{"label":"a","valence":1.5}])"), std::invalid_argument);
    EXPECT_THROW(parse_profiles_json(R"({"label":"a"})"), std::invalid_argument);
}

TEST(GenerateLexicon, ValuesOnTwoDecimalGrid) {
    const auto lex = generate_lexicon(100, 4);
    EXPECT_EQ(lex.size(), 100u);
    for (const auto& [w, e] : lex.entries()) {
        const double raw = denormalize_rating(e.valence.mean);
        EXPECT_NEAR(raw * 100.0, std::round(raw * 100.0), 1e-6) << w;
        EXPECT_GE(raw, 1.0);
        EXPECT_LE(raw, 9.0);
    }
}

}  // namespace
}  // namespace tvaffect
