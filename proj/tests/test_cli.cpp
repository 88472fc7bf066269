#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tvaffect/cli.hpp"

namespace tvaffect {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "tvaffect");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tvaffect_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string put(const std::string& name, const std::string& contents) {
        std::ofstream(dir_ / name, std::ios::binary) << contents;
        return (dir_ / name).string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    static std::string read(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
};

constexpr const char* kLexicon =
    "word,valence_mean,valence_sd,arousal_mean,arousal_sd,dominance_mean,dominance_sd\n"
    "joy,8.21,1.2,5.1,2.0,6.0,1.5\n"
    "fire,3.0,1.0,7.0,2.0,4.0,1.0\n"
    "calm,6.89,1.1,1.67,1.0,6.0,1.0\n";

TEST_F(CliTest, LexiconValidateSummarizes) {
    const auto r = run({"--lexicon", put("lex.csv", kLexicon), "lexicon-validate"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, 9), "3 entries");
    EXPECT_NE(r.out.find("valence [0.25, 0.9012500000000001]"), std::string::npos) << r.out;
}

TEST_F(CliTest, LexiconValidateReportsDuplicate) {
    const auto r = run({"--lexicon", put("lex.csv", std::string(kLexicon) + "JOY,5,1,5,1,5,1\n"), "lexicon-validate"});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("joy"), std::string::npos);
}

TEST_F(CliTest, MissingFileAndBadUsage) {
    EXPECT_EQ(run({"--lexicon", path("nope.csv"), "lexicon-validate"}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"lexicon-validate"}).code, 2);
}

TEST_F(CliTest, ScoreChannelsAndDocuments) {
    const auto lex = put("lex.csv", kLexicon);
    const auto corpus = put("c.jsonl",
                            R"({"id":"a","channel":"CNN","timestamp":"2013-01-01","genre":"newscast","text":"Fire fire joy"})"
                            "\n"
                            R"({"id":"b","channel":"CNN","timestamp":"2013-01-09","text":"nothing here"})"
                            "\n");
    const auto ch = run({"--lexicon", lex, "--corpus", corpus, "score"});
    EXPECT_EQ(ch.code, 0) << ch.err;
    EXPECT_EQ(ch.out.substr(0, ch.out.find('\n')),
              "channel,valence,arousal,dominance,valence_sd,arousal_sd,dominance_sd,documents,matched_tokens");
    EXPECT_NE(ch.out.find("\nCNN,"), std::string::npos);
    EXPECT_NE(ch.out.find(",2,3\n"), std::string::npos) << ch.out;

    const auto doc = run({"--lexicon", lex, "--corpus", corpus, "score", "--per-document"});
    EXPECT_EQ(doc.code, 0);
    EXPECT_NE(doc.err.find("b"), std::string::npos);
    EXPECT_NE(doc.out.find("\na,CNN,newscast,"), std::string::npos) << doc.out;
    EXPECT_EQ(doc.out.find("\nb,"), std::string::npos);

    const auto win = run({"--lexicon", lex, "--corpus", corpus, "score", "--window", "1w"});
    EXPECT_EQ(win.code, 0) << win.err;
    EXPECT_NE(win.out.find("CNN,2013-01-01T00:00:00Z,0."), std::string::npos) << win.out;
    EXPECT_NE(win.out.find("CNN,2013-01-08T00:00:00Z,,,,,,,0"), std::string::npos) << win.out;
}

TEST_F(CliTest, ScoreWithoutSignalFails) {
    const auto r = run({"--lexicon", put("lex.csv", kLexicon), "--corpus",
                        put("c.jsonl", R"({"id":"a","channel":"c","timestamp":"2013-01-01","text":"zzz"})"), "score"});
    EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, SynthAndEvaluateAreDeterministic) {
    const auto lex = path("lex.csv");
    const auto c1 = path("c1.jsonl");
    const auto c2 = path("c2.jsonl");
    ASSERT_EQ(run({"--lexicon", lex, "--out", c1, "synth", "--make-lexicon", "400"}).code, 0);
    ASSERT_EQ(run({"--lexicon", lex, "--out", c2, "synth"}).code, 0);
    EXPECT_EQ(read(c1), read(c2));

    const auto e1 = run({"--lexicon", lex, "--corpus", c1, "--out", path("r1.json"), "evaluate", "--rep", "both"});
    const auto e2 = run({"--lexicon", lex, "--corpus", c1, "--out", path("r2.json"), "evaluate", "--rep", "both"});
    ASSERT_EQ(e1.code, 0) << e1.err;
    EXPECT_EQ(e1.out, e2.out);
    EXPECT_NE(e1.out.find("vsm (multinomial) weighted average"), std::string::npos);
    EXPECT_NE(e1.out.find("meta (gaussian) weighted average"), std::string::npos);
    EXPECT_EQ(read(path("r1.json")), read(path("r2.json")));
    EXPECT_EQ(read(path("r1.csv")), read(path("r2.csv")));
    EXPECT_NE(read(path("r1.json")).find("\"folds\": 5"), std::string::npos);
    EXPECT_NE(read(path("r1.json")).find("\"seed\": 42"), std::string::npos);
}

TEST_F(CliTest, FeaturesMeta) {
    const auto r = run({"--lexicon", put("lex.csv", kLexicon), "--corpus",
                        put("c.jsonl", R"({"id":"a","channel":"c","timestamp":"2013-01-01","genre":"g","text":"joy"})"),
                        "features"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\na,0.9012500000000001,0.9012500000000001,0.9012500000000001,0,"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace tvaffect
