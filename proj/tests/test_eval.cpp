#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "oracles.hpp"
#include "tvaffect/eval.hpp"

namespace tvaffect {
namespace {

std::vector<std::string> labels(std::initializer_list<const char*> xs) { return {xs.begin(), xs.end()}; }

std::vector<std::size_t> fold_sizes(const FoldAssignment& f) {
    std::vector<std::size_t> sizes(f.k, 0);
    for (std::size_t x : f.fold) ++sizes[x];
    return sizes;
}

TEST(StratifiedFolds, SixAFourBInFiveFolds) {
    const auto ys = labels({"A", "A", "A", "A", "A", "A", "B", "B", "B", "B"});
    const auto f = stratified_folds(ys, 5, 42);
    EXPECT_EQ(fold_sizes(f), (std::vector<std::size_t>(5, 2)));
    std::vector<std::size_t> a(5, 0);
    for (std::size_t i = 0; i < 6; ++i) ++a[f.fold[i]];
    for (std::size_t n : a) {
        EXPECT_GE(n, 1u);
        EXPECT_LE(n, 2u);
    }
}

TEST(StratifiedFolds, LeaveOneOut) {
    const auto ys = labels({"A", "B", "A", "B"});
    const auto f = stratified_folds(ys, 4, 1);
    EXPECT_EQ(fold_sizes(f), (std::vector<std::size_t>(4, 1)));
}

TEST(StratifiedFolds, SeedDeterminism) {
    std::vector<std::string> ys;
    for (int i = 0; i < 40; ++i) ys.push_back(i % 3 ? "x" : "y");
    EXPECT_EQ(stratified_folds(ys, 5, 3), stratified_folds(ys, 5, 3));
    EXPECT_NE(stratified_folds(ys, 5, 3).fold, stratified_folds(ys, 5, 4).fold);
}

TEST(StratifiedFolds, RejectsBadK) {
    const auto ys = labels({"A", "B", "A"});
    EXPECT_THROW(stratified_folds(ys, 1, 0), std::invalid_argument);
    EXPECT_THROW(stratified_folds(ys, 4, 0), std::invalid_argument);
}

TEST(StratifiedFoldsProperty, BalancedPerClass) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t classes = 2 + rng.uniform_index(5);
        const std::size_t n = 20 + rng.uniform_index(200);
        const std::size_t k = 2 + rng.uniform_index(9);
        std::vector<std::string> ys;
        for (std::size_t i = 0; i < n; ++i) ys.push_back("c" + std::to_string(rng.uniform_index(classes)));
        const auto f = stratified_folds(ys, k, trial);
        ASSERT_EQ(f.fold.size(), n);
        std::map<std::string, std::vector<std::size_t>> per;
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_LT(f.fold[i], k);
            per[ys[i]].resize(k);
            ++per[ys[i]][f.fold[i]];
        }
        for (const auto& [c, sizes] : per) {
            ASSERT_LE(*std::max_element(sizes.begin(), sizes.end()) - *std::min_element(sizes.begin(), sizes.end()), 1u);
        }
        const auto all = fold_sizes(f);
        ASSERT_LE(*std::max_element(all.begin(), all.end()) - *std::min_element(all.begin(), all.end()), 1u);
    }
}

TEST(Auc, HandCases) {
    const double s1[] = {0.9, 0.4, 0.6, 0.2};
    EXPECT_EQ(auc_one_vs_rest(s1, {true, true, false, false}), 0.75);
    const double s2[] = {0.9, 0.8, 0.1};
    EXPECT_EQ(auc_one_vs_rest(s2, {true, true, false}), 1.0);
    const double s3[] = {0.5, 0.5, 0.5, 0.5};
    EXPECT_EQ(auc_one_vs_rest(s3, {true, false, true, false}), 0.5);
    EXPECT_EQ(auc_one_vs_rest(s2, {false, false, true}), 0.0);
    EXPECT_THROW(auc_one_vs_rest(s2, {true, true, true}), std::invalid_argument);
}

TEST(AucProperty, AgreesWithPairsAndTrapezoid) {
    Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(60);
        std::vector<double> scores;
        std::vector<bool> pos;
        for (std::size_t i = 0; i < n; ++i) {
            scores.push_back(static_cast<double>(rng.uniform_index(8)) / 8.0);
            pos.push_back(rng.uniform_index(2) == 1);
        }
        pos[0] = true;
        pos[1] = false;
        const double got = auc_one_vs_rest(scores, pos);
        ASSERT_NEAR(got, oracle::pairwise_auc(scores, pos), 1e-12);
        ASSERT_NEAR(got, oracle::trapezoid_auc(scores, pos), 1e-12);
        std::vector<double> shifted;
        for (double s : scores) shifted.push_back(3.0 * s + 1.0);
        ASSERT_NEAR(auc_one_vs_rest(shifted, pos), got, 1e-12);
    }
}

TEST(Confusion, RatesFromCounts) {
    const auto truth = labels({"A", "A", "B", "B"});
    const auto pred = labels({"A", "B", "B", "B"});
    const auto order = labels({"A", "B"});
    const auto r = confusion_and_rates(truth, pred, order);
    EXPECT_EQ(r.matrix, (std::vector<std::vector<std::uint64_t>>{{1, 1}, {0, 2}}));
    EXPECT_EQ(r.tp_rate[0], 0.5);
    EXPECT_EQ(r.fp_rate[0], 0.0);
    EXPECT_EQ(r.tp_rate[1], 1.0);
    EXPECT_EQ(r.fp_rate[1], 0.5);
}

TEST(Confusion, PerfectAndConstantPredictors) {
    const auto truth = labels({"A", "B", "C", "A"});
    const auto order = labels({"A", "B", "C"});
    const auto perfect = confusion_and_rates(truth, truth, order);
    for (std::size_t c = 0; c < 3; ++c) {
        EXPECT_EQ(perfect.tp_rate[c], 1.0);
        EXPECT_EQ(perfect.fp_rate[c], 0.0);
    }
    const auto all_a = confusion_and_rates(truth, labels({"A", "A", "A", "A"}), order);
    EXPECT_EQ(all_a.tp_rate[0], 1.0);
    EXPECT_EQ(all_a.fp_rate[0], 1.0);
    EXPECT_EQ(all_a.tp_rate[1], 0.0);
    EXPECT_EQ(all_a.fp_rate[1], 0.0);
    EXPECT_THROW(confusion_and_rates(truth, labels({"A", "A", "A", "Z"}), order), std::invalid_argument);
}

TEST(Confusion, OnlyOneClassPresentGivesNanFpRate) {
    const auto truth = labels({"A", "A"});
    const auto order = labels({"A", "B"});
    const auto r = confusion_and_rates(truth, truth, order);
    EXPECT_TRUE(std::isnan(r.fp_rate[0]));
    EXPECT_TRUE(std::isnan(r.tp_rate[1]));
}

AffectEntry entry(std::string word, double v) { return AffectEntry{std::move(word), {v, 0.1}, {0.5, 0.1}, {0.5, 0.1}}; }

Corpus separable(std::size_t per_class, bool swap_labels = false) {
    std::vector<Document> docs;
    for (std::size_t i = 0; i < per_class; ++i) {
        const std::string a = swap_labels ? "up" : "down";
        const std::string b = swap_labels ? "down" : "up";
        TermCounts low{{"grim", 5 + i % 3}, {"bleak", 2 + i % 2}};
        TermCounts high{{"sunny", 5 + i % 4}, {"bright", 3}};
        if (i % 2) {
            low["bright"] = 1;
            high["bleak"] = 1;
        }
        docs.push_back(make_document("a" + std::to_string(i), "ch", a, std::nullopt, low));
        docs.push_back(make_document("b" + std::to_string(i), "ch", b, std::nullopt, high));
    }
    return Corpus(std::move(docs));
}

const AffectLexicon& sep_lexicon() {
    static const AffectLexicon lex({entry("grim", 0.1), entry("bleak", 0.2), entry("bright", 0.8), entry("sunny", 0.9)});
    return lex;
}

TEST(RunCv, SeparableCorpusIsPerfect) {
    for (const auto& cfg : {EvalConfig{}, EvalConfig{Representation::meta, NbVariant::gaussian},
                            EvalConfig{Representation::vsm, NbVariant::gaussian}}) {
        const auto r = run_cv(separable(10), sep_lexicon(), cfg);
        EXPECT_EQ(r.instance_count, 20u);
        EXPECT_EQ(r.weighted_auc, 1.0) << to_string(cfg.representation);
        EXPECT_EQ(r.weighted_tp_rate, 1.0);
        EXPECT_EQ(r.weighted_fp_rate, 0.0);
        EXPECT_EQ(r.fold_variance_floors.size(), cfg.nb == NbVariant::gaussian ? 5u : 0u);
    }
}

TEST(RunCv, RelabelingPermutesOnly) {
    const auto a = run_cv(separable(10), sep_lexicon(), EvalConfig{});
    const auto b = run_cv(separable(10, true), sep_lexicon(), EvalConfig{});
    EXPECT_EQ(a.weighted_auc, b.weighted_auc);
    EXPECT_EQ(a.weighted_tp_rate, b.weighted_tp_rate);
}

TEST(RunCv, Determinism) {
    const auto c = separable(12);
    const std::vector<EvalReport> a{run_cv(c, sep_lexicon(), EvalConfig{})};
    const std::vector<EvalReport> b{run_cv(c, sep_lexicon(), EvalConfig{})};
    EXPECT_EQ(report_to_json(a), report_to_json(b));
}

TEST(RunCv, RejectsThinClassesAndBadVariant) {
    try {
        run_cv(separable(3), sep_lexicon(), EvalConfig{});
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("down"), std::string::npos);
    }
    EXPECT_THROW(run_cv(separable(10), sep_lexicon(), EvalConfig{Representation::meta, NbVariant::multinomial}),
                 std::invalid_argument);
}

TEST(Report, JsonAndCsvShape) {
    const std::vector<EvalReport> reports{
        run_cv(separable(10), sep_lexicon(), EvalConfig{}),
        run_cv(separable(10), sep_lexicon(), EvalConfig{Representation::meta, NbVariant::gaussian})};
    const auto j = nlohmann::json::parse(report_to_json(reports));
    EXPECT_EQ(j["format"], "tvaffect-eval-report");
    EXPECT_EQ(j["reports"].size(), 2u);
    EXPECT_EQ(j["reports"][0]["config"]["folds"], 5);
    EXPECT_EQ(j["reports"][0]["config"]["seed"], 42);
    EXPECT_EQ(j["reports"][1]["config"]["naive_bayes"], "gaussian");

    std::ostringstream csv;
    write_table_csv(csv, reports);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "genre,vsm_tp,vsm_fp,vsm_auc,meta_tp,meta_fp,meta_auc");
    EXPECT_NE(csv.str().find("\nweighted_average,1,0,1,1,0,1\n"), std::string::npos);
}

}  // namespace
}  // namespace tvaffect
