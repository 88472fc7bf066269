#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvaffect/corpus.hpp"
#include "tvaffect/lexicon.hpp"

namespace tvaffect {

struct FoldAssignment {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    // fold[i] is the fold of instance i, in [0, k).
    std::vector<std::size_t> fold;

    friend bool operator==(const FoldAssignment&, const FoldAssignment&) = default;
};

/// Stratified k-fold split. Classes are visited in sorted label order; each
/// class's instance indices are shuffled with a seeded Rng and dealt
/// round-robin, the deal continuing across classes from fold 0. Per-class
/// fold sizes therefore differ by at most one, and so do overall fold sizes.
/// Throws std::invalid_argument when k < 2 or k exceeds the number of labels.
FoldAssignment stratified_folds(std::span<const std::string> labels, std::size_t k, std::uint64_t seed);

/// Mann-Whitney AUC: the fraction of (positive, negative) pairs where the
/// positive scores higher, ties counting one half. Throws
/// std::invalid_argument unless both classes are present.
double auc_one_vs_rest(std::span<const double> scores, const std::vector<bool>& is_positive);

struct ConfusionResult {
    std::vector<std::string> class_order;
    // matrix[true][predicted]
    std::vector<std::vector<std::uint64_t>> matrix;
    // One-vs-rest rates; NaN when the denominator is zero.
    std::vector<double> tp_rate;
    std::vector<double> fp_rate;
};

ConfusionResult confusion_and_rates(std::span<const std::string> truth, std::span<const std::string> predicted,
                                    std::span<const std::string> class_order);

enum class Representation { vsm, meta };
enum class NbVariant { gaussian, multinomial };

std::string_view to_string(Representation r);
std::string_view to_string(NbVariant v);

struct EvalConfig {
    Representation representation = Representation::vsm;
    NbVariant nb = NbVariant::multinomial;
    std::size_t k = 5;
    std::uint64_t seed = 42;
    // Smoothing for the multinomial variant; ignored otherwise.
    double alpha = 1.0;

    friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

struct ClassMetrics {
    std::string label;
    std::size_t support = 0;
    double tp_rate = 0.0;
    double fp_rate = 0.0;
    double auc = 0.0;
};

struct EvalReport {
    EvalConfig config;
    std::size_t instance_count = 0;
    std::vector<ClassMetrics> classes;  // canonical label order
    std::vector<std::vector<std::uint64_t>> confusion;
    double weighted_tp_rate = 0.0;
    double weighted_fp_rate = 0.0;
    double weighted_auc = 0.0;
    // Variance floor of each fold's Gaussian model; empty for multinomial runs.
    std::vector<double> fold_variance_floors;
};

/// Stratified k-fold cross-validation of naive Bayes on the labeled documents
/// of `corpus`. Each fold trains on the remaining folds only (the VSM
/// vocabulary included); metrics are computed once over the pooled held-out
/// predictions, AUC from the pooled posteriors, averages weighted by support.
/// The meta representation always uses the Gaussian variant.
/// Throws std::invalid_argument when a class has fewer than k documents
/// (naming it), when fewer than two classes remain, or for meta + multinomial.
EvalReport run_cv(const Corpus& corpus, const AffectLexicon& lexicon, const EvalConfig& config);

std::string report_to_json(std::span<const EvalReport> reports);

// Rows are class labels then `weighted_average`; each report adds
// `<rep>_tp,<rep>_fp,<rep>_auc` columns. All reports must share class labels.
void write_table_csv(std::ostream& out, std::span<const EvalReport> reports);

}  // namespace tvaffect
