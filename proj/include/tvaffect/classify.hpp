#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvaffect/features.hpp"

namespace tvaffect {

/// Class probabilities in canonical (sorted) label order.
struct Posterior {
    std::vector<std::string> labels;
    std::vector<double> probabilities;

    // Index of the largest probability; the earliest label wins ties.
    std::size_t predicted_index() const;
    const std::string& predicted_label() const { return labels[predicted_index()]; }
    double probability_of(std::string_view label) const;

    friend bool operator==(const Posterior&, const Posterior&) = default;
};

// Normalizes log scores with log-sum-exp.
Posterior posterior_from_log_scores(std::vector<std::string> labels, std::span<const double> log_scores);

struct GaussianParams {
    double mean = 0.0;
    double variance = 0.0;
    // False when the class had no non-missing training value for the feature.
    bool usable = false;

    friend bool operator==(const GaussianParams&, const GaussianParams&) = default;
};

struct GaussianNbModel {
    std::vector<std::string> class_labels;
    std::vector<double> log_priors;
    // params[class][feature]
    std::vector<std::vector<GaussianParams>> params;
    double variance_floor = 0.0;

    std::size_t feature_count() const { return params.empty() ? 0 : params.front().size(); }

    friend bool operator==(const GaussianNbModel&, const GaussianNbModel&) = default;
};

/// Fits per-class Gaussian likelihoods over the non-missing values of each
/// feature (population variance). Variances are floored at
/// 1e-9 * (largest overall feature variance), or 1e-9 when every feature is
/// constant. Throws std::invalid_argument for mismatched inputs, ragged rows,
/// or fewer than two distinct labels.
GaussianNbModel train_gaussian(std::span<const FeatureRow> instances, std::span<const std::string> labels);

// Missing features and unusable (class, feature) pairs contribute no term.
// Throws std::invalid_argument on an arity mismatch.
Posterior predict_gaussian(const GaussianNbModel& model, std::span<const double> instance);

struct MultinomialNbModel {
    std::vector<std::string> class_labels;
    std::vector<double> log_priors;
    double alpha = 1.0;
    // Sorted terms seen in training.
    std::vector<std::string> vocabulary;
    // log_probs[class][term index]
    std::vector<std::vector<double>> log_probs;

    friend bool operator==(const MultinomialNbModel&, const MultinomialNbModel&) = default;
};

/// P(t|c) = (count(t, c) + alpha) / (total(c) + alpha * |V|) with V the
/// training vocabulary. Throws std::invalid_argument for alpha <= 0, fewer than
/// two labels, or an empty vocabulary.
MultinomialNbModel train_multinomial(std::span<const VsmVector> instances, std::span<const std::string> labels,
                                     double alpha = 1.0);

// Terms outside the training vocabulary are ignored.
Posterior predict_multinomial(const MultinomialNbModel& model, const VsmVector& instance);

// Gaussian NB over term counts, one dense feature per training-vocabulary term.
struct VsmGaussianModel {
    std::vector<std::string> vocabulary;
    GaussianNbModel model;

    friend bool operator==(const VsmGaussianModel&, const VsmGaussianModel&) = default;
};

FeatureRow densify(const VsmVector& vsm, std::span<const std::string> vocabulary);

VsmGaussianModel train_vsm_gaussian(std::span<const VsmVector> instances, std::span<const std::string> labels);
Posterior predict_vsm_gaussian(const VsmGaussianModel& model, const VsmVector& instance);

// Versioned JSON documents. Doubles are written in shortest round-trip form,
// so a reloaded model predicts bit-identically on the same platform.
std::string model_to_json(const GaussianNbModel& model);
std::string model_to_json(const MultinomialNbModel& model);
GaussianNbModel gaussian_model_from_json(std::string_view text);
MultinomialNbModel multinomial_model_from_json(std::string_view text);

}  // namespace tvaffect
