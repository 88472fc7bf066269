#include "tvaffect/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace tvaffect {

using nlohmann::json;

std::size_t Posterior::predicted_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < probabilities.size(); ++i) {
        if (probabilities[i] > probabilities[best]) best = i;
    }
    return best;
}

double Posterior::probability_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return probabilities[i];
    }
    throw std::out_of_range("unknown class label '" + std::string(label) + "'");
}

Posterior posterior_from_log_scores(std::vector<std::string> labels, std::span<const double> log_scores) {
    const double top = *std::max_element(log_scores.begin(), log_scores.end());
    std::vector<double> probs(log_scores.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        probs[i] = std::exp(log_scores[i] - top);
        sum += probs[i];
    }
    for (double& p : probs) p /= sum;
    return Posterior{std::move(labels), std::move(probs)};
}

namespace {

struct LabelIndex {
    std::vector<std::string> labels;           // sorted, distinct
    std::vector<std::size_t> class_of;         // per instance
    std::vector<std::size_t> class_count;
};

LabelIndex index_labels(std::span<const std::string> labels) {
    const std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() < 2) throw std::invalid_argument("training needs at least two distinct class labels");
    LabelIndex idx;
    idx.labels.assign(distinct.begin(), distinct.end());
    idx.class_count.assign(idx.labels.size(), 0);
    for (const auto& l : labels) {
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(idx.labels.begin(), idx.labels.end(), l) - idx.labels.begin());
        idx.class_of.push_back(pos);
        ++idx.class_count[pos];
    }
    return idx;
}

std::vector<double> log_priors_of(const LabelIndex& idx) {
    const double n = static_cast<double>(idx.class_of.size());
    std::vector<double> out;
    for (const std::size_t c : idx.class_count) out.push_back(std::log(static_cast<double>(c) / n));
    return out;
}

constexpr double kVarianceSmoothing = 1e-9;

}  // namespace

GaussianNbModel train_gaussian(std::span<const FeatureRow> instances, std::span<const std::string> labels) {
    if (instances.size() != labels.size()) throw std::invalid_argument("instances and labels differ in length");
    if (instances.empty()) throw std::invalid_argument("no training instances");
    const std::size_t arity = instances.front().size();
    for (const auto& row : instances) {
        if (row.size() != arity) throw std::invalid_argument("training rows have differing lengths");
    }
    const LabelIndex idx = index_labels(labels);
    const std::size_t n_classes = idx.labels.size();

    GaussianNbModel model;
    model.class_labels = idx.labels;
    model.log_priors = log_priors_of(idx);
    model.params.assign(n_classes, std::vector<GaussianParams>(arity));

    double max_variance = 0.0;
    for (std::size_t f = 0; f < arity; ++f) {
        std::vector<double> sum(n_classes, 0.0);
        std::vector<std::size_t> count(n_classes, 0);
        double all_sum = 0.0;
        std::size_t all_count = 0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const double x = instances[i][f];
            if (is_missing(x)) continue;
            sum[idx.class_of[i]] += x;
            ++count[idx.class_of[i]];
            all_sum += x;
            ++all_count;
        }
        std::vector<double> sq(n_classes, 0.0);
        double all_sq = 0.0;
        const double all_mean = all_count > 0 ? all_sum / static_cast<double>(all_count) : 0.0;
        for (std::size_t i = 0; i < instances.size(); ++i) {
            const double x = instances[i][f];
            if (is_missing(x)) continue;
            const std::size_t c = idx.class_of[i];
            const double dev = x - sum[c] / static_cast<double>(count[c]);
            sq[c] += dev * dev;
            all_sq += (x - all_mean) * (x - all_mean);
        }
        if (all_count > 0) max_variance = std::max(max_variance, all_sq / static_cast<double>(all_count));
        for (std::size_t c = 0; c < n_classes; ++c) {
            GaussianParams& p = model.params[c][f];
            if (count[c] == 0) continue;
            p.usable = true;
            p.mean = sum[c] / static_cast<double>(count[c]);
            p.variance = sq[c] / static_cast<double>(count[c]);
        }
    }
    model.variance_floor = max_variance > 0.0 ? kVarianceSmoothing * max_variance : kVarianceSmoothing;
    for (auto& per_class : model.params) {
        for (GaussianParams& p : per_class) {
            if (p.usable) p.variance = std::max(p.variance, model.variance_floor);
        }
    }
    return model;
}

Posterior predict_gaussian(const GaussianNbModel& model, std::span<const double> instance) {
    if (instance.size() != model.feature_count()) {
        throw std::invalid_argument("instance has " + std::to_string(instance.size()) + " features, model expects " +
                                    std::to_string(model.feature_count()));
    }
    const double log_2pi = std::log(2.0 * std::numbers::pi);
    std::vector<double> scores = model.log_priors;
    for (std::size_t c = 0; c < scores.size(); ++c) {
        for (std::size_t f = 0; f < instance.size(); ++f) {
            const double x = instance[f];
            const GaussianParams& p = model.params[c][f];
            if (is_missing(x) || !p.usable) continue;
            const double dev = x - p.mean;
            scores[c] += -0.5 * (log_2pi + std::log(p.variance)) - dev * dev / (2.0 * p.variance);
        }
    }
    return posterior_from_log_scores(model.class_labels, scores);
}

MultinomialNbModel train_multinomial(std::span<const VsmVector> instances, std::span<const std::string> labels,
                                     double alpha) {
    if (instances.size() != labels.size()) throw std::invalid_argument("instances and labels differ in length");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
    const LabelIndex idx = index_labels(labels);

    std::set<std::string, std::less<>> vocab;
    for (const auto& inst : instances) {
        for (const auto& [term, n] : inst) vocab.insert(term);
    }
    if (vocab.empty()) throw std::invalid_argument("training vocabulary is empty");

    MultinomialNbModel model;
    model.class_labels = idx.labels;
    model.log_priors = log_priors_of(idx);
    model.alpha = alpha;
    model.vocabulary.assign(vocab.begin(), vocab.end());

    const std::size_t n_classes = idx.labels.size();
    const std::size_t v = model.vocabulary.size();
    std::vector<std::vector<double>> counts(n_classes, std::vector<double>(v, 0.0));
    std::vector<double> totals(n_classes, 0.0);
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const std::size_t c = idx.class_of[i];
        for (const auto& [term, n] : instances[i]) {
            const auto t = static_cast<std::size_t>(
                std::lower_bound(model.vocabulary.begin(), model.vocabulary.end(), term) - model.vocabulary.begin());
            counts[c][t] += static_cast<double>(n);
            totals[c] += static_cast<double>(n);
        }
    }
    model.log_probs.assign(n_classes, std::vector<double>(v));
    for (std::size_t c = 0; c < n_classes; ++c) {
        const double denom = std::log(totals[c] + alpha * static_cast<double>(v));
        for (std::size_t t = 0; t < v; ++t) model.log_probs[c][t] = std::log(counts[c][t] + alpha) - denom;
    }
    return model;
}

Posterior predict_multinomial(const MultinomialNbModel& model, const VsmVector& instance) {
    std::vector<double> scores = model.log_priors;
    for (const auto& [term, n] : instance) {
        const auto it = std::lower_bound(model.vocabulary.begin(), model.vocabulary.end(), term);
        if (it == model.vocabulary.end() || *it != term) continue;
        const auto t = static_cast<std::size_t>(it - model.vocabulary.begin());
        for (std::size_t c = 0; c < scores.size(); ++c) scores[c] += static_cast<double>(n) * model.log_probs[c][t];
    }
    return posterior_from_log_scores(model.class_labels, scores);
}

FeatureRow densify(const VsmVector& vsm, std::span<const std::string> vocabulary) {
    FeatureRow row(vocabulary.size(), 0.0);
    for (std::size_t t = 0; t < vocabulary.size(); ++t) {
        if (const auto it = vsm.find(vocabulary[t]); it != vsm.end()) row[t] = static_cast<double>(it->second);
    }
    return row;
}

VsmGaussianModel train_vsm_gaussian(std::span<const VsmVector> instances, std::span<const std::string> labels) {
    std::set<std::string, std::less<>> vocab;
    for (const auto& inst : instances) {
        for (const auto& [term, n] : inst) vocab.insert(term);
    }
    if (vocab.empty()) throw std::invalid_argument("training vocabulary is empty");
    VsmGaussianModel out;
    out.vocabulary.assign(vocab.begin(), vocab.end());
    std::vector<FeatureRow> rows;
    rows.reserve(instances.size());
    for (const auto& inst : instances) rows.push_back(densify(inst, out.vocabulary));
    out.model = train_gaussian(rows, labels);
    return out;
}

Posterior predict_vsm_gaussian(const VsmGaussianModel& model, const VsmVector& instance) {
    return predict_gaussian(model.model, densify(instance, model.vocabulary));
}

namespace {

constexpr const char* kModelFormat = "tvaffect-naive-bayes";
constexpr int kModelVersion = 1;

json header(const char* kind, const std::vector<std::string>& labels, const std::vector<double>& log_priors) {
    json j = json::object();
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    j["kind"] = kind;
    j["class_labels"] = labels;
    j["log_priors"] = log_priors;
    return j;
}

json parse_header(std::string_view text, const char* kind) {
    json j = json::parse(text);
    if (!j.is_object() || j.value("format", "") != kModelFormat) {
        throw std::invalid_argument("not a naive Bayes model document");
    }
    if (j.value("version", 0) != kModelVersion) {
        throw std::invalid_argument("unsupported model version " + j["version"].dump());
    }
    if (j.value("kind", "") != kind) {
        throw std::invalid_argument(std::string("expected a ") + kind + " model, found '" + j.value("kind", "") + "'");
    }
    return j;
}

}  // namespace

std::string model_to_json(const GaussianNbModel& model) {
    json j = header("gaussian", model.class_labels, model.log_priors);
    j["variance_floor"] = model.variance_floor;
    json params = json::array();
    for (const auto& per_class : model.params) {
        json row = json::array();
        for (const GaussianParams& p : per_class) {
            row.push_back(p.usable ? json{{"mean", p.mean}, {"variance", p.variance}} : json(nullptr));
        }
        params.push_back(std::move(row));
    }
    j["params"] = std::move(params);
    return j.dump();
}

std::string model_to_json(const MultinomialNbModel& model) {
    json j = header("multinomial", model.class_labels, model.log_priors);
    j["alpha"] = model.alpha;
    j["vocabulary"] = model.vocabulary;
    j["log_probs"] = model.log_probs;
    return j.dump();
}

GaussianNbModel gaussian_model_from_json(std::string_view text) {
    const json j = parse_header(text, "gaussian");
    GaussianNbModel model;
    model.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    model.log_priors = j.at("log_priors").get<std::vector<double>>();
    model.variance_floor = j.at("variance_floor").get<double>();
    for (const auto& row : j.at("params")) {
        std::vector<GaussianParams> per_class;
        for (const auto& p : row) {
            if (p.is_null()) {
                per_class.push_back({});
            } else {
                per_class.push_back({p.at("mean").get<double>(), p.at("variance").get<double>(), true});
            }
        }
        model.params.push_back(std::move(per_class));
    }
    if (model.params.size() != model.class_labels.size() || model.log_priors.size() != model.class_labels.size()) {
        throw std::invalid_argument("model document has inconsistent class counts");
    }
    return model;
}

MultinomialNbModel multinomial_model_from_json(std::string_view text) {
    const json j = parse_header(text, "multinomial");
    MultinomialNbModel model;
    model.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    model.log_priors = j.at("log_priors").get<std::vector<double>>();
    model.alpha = j.at("alpha").get<double>();
    model.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    model.log_probs = j.at("log_probs").get<std::vector<std::vector<double>>>();
    if (model.log_probs.size() != model.class_labels.size() || model.log_priors.size() != model.class_labels.size()) {
        throw std::invalid_argument("model document has inconsistent class counts");
    }
    for (const auto& row : model.log_probs) {
        if (row.size() != model.vocabulary.size()) throw std::invalid_argument("log_probs row length mismatch");
    }
    return model;
}

}  // namespace tvaffect
