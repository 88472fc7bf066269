#include "tvaffect/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "tvaffect/classify.hpp"
#include "tvaffect/features.hpp"

namespace tvaffect {

using nlohmann::json;

FoldAssignment stratified_folds(std::span<const std::string> labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("fold count must be at least 2");
    if (k > labels.size()) {
        throw std::invalid_argument("fold count " + std::to_string(k) + " exceeds the " +
                                    std::to_string(labels.size()) + " instances");
    }
    std::map<std::string_view, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

    FoldAssignment out;
    out.k = k;
    out.seed = seed;
    out.fold.assign(labels.size(), 0);
    Rng rng(seed);
    std::size_t next = 0;
    for (auto& [label, members] : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (const std::size_t i : members) out.fold[i] = next++ % k;
    }
    return out;
}

double auc_one_vs_rest(std::span<const double> scores, const std::vector<bool>& is_positive) {
    if (scores.size() != is_positive.size()) throw std::invalid_argument("scores and labels differ in length");
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double negatives_below = 0.0;
    double credit = 0.0;
    double positives = 0.0;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i;
        double pos = 0.0;
        double neg = 0.0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            (is_positive[order[j]] ? pos : neg) += 1.0;
            ++j;
        }
        credit += pos * negatives_below + 0.5 * pos * neg;
        negatives_below += neg;
        positives += pos;
        i = j;
    }
    if (positives == 0.0 || negatives_below == 0.0) {
        throw std::invalid_argument("AUC is undefined without both positive and negative instances");
    }
    return credit / (positives * negatives_below);
}

ConfusionResult confusion_and_rates(std::span<const std::string> truth, std::span<const std::string> predicted,
                                    std::span<const std::string> class_order) {
    if (truth.size() != predicted.size()) throw std::invalid_argument("truth and predictions differ in length");
    const std::size_t n = class_order.size();
    std::map<std::string_view, std::size_t> index;
    for (std::size_t c = 0; c < n; ++c) index.emplace(class_order[c], c);
    const auto lookup = [&](const std::string& label) {
        const auto it = index.find(label);
        if (it == index.end()) throw std::invalid_argument("label '" + label + "' not in the class order");
        return it->second;
    };

    ConfusionResult out;
    out.class_order.assign(class_order.begin(), class_order.end());
    out.matrix.assign(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) ++out.matrix[lookup(truth[i])][lookup(predicted[i])];

    const double total = static_cast<double>(truth.size());
    for (std::size_t c = 0; c < n; ++c) {
        double actual = 0.0;
        double called = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            actual += static_cast<double>(out.matrix[c][j]);
            called += static_cast<double>(out.matrix[j][c]);
        }
        const double tp = static_cast<double>(out.matrix[c][c]);
        const double fp = called - tp;
        const double negatives = total - actual;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.tp_rate.push_back(actual > 0.0 ? tp / actual : nan);
        out.fp_rate.push_back(negatives > 0.0 ? fp / negatives : nan);
    }
    return out;
}

std::string_view to_string(Representation r) { return r == Representation::vsm ? "vsm" : "meta"; }

std::string_view to_string(NbVariant v) { return v == NbVariant::gaussian ? "gaussian" : "multinomial"; }

EvalReport run_cv(const Corpus& corpus, const AffectLexicon& lexicon, const EvalConfig& config) {
    if (config.representation == Representation::meta && config.nb == NbVariant::multinomial) {
        throw std::invalid_argument("the meta representation requires the gaussian variant");
    }
    const Corpus labeled = labeled_subset(corpus);
    const auto& docs = labeled.documents();
    std::vector<std::string> labels;
    labels.reserve(docs.size());
    for (const Document& d : docs) labels.push_back(*d.genre);

    std::map<std::string, std::size_t> support;
    for (const auto& l : labels) ++support[l];
    if (support.size() < 2) throw std::invalid_argument("cross-validation needs at least two labeled classes");
    for (const auto& [label, n] : support) {
        if (n < config.k) {
            throw std::invalid_argument("class '" + label + "' has " + std::to_string(n) +
                                        " documents, fewer than the " + std::to_string(config.k) + " folds");
        }
    }
    std::vector<std::string> class_order;
    for (const auto& [label, n] : support) class_order.push_back(label);

    std::vector<FeatureRow> meta_rows;
    std::vector<VsmVector> vsm_rows;
    if (config.representation == Representation::meta) {
        for (const Document& d : docs) meta_rows.push_back(fuse(extract_meta(d, lexicon)));
    } else {
        for (const Document& d : docs) vsm_rows.push_back(extract_vsm(d, lexicon));
    }

    const FoldAssignment folds = stratified_folds(labels, config.k, config.seed);
    std::vector<Posterior> posteriors(docs.size());
    EvalReport report;
    report.config = config;
    if (config.representation == Representation::meta) report.config.nb = NbVariant::gaussian;

    for (std::size_t f = 0; f < config.k; ++f) {
        std::vector<std::size_t> train;
        std::vector<std::size_t> test;
        for (std::size_t i = 0; i < docs.size(); ++i) (folds.fold[i] == f ? test : train).push_back(i);
        std::vector<std::string> train_labels;
        for (const std::size_t i : train) train_labels.push_back(labels[i]);

        if (config.representation == Representation::meta) {
            std::vector<FeatureRow> x;
            for (const std::size_t i : train) x.push_back(meta_rows[i]);
            const GaussianNbModel model = train_gaussian(x, train_labels);
            report.fold_variance_floors.push_back(model.variance_floor);
            for (const std::size_t i : test) posteriors[i] = predict_gaussian(model, meta_rows[i]);
        } else {
            std::vector<VsmVector> x;
            for (const std::size_t i : train) x.push_back(vsm_rows[i]);
            if (config.nb == NbVariant::multinomial) {
                const MultinomialNbModel model = train_multinomial(x, train_labels, config.alpha);
                for (const std::size_t i : test) posteriors[i] = predict_multinomial(model, vsm_rows[i]);
            } else {
                const VsmGaussianModel model = train_vsm_gaussian(x, train_labels);
                report.fold_variance_floors.push_back(model.model.variance_floor);
                for (const std::size_t i : test) posteriors[i] = predict_vsm_gaussian(model, vsm_rows[i]);
            }
        }
    }

    // Every fold saw every class (support >= k), so posterior label order is class_order.
    std::vector<std::string> predicted;
    for (const Posterior& p : posteriors) predicted.push_back(p.predicted_label());
    const ConfusionResult cm = confusion_and_rates(labels, predicted, class_order);

    report.instance_count = docs.size();
    report.confusion = cm.matrix;
    const double n = static_cast<double>(docs.size());
    for (std::size_t c = 0; c < class_order.size(); ++c) {
        std::vector<double> scores;
        std::vector<bool> positive;
        for (std::size_t i = 0; i < docs.size(); ++i) {
            scores.push_back(posteriors[i].probabilities[c]);
            positive.push_back(labels[i] == class_order[c]);
        }
        ClassMetrics m;
        m.label = class_order[c];
        m.support = support[class_order[c]];
        m.tp_rate = cm.tp_rate[c];
        m.fp_rate = cm.fp_rate[c];
        m.auc = auc_one_vs_rest(scores, positive);
        const double w = static_cast<double>(m.support) / n;
        report.weighted_tp_rate += w * m.tp_rate;
        report.weighted_fp_rate += w * m.fp_rate;
        report.weighted_auc += w * m.auc;
        report.classes.push_back(std::move(m));
    }
    return report;
}

namespace {

json report_json(const EvalReport& r) {
    json cfg = json::object();
    cfg["representation"] = to_string(r.config.representation);
    cfg["naive_bayes"] = to_string(r.config.nb);
    cfg["folds"] = r.config.k;
    cfg["seed"] = r.config.seed;
    cfg["aggregation"] = "pooled";
    cfg["auc"] = "one-vs-rest, Mann-Whitney with half-credit ties";
    if (r.config.nb == NbVariant::multinomial) {
        cfg["alpha"] = r.config.alpha;
    } else {
        cfg["fold_variance_floors"] = r.fold_variance_floors;
    }

    json j = json::object();
    j["config"] = std::move(cfg);
    j["instances"] = r.instance_count;
    json classes = json::array();
    json labels = json::array();
    for (const ClassMetrics& m : r.classes) {
        classes.push_back({{"label", m.label},
                           {"support", m.support},
                           {"tp_rate", m.tp_rate},
                           {"fp_rate", m.fp_rate},
                           {"auc", m.auc}});
        labels.push_back(m.label);
    }
    j["classes"] = std::move(classes);
    j["confusion_matrix"] = {{"labels", std::move(labels)}, {"counts", r.confusion}};
    j["weighted_average"] = {{"tp_rate", r.weighted_tp_rate}, {"fp_rate", r.weighted_fp_rate}, {"auc", r.weighted_auc}};
    return j;
}

}  // namespace

std::string report_to_json(std::span<const EvalReport> reports) {
    json j = json::object();
    j["format"] = "tvaffect-eval-report";
    j["version"] = 1;
    json arr = json::array();
    for (const EvalReport& r : reports) arr.push_back(report_json(r));
    j["reports"] = std::move(arr);
    return j.dump(2);
}

void write_table_csv(std::ostream& out, std::span<const EvalReport> reports) {
    if (reports.empty()) return;
    const auto& first = reports.front().classes;
    for (const EvalReport& r : reports) {
        if (r.classes.size() != first.size() ||
            !std::equal(first.begin(), first.end(), r.classes.begin(),
                        [](const ClassMetrics& a, const ClassMetrics& b) { return a.label == b.label; })) {
            throw std::invalid_argument("reports cover different class labels");
        }
    }
    out << "genre";
    for (const EvalReport& r : reports) {
        const std::string p(to_string(r.config.representation));
        out << ',' << p << "_tp," << p << "_fp," << p << "_auc";
    }
    out << '\n';
    for (std::size_t c = 0; c < first.size(); ++c) {
        out << csv_field(first[c].label);
        for (const EvalReport& r : reports) {
            const ClassMetrics& m = r.classes[c];
            out << ',' << format_double(m.tp_rate) << ',' << format_double(m.fp_rate) << ',' << format_double(m.auc);
        }
        out << '\n';
    }
    out << "weighted_average";
    for (const EvalReport& r : reports) {
        out << ',' << format_double(r.weighted_tp_rate) << ',' << format_double(r.weighted_fp_rate) << ','
            << format_double(r.weighted_auc);
    }
    out << '\n';
}

}  // namespace tvaffect
