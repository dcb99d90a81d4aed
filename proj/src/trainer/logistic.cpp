#include "divscore/error.hpp"
#include "divscore/simd/kernels.hpp"
#include "divscore/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

namespace divscore::trainer {

std::string_view to_string(ClassWeighting w) noexcept {
    return w == ClassWeighting::none ? "none" : "inverse_prevalence";
}

ClassWeighting parse_class_weighting(std::string_view text) {
    if (text == "none") return ClassWeighting::none;
    if (text == "inverse_prevalence") return ClassWeighting::inverse_prevalence;
    throw ValidationError("unknown class weighting '" + std::string(text) + "' (use none or inverse_prevalence)");
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw ValidationError("learning rate must be > 0");
    if (max_epochs < 1) throw ValidationError("max epochs must be at least 1");
    if (patience < 0) throw ValidationError("patience must be >= 0");
    if (batch_size == 0) throw ValidationError("batch size must be at least 1");
    if (min_delta < 0.0) throw ValidationError("min delta must be ≥ 0");
}

std::string LinearModel::to_json() const {
    nlohmann::json j;
    j["classes"] = classes();
    j["dims"] = dims();
    std::vector<double> w(weights.values().begin(), weights.values().end());
    j["weights"] = w;
    return j.dump(1);
}

LinearModel LinearModel::from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        const auto c = j.at("classes").get<std::size_t>();
        const auto d = j.at("dims").get<std::size_t>();
        auto w = j.at("weights").get<std::vector<double>>();
        if (c < 2) throw ValidationError("model needs at least 2 classes");
        return LinearModel{Matrix(c, d + 1, std::move(w))};
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed model JSON: ") + e.what());
    }
}

std::vector<double> class_weights(std::span<const int> labels, std::size_t classes, ClassWeighting weighting) {
    std::vector<double> counts(classes, 0.0);
    for (int l : labels) {
        if (l < 0 || static_cast<std::size_t>(l) >= classes) {
            throw ValidationError("label " + std::to_string(l) + " outside [0, " + std::to_string(classes) + ")");
        }
        counts[static_cast<std::size_t>(l)] += 1.0;
    }
    std::vector<double> w(classes, 0.0);
    for (std::size_t c = 0; c < classes; ++c)
        if (counts[c] > 0.0) w[c] = 1.0;
    if (weighting == ClassWeighting::none) return w;
    if (classes == 2) {
        if (counts[1] > 0.0) w[1] = counts[0] / counts[1];
        return w;
    }
    const double max_count = *std::max_element(counts.begin(), counts.end());
    for (std::size_t c = 0; c < classes; ++c)
        if (counts[c] > 0.0) w[c] = max_count / counts[c];
    return w;
}

namespace {

// logits → probabilities in place, max-shifted.
void softmax(std::span<double> z) {
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - m);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

void logits(const Matrix& w, std::span<const double> x, std::span<double> out) {
    const std::size_t d = x.size();
    for (std::size_t c = 0; c < w.rows(); ++c) {
        const auto row = w.row(c);
        out[c] = simd::dot(row.first(d), x) + row[d];
    }
}

} // namespace

LossGrad loss_and_grad(const Matrix& weights, const Matrix& features, std::span<const int> labels,
                       std::span<const double> class_weights, std::span<const std::size_t> rows) {
    const std::size_t c = weights.rows();
    const std::size_t d = features.cols();
    if (weights.cols() != d + 1) throw ValidationError("weights do not match the feature dimension plus bias");
    if (labels.size() != features.rows()) throw ValidationError("label count differs from feature rows");
    if (class_weights.size() != c) throw ValidationError("one class weight per class is required");

    std::vector<std::size_t> all;
    if (rows.empty()) {
        all.resize(features.rows());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        rows = all;
    }

    LossGrad out{0.0, Matrix(c, d + 1)};
    std::vector<double> p(c);
    double total_weight = 0.0;
    for (auto r : rows) {
        const auto x = features.row(r);
        for (double v : x)
            if (!std::isfinite(v)) throw ValidationError("non-finite feature in row " + std::to_string(r));
        const auto y = static_cast<std::size_t>(labels[r]);
        const double sw = class_weights[y];
        if (sw == 0.0) continue;
        logits(weights, x, p);
        softmax(p);
        out.loss -= sw * std::log(std::max(p[y], 1e-300));
        for (std::size_t k = 0; k < c; ++k) {
            const double g = sw * (p[k] - (k == y ? 1.0 : 0.0));
            auto grow = out.grad.row(k);
            simd::axpy(g, x, grow.first(d));
            grow[d] += g;
        }
        total_weight += sw;
    }
    if (total_weight == 0.0) throw ValidationError("loss over rows with zero total weight");
    out.loss /= total_weight;
    for (double& g : out.grad.values()) g /= total_weight;
    return out;
}

Matrix predict_proba(const LinearModel& model, const Matrix& features) {
    if (features.cols() != model.dims()) {
        throw ValidationError("model expects " + std::to_string(model.dims()) + " features, got " +
                              std::to_string(features.cols()));
    }
    Matrix out(features.rows(), model.classes());
    for (std::size_t r = 0; r < features.rows(); ++r) {
        auto row = out.row(r);
        logits(model.weights, features.row(r), row);
        softmax(row);
    }
    return out;
}

} // namespace divscore::trainer
