#include "divscore/error.hpp"
#include "divscore/parallel.hpp"
#include "divscore/stats.hpp"
#include "divscore/trainer.hpp"

#include <cmath>
#include <limits>

namespace divscore::trainer {

namespace {

std::vector<int> labels_of(std::span<const int> labels, std::span<const std::size_t> rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(labels[r]);
    return out;
}

bool single_class(std::span<const int> labels) {
    for (int l : labels)
        if (l != labels.front()) return false;
    return true;
}

struct Adam {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    Matrix m, v;
    long long t = 0;

    Adam(std::size_t rows, std::size_t cols) : m(rows, cols), v(rows, cols) {}

    void step(Matrix& w, const Matrix& g, double lr) {
        ++t;
        const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
        const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
        auto wv = w.values();
        auto gv = g.values();
        auto mv = m.values();
        auto vv = v.values();
        for (std::size_t i = 0; i < wv.size(); ++i) {
            mv[i] = beta1 * mv[i] + (1.0 - beta1) * gv[i];
            vv[i] = beta2 * vv[i] + (1.0 - beta2) * gv[i] * gv[i];
            wv[i] -= lr * (mv[i] / c1) / (std::sqrt(vv[i] / c2) + eps);
        }
    }
};

} // namespace

TrainResult train(const TrainData& data, std::span<const std::size_t> train_rows,
                  std::span<const std::size_t> val_rows, std::span<const std::size_t> tracked_rows,
                  const TrainConfig& config, std::size_t fold) {
    config.validate();
    const Matrix& f = data.features;
    if (data.labels.size() != f.rows() || data.sample_ids.size() != f.rows()) {
        throw ValidationError("features, labels and sample ids must have the same length");
    }
    if (data.classes < 2) throw ValidationError("training needs at least 2 classes");
    if (train_rows.empty()) throw ValidationError("fold " + std::to_string(fold) + ": empty training set");
    const auto val_labels = labels_of(data.labels, val_rows);
    if (val_labels.empty() || single_class(val_labels)) {
        throw ValidationError("fold " + std::to_string(fold) +
                              ": validation set holds a single class, AUC is undefined");
    }

    const auto train_labels = labels_of(data.labels, train_rows);
    const auto weights = class_weights(train_labels, data.classes, config.class_weighting);
    const Matrix val_features = f.select_rows(val_rows);
    const Matrix tracked_features = f.select_rows(tracked_rows);

    TrainResult result;
    LinearModel model{Matrix(data.classes, f.cols() + 1)};
    result.model = model;
    Adam adam(model.weights.rows(), model.weights.cols());
    resample::Rng rng(config.seed);
    std::vector<std::size_t> order(train_rows.begin(), train_rows.end());

    double best_auc = -std::numeric_limits<double>::infinity();
    int waited = 0;
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
            const std::size_t end = std::min(order.size(), begin + config.batch_size);
            const auto lg = loss_and_grad(model.weights, f, data.labels, weights,
                                          std::span<const std::size_t>(order).subspan(begin, end - begin));
            adam.step(model.weights, lg.grad, config.learning_rate);
        }
        result.epochs_run = static_cast<std::size_t>(epoch);
        result.train_loss.push_back(loss_and_grad(model.weights, f, data.labels, weights, train_rows).loss);
        const double val_auc = stats::macro_auc(predict_proba(model, val_features), val_labels);
        result.val_auc.push_back(val_auc);

        const Matrix tracked = predict_proba(model, tracked_features);
        for (std::size_t i = 0; i < tracked_rows.size(); ++i) {
            const auto r = tracked_rows[i];
            result.log.entries.push_back(
                {static_cast<std::size_t>(epoch), data.sample_ids[r], tracked(i, static_cast<std::size_t>(data.labels[r]))});
        }

        if (val_auc > best_auc + config.min_delta) {
            best_auc = val_auc;
            result.model = model;
            result.best_epoch = static_cast<std::size_t>(epoch);
            waited = 0;
        } else if (++waited >= config.patience) {
            break;
        }
    }
    return result;
}

CrossValResult cross_validate(const TrainData& data, const resample::FoldAssignment& folds, const TrainConfig& config,
                              unsigned threads) {
    if (folds.k < 3) throw ValidationError("cross-validation needs k ≥ 3 (test, validation and training folds)");
    if (folds.fold_of.size() != data.features.rows()) {
        throw ValidationError("fold assignment covers " + std::to_string(folds.fold_of.size()) + " samples, data has " +
                              std::to_string(data.features.rows()));
    }
    CrossValResult out;
    out.folds.resize(folds.k);
    out.test_auc.resize(folds.k);
    out.out_of_fold = Matrix(data.features.rows(), data.classes);

    parallel_for(folds.k, threads, [&](std::size_t f) {
        const auto test = folds.members(f);
        const auto val = folds.members((f + 1) % folds.k);
        std::vector<std::size_t> tr;
        for (std::size_t i = 0; i < folds.fold_of.size(); ++i)
            if (folds.fold_of[i] != f && folds.fold_of[i] != (f + 1) % folds.k) tr.push_back(i);
        out.folds[f] = train(data, tr, val, test, config, f);

        const Matrix probs = predict_proba(out.folds[f].model, data.features.select_rows(test));
        for (std::size_t i = 0; i < test.size(); ++i)
            for (std::size_t c = 0; c < data.classes; ++c) out.out_of_fold(test[i], c) = probs(i, c);
        const auto test_labels = labels_of(data.labels, test);
        if (!test_labels.empty() && !single_class(test_labels)) out.test_auc[f] = stats::macro_auc(probs, test_labels);
    });

    for (const auto& r : out.folds)
        out.log.entries.insert(out.log.entries.end(), r.log.entries.begin(), r.log.entries.end());
    return out;
}

} // namespace divscore::trainer
