#pragma once

#include "divscore/matrix.hpp"
#include "divscore/resample.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divscore::trainer {

enum class ClassWeighting { none, inverse_prevalence };

std::string_view to_string(ClassWeighting w) noexcept;
ClassWeighting parse_class_weighting(std::string_view text);

struct TrainConfig {
    double learning_rate = 1e-4;
    int max_epochs = 100;
    int patience = 10;
    double min_delta = 1e-4;
    std::size_t batch_size = 32;
    ClassWeighting class_weighting = ClassWeighting::inverse_prevalence;
    std::uint64_t seed = 0;

    void validate() const;
};

// Multinomial logistic regression. weights is C×(d+1), last column the bias.
struct LinearModel {
    Matrix weights;

    std::size_t classes() const noexcept { return weights.rows(); }
    std::size_t dims() const noexcept { return weights.cols() == 0 ? 0 : weights.cols() - 1; }

    std::string to_json() const;
    static LinearModel from_json(std::string_view text);
};

// Per-class weights. inverse_prevalence with two classes gives the positive
// class N_neg/N_pos and the negative class 1; with more classes, class c gets
// max_count/N_c. Classes absent from `labels` get weight 0.
std::vector<double> class_weights(std::span<const int> labels, std::size_t classes, ClassWeighting weighting);

struct LossGrad {
    double loss = 0.0;
    Matrix grad; // same shape as the weights
};

// Softmax cross-entropy, each sample weighted by its class weight, divided by
// the total weight of the rows used. `rows` selects samples of `features`
// (all of them when empty).
LossGrad loss_and_grad(const Matrix& weights, const Matrix& features, std::span<const int> labels,
                       std::span<const double> class_weights, std::span<const std::size_t> rows = {});

Matrix predict_proba(const LinearModel& model, const Matrix& features);

// One (epoch, sample, probability of its true class) entry; epochs start at 1.
struct ProbEntry {
    std::size_t epoch = 0;
    std::string sample_id;
    double p_true = 0.0;

    bool operator==(const ProbEntry&) const = default;
};

struct EpochProbLog {
    std::vector<ProbEntry> entries;

    bool operator==(const EpochProbLog&) const = default;
};

std::string format_prob_log_csv(const EpochProbLog& log);
EpochProbLog parse_prob_log_csv(std::string_view text);

struct TrainResult {
    LinearModel model;          // weights of the best validation epoch
    std::size_t best_epoch = 0; // 1-based
    std::size_t epochs_run = 0;
    std::vector<double> train_loss; // per epoch, full training set
    std::vector<double> val_auc;    // per epoch
    EpochProbLog log;               // tracked rows, every epoch
};

struct TrainData {
    const Matrix& features;
    std::span<const int> labels;
    std::span<const std::string> sample_ids;
    std::size_t classes = 0;
};

// Mini-batch Adam from zero weights with early stopping on validation AUC.
// Throws ValidationError naming `fold` when the validation rows hold a
// single class.
TrainResult train(const TrainData& data, std::span<const std::size_t> train_rows,
                  std::span<const std::size_t> val_rows, std::span<const std::size_t> tracked_rows,
                  const TrainConfig& config, std::size_t fold = 0);

struct CrossValResult {
    std::vector<TrainResult> folds;
    std::vector<std::optional<double>> test_auc; // per fold; empty when the test fold is single-class
    Matrix out_of_fold; // per sample, from the model that did not see it
    EpochProbLog log;   // test rows of every fold
};

// Fold f is the test set, fold (f+1) mod k the validation set, the rest
// training (so k ≥ 3). Folds run on up to `threads` workers.
CrossValResult cross_validate(const TrainData& data, const resample::FoldAssignment& folds, const TrainConfig& config,
                              unsigned threads = 1);

} // namespace divscore::trainer
