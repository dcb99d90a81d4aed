#include "divscore/error.hpp"
#include "divscore/stats.hpp"
#include "divscore/trainer.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>
#include <cmath>
#include <numeric>

using namespace divscore;
using namespace divscore::trainer;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Blobs {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> ids;
};

// Two well separated Gaussian-ish blobs in 3-D.
Blobs blobs(std::size_t n, std::uint64_t seed) {
    resample::Rng rng(seed);
    Blobs b{Matrix(n, 3), {}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const int y = static_cast<int>(i % 2);
        for (std::size_t j = 0; j < 3; ++j) b.features(i, j) = 0.3 * rng.normal() + (y ? 2.0 : -2.0);
        b.labels.push_back(y);
        b.ids.push_back("b" + std::to_string(i));
    }
    return b;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> v(hi - lo);
    std::iota(v.begin(), v.end(), lo);
    return v;
}

} // namespace

TEST_CASE("zero weights give ln 2") {
    const auto f = fixture::random_matrix(7, 4, 1);
    const std::vector<int> y{0, 1, 1, 0, 1, 0, 0};
    const std::vector<double> w{1, 1};
    const auto lg = loss_and_grad(Matrix(2, 5), f, y, w);
    CHECK_THAT(lg.loss, WithinAbs(std::log(2.0), 1e-15));
    CHECK(lg.grad.rows() == 2);
    CHECK(lg.grad.cols() == 5);
}

TEST_CASE("class weights") {
    std::vector<int> y(100, 0);
    std::fill(y.begin() + 90, y.end(), 1);
    auto w = class_weights(y, 2, ClassWeighting::inverse_prevalence);
    CHECK(w == std::vector<double>{1.0, 9.0});
    CHECK(class_weights(y, 2, ClassWeighting::none) == std::vector<double>{1.0, 1.0});
    const std::vector<int> three{0, 0, 0, 0, 1, 1, 2};
    CHECK(class_weights(three, 4, ClassWeighting::inverse_prevalence) == std::vector<double>{1.0, 2.0, 4.0, 0.0});
    CHECK(parse_class_weighting("none") == ClassWeighting::none);
    CHECK_THROWS_AS(parse_class_weighting("bogus"), ValidationError);
}

TEST_CASE("analytic gradient matches central differences") {
    resample::Rng rng(21);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const std::size_t c = 2 + s % 3, d = 4, n = 5;
        const auto f = fixture::random_matrix(n, d, s);
        std::vector<int> y(n);
        for (auto& v : y) v = static_cast<int>(rng.below(c));
        std::vector<double> cw(c);
        for (auto& v : cw) v = 0.5 + rng.uniform();
        const auto w0 = fixture::random_matrix(c, d + 1, 50 + s);
        const auto lg = loss_and_grad(w0, f, y, cw);
        const auto fd = oracle::finite_difference([&](const Matrix& w) { return loss_and_grad(w, f, y, cw).loss; }, w0,
                                                  1e-5);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < fd.values().size(); ++i) {
            num += std::pow(lg.grad.values()[i] - fd.values()[i], 2);
            den += std::pow(fd.values()[i], 2);
        }
        CHECK(std::sqrt(num / den) < 1e-5);
    }
}

TEST_CASE("unit class weights are the unweighted loss") {
    const auto f = fixture::random_matrix(9, 3, 2);
    const std::vector<int> y{0, 1, 2, 0, 1, 2, 0, 0, 1};
    const auto w = fixture::random_matrix(3, 4, 3);
    const auto a = loss_and_grad(w, f, y, std::vector<double>{1, 1, 1});
    // Plain softmax cross-entropy written out.
    double want = 0;
    for (std::size_t i = 0; i < 9; ++i) {
        std::vector<double> z(3);
        for (std::size_t k = 0; k < 3; ++k) {
            z[k] = w(k, 3);
            for (std::size_t j = 0; j < 3; ++j) z[k] += w(k, j) * f(i, j);
        }
        const double mx = *std::max_element(z.begin(), z.end());
        double lse = 0;
        for (double v : z) lse += std::exp(v - mx);
        want += mx + std::log(lse) - z[static_cast<std::size_t>(y[i])];
    }
    CHECK_THAT(a.loss, WithinRel(want / 9, 1e-14));

    const auto rows = std::vector<std::size_t>{1, 4, 5};
    const auto sub = loss_and_grad(w, f.select_rows(rows), std::vector<int>{1, 1, 2}, std::vector<double>{1, 1, 1});
    CHECK_THAT(loss_and_grad(w, f, y, std::vector<double>{1, 1, 1}, rows).loss, WithinRel(sub.loss, 1e-14));
}

TEST_CASE("predict_proba contracts") {
    LinearModel zero{Matrix(3, 3)};
    const auto f = fixture::random_matrix(4, 2, 1);
    const auto p = predict_proba(zero, f);
    for (double v : p.values()) CHECK_THAT(v, WithinAbs(1.0 / 3, 1e-15));

    LinearModel big{Matrix::from_rows({{0, 0, 800}, {0, 0, 0}})};
    const auto s = predict_proba(big, f);
    CHECK_THAT(s(0, 0), WithinAbs(1.0, 1e-15));
    CHECK(std::isfinite(s(0, 1)));

    LinearModel r{fixture::random_matrix(4, 6, 9, -3, 3)};
    const auto q = predict_proba(r, fixture::random_matrix(30, 5, 10));
    for (std::size_t i = 0; i < q.rows(); ++i) {
        double sum = 0;
        for (double v : q.row(i)) sum += v;
        CHECK_THAT(sum, WithinAbs(1.0, 1e-12));
    }
    CHECK_THROWS_AS(predict_proba(r, fixture::random_matrix(3, 4, 1)), ValidationError);
}

TEST_CASE("model JSON round trip") {
    LinearModel m{fixture::random_matrix(3, 5, 4)};
    CHECK(LinearModel::from_json(m.to_json()).weights == m.weights);
    CHECK_THROWS_AS(LinearModel::from_json("{}"), ValidationError);
}

TEST_CASE("separable blobs reach AUC 1 and the loss drops") {
    const auto b = blobs(120, 3);
    TrainData data{b.features, b.labels, b.ids, 2};
    TrainConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.max_epochs = 50;
    const auto tr = range(0, 80), va = range(80, 120);
    const auto r = train(data, tr, va, va, cfg);
    CHECK(r.epochs_run <= 50);
    const auto p = predict_proba(r.model, b.features.select_rows(tr));
    std::vector<double> score;
    std::vector<int> y;
    for (std::size_t i = 0; i < tr.size(); ++i) {
        score.push_back(p(i, 1));
        y.push_back(b.labels[tr[i]]);
    }
    CHECK(stats::auc(score, y) == 1.0);
    CHECK(r.train_loss.back() < r.train_loss.front());
    CHECK(r.log.entries.size() == r.epochs_run * va.size());
    CHECK(r.best_epoch >= 1);
}

TEST_CASE("patience 0 stops at the first non-improving epoch") {
    const auto b = blobs(60, 5);
    TrainData data{b.features, b.labels, b.ids, 2};
    TrainConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.patience = 0;
    const auto r = train(data, range(0, 40), range(40, 60), {}, cfg);
    // Validation AUC hits 1 at once, so epoch 2 cannot improve on it.
    CHECK(r.val_auc.front() == 1.0);
    CHECK(r.epochs_run == 2);
    CHECK(r.best_epoch == 1);
}

TEST_CASE("training is deterministic") {
    const auto b = blobs(80, 6);
    TrainData data{b.features, b.labels, b.ids, 2};
    TrainConfig cfg;
    cfg.learning_rate = 0.01;
    cfg.max_epochs = 8;
    cfg.seed = 17;
    const auto va = range(60, 80);
    const auto a = train(data, range(0, 60), va, va, cfg);
    const auto c = train(data, range(0, 60), va, va, cfg);
    CHECK(a.log == c.log);
    CHECK(a.model.weights == c.model.weights);
    CHECK(a.epochs_run == c.epochs_run);
}

TEST_CASE("single-class validation fails fast with the fold id") {
    const auto b = blobs(20, 1);
    TrainData data{b.features, b.labels, b.ids, 2};
    try {
        train(data, range(0, 16), std::vector<std::size_t>{16, 18}, {}, TrainConfig{}, 3);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find('3') != std::string::npos);
    }
    TrainConfig bad;
    bad.learning_rate = 0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("cross validation covers every sample once") {
    const auto b = blobs(90, 8);
    TrainData data{b.features, b.labels, b.ids, 2};
    const auto folds = resample::group_stratified_kfold(b.labels, b.ids, 3, 0);
    TrainConfig cfg;
    cfg.learning_rate = 0.05;
    cfg.max_epochs = 5;
    const auto cv = cross_validate(data, folds, cfg, 2);
    REQUIRE(cv.folds.size() == 3);
    for (const auto& a : cv.test_auc) CHECK(a == 1.0);
    CHECK(cv.out_of_fold.rows() == 90);
    std::size_t logged = 0;
    for (const auto& f : cv.folds) logged += f.epochs_run;
    CHECK(cv.log.entries.size() == 30 * logged);
    const auto again = cross_validate(data, folds, cfg, 1);
    CHECK(again.log == cv.log);
    CHECK_THROWS_AS(cross_validate(data, resample::group_stratified_kfold(b.labels, b.ids, 2, 0), cfg), ValidationError);
}

TEST_CASE("probability log CSV round trip") {
    EpochProbLog log{{{1, "a", 0.25}, {1, "b,c", 0.5}, {2, "a", 0.1 + 0.2}}};
    const auto text = format_prob_log_csv(log);
    CHECK(text.rfind("epoch,sample_id,p_true_class\n", 0) == 0);
    CHECK(parse_prob_log_csv(text) == log);
    CHECK_THROWS_AS(parse_prob_log_csv("epoch,sample_id,p_true_class\n0,a,0.5\n"), ValidationError);
    CHECK_THROWS_AS(parse_prob_log_csv("epoch,sample_id,p_true_class\n1,a,1.5\n"), ValidationError);
}
