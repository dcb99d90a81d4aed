#include "divscore/divmetrics.hpp"
#include "divscore/error.hpp"
#include "divscore/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace divscore::metrics {

std::string_view to_string(Direction d) noexcept {
    return d == Direction::higher_better ? "higher_better" : "lower_better";
}

std::string_view arrow(Direction d) noexcept { return d == Direction::higher_better ? "\xE2\x86\x91" : "\xE2\x86\x93"; }

Direction parse_direction(std::string_view text) {
    if (text == "higher_better") return Direction::higher_better;
    if (text == "lower_better") return Direction::lower_better;
    throw ValidationError("unknown metric direction '" + std::string(text) + "'");
}

Direction direction_of(std::string_view metric) {
    if (metric == names::inception_score || metric.rfind("VS_", 0) == 0 || metric == "AUC") {
        return Direction::higher_better;
    }
    if (metric == names::fid || metric == names::lexical || metric == names::semantic || metric == names::metadata) {
        return Direction::lower_better;
    }
    throw ValidationError("unknown metric '" + std::string(metric) + "'");
}

MetricValue inception_score(const Matrix& probs, std::size_t splits) {
    const std::size_t n = probs.rows();
    const std::size_t c = probs.cols();
    if (n == 0 || c == 0) throw ValidationError("inception_score: empty probability matrix");
    if (splits == 0 || splits > n) throw ValidationError("inception_score: splits must be in [1, n]");
    for (std::size_t r = 0; r < n; ++r) {
        double sum = 0.0;
        for (double p : probs.row(r)) {
            if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
                throw ValidationError("inception_score: row " + std::to_string(r) + " has an entry outside [0, 1]");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-6) {
            throw ValidationError("inception_score: row " + std::to_string(r) + " sums to " + std::to_string(sum));
        }
    }

    double total = 0.0;
    for (std::size_t s = 0; s < splits; ++s) {
        const std::size_t begin = n * s / splits;
        const std::size_t end = n * (s + 1) / splits;
        std::vector<double> marginal(c, 0.0);
        for (std::size_t r = begin; r < end; ++r) simd::axpy(1.0, probs.row(r), marginal);
        for (double& m : marginal) m /= static_cast<double>(end - begin);

        double kl_sum = 0.0;
        for (std::size_t r = begin; r < end; ++r) {
            for (std::size_t j = 0; j < c; ++j) {
                const double p = probs(r, j);
                if (p > 0.0) kl_sum += p * (std::log(p) - std::log(marginal[j]));
            }
        }
        total += std::exp(kl_sum / static_cast<double>(end - begin));
    }
    return MetricValue{std::string(names::inception_score), total / static_cast<double>(splits),
                       Direction::higher_better, n, static_cast<int>(splits)};
}

FidReference make_fid_reference(const Matrix& reference_features) {
    FidReference ref;
    ref.summary = numeric::gaussian_summary(reference_features);
    ref.covariance_root = numeric::psd_sqrt(ref.summary.covariance);
    ref.covariance_trace = trace(ref.summary.covariance);
    return ref;
}

MetricValue fid(const Matrix& eval_features, const FidReference& reference) {
    if (eval_features.cols() != reference.summary.mean.size()) {
        throw ValidationError("fid: feature dimensions differ (" + std::to_string(eval_features.cols()) + " vs " +
                              std::to_string(reference.summary.mean.size()) + ")");
    }
    const auto eval = numeric::gaussian_summary(eval_features);
    double mean_term = 0.0;
    for (std::size_t i = 0; i < eval.mean.size(); ++i) {
        const double diff = reference.summary.mean[i] - eval.mean[i];
        mean_term += diff * diff;
    }
    const double cross = numeric::trace_sqrt_product_with_root(reference.covariance_root, eval.covariance);
    const double value = mean_term + reference.covariance_trace + trace(eval.covariance) - 2.0 * cross;
    return MetricValue{std::string(names::fid), value, Direction::lower_better, eval_features.rows(), 1};
}

MetricValue fid(const Matrix& eval_features, const Matrix& reference_features) {
    if (eval_features.cols() != reference_features.cols()) {
        throw ValidationError("fid: feature dimensions differ (" + std::to_string(eval_features.cols()) + " vs " +
                              std::to_string(reference_features.cols()) + ")");
    }
    return fid(eval_features, make_fid_reference(reference_features));
}

std::vector<double> vendi_spectrum(const Matrix& features, VendiRoute route) {
    const std::size_t n = features.rows();
    if (n == 0) throw ValidationError("vendi_score: no samples");

    std::vector<std::size_t> nonzero;
    for (std::size_t r = 0; r < n; ++r)
        if (simd::sum_squares(features.row(r)) > 0.0) nonzero.push_back(r);
    const std::size_t zero_rows = n - nonzero.size();

    if (route == VendiRoute::automatic) {
        route = features.cols() < nonzero.size() ? VendiRoute::gram : VendiRoute::kernel;
    }

    std::vector<double> lambda;
    if (route == VendiRoute::kernel) {
        lambda = numeric::sym_eig(numeric::cosine_kernel(features)).values;
    } else {
        // Zero rows are identical to each other and orthogonal to the rest:
        // their kernel block is an all-ones matrix with eigenvalue zero_rows.
        if (!nonzero.empty()) {
            const Matrix unit = numeric::normalized_rows(features.select_rows(nonzero));
            lambda = numeric::sym_eig(numeric::gram_dual(unit)).values;
        }
        if (zero_rows > 0) lambda.push_back(static_cast<double>(zero_rows));
    }
    for (double& l : lambda) l /= static_cast<double>(n);
    lambda = numeric::clamp_psd(std::move(lambda));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return lambda;
}

MetricValue vendi_score(const Matrix& features, VendiRoute route, std::string_view name) {
    const auto lambda = vendi_spectrum(features, route);
    double entropy = 0.0;
    for (double l : lambda)
        if (l > 0.0) entropy -= l * std::log(l);
    return MetricValue{std::string(name), std::exp(entropy), Direction::higher_better, features.rows(), 1};
}

} // namespace divscore::metrics
