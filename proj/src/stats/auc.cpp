#include "divscore/error.hpp"
#include "divscore/stats.hpp"

#include <cmath>

namespace divscore::stats {

double auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw ValidationError("auc: scores and labels differ in length");
    double n_pos = 0.0, n_neg = 0.0;
    for (int l : labels) {
        if (l == 1) n_pos += 1.0;
        else if (l == 0) n_neg += 1.0;
        else throw ValidationError("auc: labels must be 0 or 1");
    }
    if (n_pos == 0.0 || n_neg == 0.0) throw ValidationError("auc: need at least one positive and one negative");
    for (double s : scores)
        if (std::isnan(s)) throw ValidationError("auc: NaN score");

    const auto ranks = average_ranks(scores);
    // Twice the rank sum keeps every midrank integral.
    double twice_rank_sum = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (labels[i] == 1) twice_rank_sum += 2.0 * ranks[i];
    const double twice_u = twice_rank_sum - n_pos * (n_pos + 1.0);
    return twice_u / (2.0 * n_pos * n_neg);
}

double macro_auc(const Matrix& probs, std::span<const int> labels) {
    if (probs.rows() != labels.size()) throw ValidationError("macro_auc: row count differs from label count");
    const std::size_t c = probs.cols();
    if (c == 2) {
        std::vector<double> s(probs.rows());
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = probs(i, 1);
        return auc(s, labels);
    }
    double sum = 0.0;
    std::size_t used = 0;
    std::vector<double> s(probs.rows());
    std::vector<int> y(probs.rows());
    for (std::size_t k = 0; k < c; ++k) {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = probs(i, k);
            y[i] = labels[i] == static_cast<int>(k) ? 1 : 0;
            pos += static_cast<std::size_t>(y[i]);
        }
        if (pos == 0 || pos == s.size()) continue;
        sum += auc(s, y);
        ++used;
    }
    if (used == 0) throw ValidationError("macro_auc: labels hold a single class");
    return sum / static_cast<double>(used);
}

} // namespace divscore::stats
