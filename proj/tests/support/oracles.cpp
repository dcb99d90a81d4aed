#include "support/oracles.hpp"

#include "divscore/resample.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace oracle {

std::size_t brute_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() > 16) throw std::invalid_argument("brute_lcs: input too long");
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
        std::vector<std::string> sub;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (mask & (1u << i)) sub.push_back(a[i]);
        if (sub.size() <= best) continue;
        std::size_t j = 0;
        for (const auto& tok : b)
            if (j < sub.size() && tok == sub[j]) ++j;
        if (j == sub.size()) best = sub.size();
    }
    return best;
}

double brute_spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            double less = 0, equal = 0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[j] < v[i]) less += 1;
                if (j != i && v[j] == v[i]) equal += 1;
            }
            r[i] = 1 + less + equal / 2;
        }
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += rx[i];
        sy += ry[i];
    }
    const double mx = sx / n, my = sy / n;
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    return num / std::sqrt(dx * dy);
}

double pair_count_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double concordant = 0, tied = 0, pos = 0, neg = 0;
    for (int l : labels) (l == 1 ? pos : neg) += 1;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            if (scores[i] > scores[j]) concordant += 1;
            else if (scores[i] == scores[j]) tied += 1;
        }
    }
    return (concordant + 0.5 * tied) / (pos * neg);
}

divscore::Matrix finite_difference(const std::function<double(const divscore::Matrix&)>& f,
                                   const divscore::Matrix& at, double h) {
    divscore::Matrix g(at.rows(), at.cols());
    for (std::size_t r = 0; r < at.rows(); ++r)
        for (std::size_t c = 0; c < at.cols(); ++c) {
            divscore::Matrix plus = at, minus = at;
            plus(r, c) += h;
            minus(r, c) -= h;
            g(r, c) = (f(plus) - f(minus)) / (2 * h);
        }
    return g;
}

std::vector<double> eig2_closed(double a, double b, double d) {
    const double tr = a + d, det = a * d - b * b;
    const double disc = std::sqrt(tr * tr / 4 - det);
    return {tr / 2 + disc, tr / 2 - disc};
}

double percentile7(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(values.size() - 1, lo + 1);
    return values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
}

std::vector<std::size_t> greedy_folds(const std::vector<int>& labels, const std::vector<std::string>& groups,
                                      std::size_t k, std::uint64_t seed) {
    struct G {
        std::string id;
        std::vector<std::size_t> members;
        long pos = 0;
        std::uint64_t hash = 0;
    };
    std::map<std::string, G> by_id;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto& g = by_id[groups[i]];
        g.id = groups[i];
        g.members.push_back(i);
        g.pos += labels[i] == 1;
    }
    std::vector<G> pending;
    for (auto& [id, g] : by_id) {
        g.hash = divscore::resample::seeded_hash(id, seed);
        pending.push_back(g);
    }
    std::vector<long> fold_pos(k, 0), fold_n(k, 0);
    std::vector<std::size_t> out(labels.size());
    while (!pending.empty()) {
        // pick the next group: most positives, then largest, then smallest hash, then id
        std::size_t best = 0;
        for (std::size_t i = 1; i < pending.size(); ++i) {
            const auto& a = pending[i];
            const auto& b = pending[best];
            bool better = false;
            if (a.pos != b.pos) better = a.pos > b.pos;
            else if (a.members.size() != b.members.size()) better = a.members.size() > b.members.size();
            else if (a.hash != b.hash) better = a.hash < b.hash;
            else better = a.id < b.id;
            if (better) best = i;
        }
        const G g = pending[best];
        pending.erase(pending.begin() + static_cast<long>(best));
        std::size_t f = 0;
        for (std::size_t c = 1; c < k; ++c) {
            if (fold_pos[c] < fold_pos[f] || (fold_pos[c] == fold_pos[f] && fold_n[c] < fold_n[f])) f = c;
        }
        fold_pos[f] += g.pos;
        fold_n[f] += static_cast<long>(g.members.size());
        for (auto m : g.members) out[m] = f;
    }
    return out;
}

double pair_mean(std::size_t n, const std::function<double(std::size_t, std::size_t)>& f) {
    double sum = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            sum += f(i, j);
            ++count;
        }
    return sum / static_cast<double>(count);
}

double cosine(std::span<const double> a, std::span<const double> b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0 && bb == 0) return 1;
    if (aa == 0 || bb == 0) return 0;
    return ab / std::sqrt(aa * bb);
}

} // namespace oracle
