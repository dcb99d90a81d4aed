#include "divscore/divmetrics.hpp"
#include "divscore/error.hpp"

#include <algorithm>
#include <cctype>

namespace divscore::metrics {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) tokens.push_back(std::move(cur));
        cur.clear();
    };
    for (char ch : text) {
        const auto c = static_cast<unsigned char>(ch);
        if (std::isspace(c)) {
            flush();
        } else if (!std::ispunct(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        }
    }
    flush();
    return tokens;
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> cur(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

double rouge_l_f1(std::span<const std::string> a, std::span<const std::string> b) {
    if (a.empty() || b.empty()) return 0.0;
    // 2PR/(P+R) with P = l/|a|, R = l/|b| reduces to 2l/(|a|+|b|), one rounding.
    const auto lcs = static_cast<double>(lcs_length(a, b));
    return 2.0 * lcs / static_cast<double>(a.size() + b.size());
}

MetricValue lexical_diversity(std::span<const std::string> texts) {
    std::vector<std::vector<std::string>> tokens;
    for (const auto& t : texts) {
        auto tok = tokenize(t);
        if (!tok.empty()) tokens.push_back(std::move(tok));
    }
    if (tokens.size() < 2) throw ValidationError("lexical_diversity: fewer than 2 non-empty texts");
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        for (std::size_t j = i + 1; j < tokens.size(); ++j) {
            sum += rouge_l_f1(tokens[i], tokens[j]);
            ++pairs;
        }
    return MetricValue{std::string(names::lexical), sum / static_cast<double>(pairs), Direction::lower_better,
                       tokens.size(), 1};
}

double mean_pairwise_cosine(const Matrix& rows) {
    const std::size_t n = rows.rows();
    if (n < 2) throw ValidationError("mean pairwise cosine needs at least 2 rows");
    const Matrix k = numeric::cosine_kernel(rows);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sum += k(i, j);
    return sum / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

MetricValue semantic_diversity(const Matrix& embeddings) {
    return MetricValue{std::string(names::semantic), mean_pairwise_cosine(embeddings), Direction::lower_better,
                       embeddings.rows(), 1};
}

MetricValue metadata_diversity(const Matrix& metadata) {
    return MetricValue{std::string(names::metadata), mean_pairwise_cosine(metadata), Direction::lower_better,
                       metadata.rows(), 1};
}

} // namespace divscore::metrics
