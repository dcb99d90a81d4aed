#pragma once

#include "divscore/matrix.hpp"
#include "divscore/numeric.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divscore::metrics {

enum class Direction { higher_better, lower_better };

std::string_view to_string(Direction d) noexcept;
// "↑" or "↓"
std::string_view arrow(Direction d) noexcept;
Direction parse_direction(std::string_view text);

namespace names {
inline constexpr std::string_view inception_score = "IS";
inline constexpr std::string_view fid = "FID";
inline constexpr std::string_view vendi_pixel = "VS_pixel";
inline constexpr std::string_view vendi_hog = "VS_hog";
inline constexpr std::string_view vendi_external = "VS_external";
inline constexpr std::string_view lexical = "RougeL";
inline constexpr std::string_view semantic = "semantic";
inline constexpr std::string_view metadata = "metadata";
} // namespace names

// Registry direction for a metric name. Names starting with "VS_" are Vendi
// variants; "AUC" is accepted for downstream performance rows.
Direction direction_of(std::string_view metric);

struct MetricValue {
    std::string name;
    double value = 0.0;
    Direction direction = Direction::higher_better;
    std::size_t n_used = 0;
    int repeats = 1;
};

// exp(E_x KL(p(y|x) ‖ p(y))), natural log, 0·log 0 = 0. Rows are split into
// `splits` contiguous parts and the per-part scores averaged. Rows must be
// distributions: entries in [0, 1], sums within 1e-6 of 1.
MetricValue inception_score(const Matrix& probs, std::size_t splits = 1);

// Reference-side quantities reused across evaluated sets.
struct FidReference {
    numeric::GaussianSummary summary;
    Matrix covariance_root;
    double covariance_trace = 0.0;
};

FidReference make_fid_reference(const Matrix& reference_features);

// ‖μ_ref − μ_eval‖² + Tr(Σ_ref + Σ_eval − 2(Σ_ref Σ_eval)^{1/2}).
MetricValue fid(const Matrix& eval_features, const FidReference& reference);
MetricValue fid(const Matrix& eval_features, const Matrix& reference_features);

enum class VendiRoute {
    automatic, // d×d dual when the feature dimension is below the sample count
    kernel,    // n×n cosine kernel
    gram,      // d×d dual of the row-normalized features
};

// Eigenvalues of cosine_kernel(F)/n, clamped, descending. The dual route
// returns only the nonzero part of the spectrum (plus the block of zero rows).
std::vector<double> vendi_spectrum(const Matrix& features, VendiRoute route = VendiRoute::automatic);

// exp of the Shannon entropy of vendi_spectrum.
MetricValue vendi_score(const Matrix& features, VendiRoute route = VendiRoute::automatic,
                        std::string_view name = names::vendi_external);

// Lowercased, punctuation stripped, split on whitespace.
std::vector<std::string> tokenize(std::string_view text);
std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);
// RougeL F1 between two token lists (0 when they share nothing).
double rouge_l_f1(std::span<const std::string> a, std::span<const std::string> b);

// Mean pairwise RougeL F1 over texts with at least one token; needs ≥ 2.
MetricValue lexical_diversity(std::span<const std::string> texts);

// Mean off-diagonal cosine similarity (upper triangle, self-pairs excluded).
double mean_pairwise_cosine(const Matrix& rows);

MetricValue semantic_diversity(const Matrix& embeddings);
MetricValue metadata_diversity(const Matrix& metadata);

} // namespace divscore::metrics
