#pragma once

// Independent reference computations used to check the library. Each one is
// written the slow, obvious way and shares no code with the implementation.

#include "divscore/matrix.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace oracle {

// Longest common subsequence by enumerating every subsequence of `a`
// (exponential; keep |a| ≤ 12).
std::size_t brute_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Rank of x_i = 1 + #{x_j < x_i} + #{j ≠ i : x_j = x_i}/2, then the textbook
// Pearson formula.
double brute_spearman(const std::vector<double>& x, const std::vector<double>& y);

// (#concordant + ½·#tied) / (n₊·n₋) over all positive/negative pairs.
double pair_count_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// Central differences of a scalar function of a matrix.
divscore::Matrix finite_difference(const std::function<double(const divscore::Matrix&)>& f,
                                   const divscore::Matrix& at, double h);

// Roots of λ² − (a+d)λ + (ad − b²) for [[a,b],[b,d]], descending.
std::vector<double> eig2_closed(double a, double b, double d);

// numpy-style linear percentile (type 7) of unsorted values.
double percentile7(std::vector<double> values, double q);

// Fold assignment by the documented binary greedy rule, written as a plain
// selection loop over a copied group list.
std::vector<std::size_t> greedy_folds(const std::vector<int>& labels, const std::vector<std::string>& groups,
                                      std::size_t k, std::uint64_t seed);

// Mean over unordered pairs i<j of f(i, j).
double pair_mean(std::size_t n, const std::function<double(std::size_t, std::size_t)>& f);

double cosine(std::span<const double> a, std::span<const double> b);

} // namespace oracle
