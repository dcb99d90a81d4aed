#include "divscore/dataio/csv.hpp"
#include "divscore/resample.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>
#include <unordered_map>

namespace divscore::resample {
namespace {

struct Group {
    std::string id;
    std::vector<std::size_t> members;
    std::map<int, std::size_t> class_counts;
    std::size_t positives = 0;
    int majority = 0;
    std::uint64_t hash = 0;
};

} // namespace

std::vector<std::size_t> FoldAssignment::members(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
        if (fold_of[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldAssignment::complement(std::size_t fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
        if (fold_of[i] != fold) out.push_back(i);
    return out;
}

FoldAssignment group_stratified_kfold(std::span<const int> labels, std::span<const std::string> group_ids,
                                      std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ValidationError("group_stratified_kfold: k must be at least 2");
    if (labels.size() != group_ids.size()) throw ValidationError("group_stratified_kfold: labels and groups differ in length");

    std::unordered_map<std::string, std::size_t> index;
    std::vector<Group> groups;
    bool binary = true;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = index.emplace(group_ids[i], groups.size());
        if (inserted) groups.push_back(Group{group_ids[i], {}, {}, 0, 0, seeded_hash(group_ids[i], seed)});
        Group& g = groups[it->second];
        g.members.push_back(i);
        g.class_counts[labels[i]]++;
        if (labels[i] != 0) g.positives++;
        if (labels[i] != 0 && labels[i] != 1) binary = false;
    }
    if (groups.size() < k) {
        throw ValidationError("group_stratified_kfold: " + std::to_string(groups.size()) + " groups cannot fill " +
                              std::to_string(k) + " folds");
    }
    for (auto& g : groups) {
        g.majority = std::max_element(g.class_counts.begin(), g.class_counts.end(), [](const auto& a, const auto& b) {
                         return a.second < b.second;
                     })->first;
    }

    // Hash ties are broken by id so the order is total.
    std::sort(groups.begin(), groups.end(), [&](const Group& a, const Group& b) {
        if (binary) {
            return std::forward_as_tuple(b.positives, b.members.size(), a.hash, a.id) <
                   std::forward_as_tuple(a.positives, a.members.size(), b.hash, b.id);
        }
        return std::forward_as_tuple(b.members.size(), a.hash, a.id) < std::forward_as_tuple(a.members.size(), b.hash, b.id);
    });

    FoldAssignment out;
    out.k = k;
    out.fold_of.assign(labels.size(), 0);
    std::vector<std::size_t> fold_size(k, 0);
    std::vector<std::map<int, std::size_t>> fold_class(k);
    std::vector<std::size_t> fold_pos(k, 0);
    for (const Group& g : groups) {
        std::size_t best = 0;
        for (std::size_t f = 1; f < k; ++f) {
            const std::size_t key_f = binary ? fold_pos[f] : fold_class[f][g.majority];
            const std::size_t key_b = binary ? fold_pos[best] : fold_class[best][g.majority];
            if (std::tie(key_f, fold_size[f]) < std::tie(key_b, fold_size[best])) best = f;
        }
        for (std::size_t m : g.members) out.fold_of[m] = best;
        fold_size[best] += g.members.size();
        fold_pos[best] += g.positives;
        for (const auto& [label, count] : g.class_counts) fold_class[best][label] += count;
    }
    return out;
}

std::string format_folds_csv(const FoldAssignment& folds, std::span<const std::string> sample_ids) {
    if (sample_ids.size() != folds.fold_of.size()) throw ValidationError("fold CSV: id count mismatch");
    std::string out = "sample_id,fold\n";
    for (std::size_t i = 0; i < sample_ids.size(); ++i) {
        out += dataio::csv_escape(sample_ids[i]) + "," + std::to_string(folds.fold_of[i]) + "\n";
    }
    return out;
}

FoldAssignment parse_folds_csv(std::string_view text, std::span<const std::string> sample_ids) {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < sample_ids.size(); ++i) index.emplace(sample_ids[i], i);
    const auto rows = dataio::parse_csv(text);
    if (rows.empty() || rows.front().size() != 2) throw ValidationError("fold CSV: expected header sample_id,fold");
    FoldAssignment out;
    out.fold_of.assign(sample_ids.size(), SIZE_MAX);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2) throw ValidationError("fold CSV row " + std::to_string(r + 1) + ": expected 2 fields");
        auto it = index.find(rows[r][0]);
        if (it == index.end()) throw ValidationError("fold CSV: unknown sample id '" + rows[r][0] + "'");
        std::size_t fold = 0;
        const std::string& f = rows[r][1];
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), fold);
        if (ec != std::errc() || ptr != f.data() + f.size()) throw ValidationError("fold CSV: bad fold '" + f + "'");
        out.fold_of[it->second] = fold;
        out.k = std::max(out.k, fold + 1);
    }
    for (std::size_t i = 0; i < out.fold_of.size(); ++i)
        if (out.fold_of[i] == SIZE_MAX) throw ValidationError("fold CSV: no fold for '" + sample_ids[i] + "'");
    return out;
}

} // namespace divscore::resample
