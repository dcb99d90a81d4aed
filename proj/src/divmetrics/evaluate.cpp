#include "divscore/evaluate.hpp"
#include "divscore/error.hpp"
#include "divscore/parallel.hpp"

#include <functional>
#include <numeric>

namespace divscore::metrics {

std::optional<std::size_t> ScenarioReport::metric_index(std::string_view name) const {
    for (std::size_t i = 0; i < metrics.size(); ++i)
        if (metrics[i].name == name) return i;
    return std::nullopt;
}

std::vector<MetricColumn> standard_metrics() {
    std::vector<MetricColumn> cols;
    for (auto name : {names::inception_score, names::fid, names::vendi_pixel, names::vendi_hog, names::vendi_external,
                      names::lexical, names::semantic, names::metadata}) {
        cols.push_back({std::string(name), direction_of(name)});
    }
    return cols;
}

namespace {

// Value of a metric on a multiset of table rows.
using Evaluator = std::function<double(std::span<const std::size_t>)>;

struct Plan {
    Evaluator eval;
    bool subsampled = false;
    std::string absent_reason;
};

double subsampled_mean(const Evaluator& eval, std::span<const std::size_t> rows, const dataio::DatasetTable& table,
                       const SubsamplePolicy& policy) {
    if (!policy.enabled) return eval(rows);
    std::vector<int> labels;
    labels.reserve(rows.size());
    for (auto r : rows) labels.push_back(table.records[r].label);
    double sum = 0.0;
    for (int rep = 0; rep < policy.repeats; ++rep) {
        const auto picks =
            resample::stratified_subsample(labels, policy.fraction, policy.seed + static_cast<std::uint64_t>(rep));
        if (picks.size() < 2) {
            sum += eval(rows);
            continue;
        }
        std::vector<std::size_t> draw;
        draw.reserve(picks.size());
        for (auto p : picks) draw.push_back(rows[p]);
        sum += eval(draw);
    }
    return sum / static_cast<double>(policy.repeats);
}

const std::optional<Matrix>& source_matrix(const FeatureSet& f, FeatureSource s) {
    switch (s) {
    case FeatureSource::pixel: return f.pixel;
    case FeatureSource::hog: return f.hog;
    case FeatureSource::external: return f.external;
    }
    return f.external;
}

void check_rows(const std::optional<Matrix>& m, std::size_t n, std::string_view what) {
    if (m && m->rows() != n) {
        throw ValidationError(std::string(what) + " has " + std::to_string(m->rows()) + " rows, table has " +
                              std::to_string(n));
    }
}

} // namespace

ScenarioReport evaluate_scenarios(const dataio::DatasetTable& table,
                                  std::span<const dataio::ScenarioSelection> scenarios,
                                  const std::optional<dataio::ScenarioSelection>& reference, const FeatureSet& features,
                                  const EvaluationOptions& options) {
    const std::size_t n = table.size();
    check_rows(features.pixel, n, "pixel features");
    check_rows(features.hog, n, "HOG features");
    check_rows(features.external, n, "external features");
    check_rows(features.probabilities, n, "probability matrix");
    check_rows(features.text_embeddings, n, "text embeddings");
    if (options.subsample.repeats < 1) throw ValidationError("subsample repeats must be at least 1");

    ScenarioReport report;
    report.metrics = standard_metrics();
    if (reference) report.reference = reference->name;

    std::optional<FidReference> fid_ref;
    const auto& fid_features = source_matrix(features, options.fid_source);
    if (reference && fid_features) fid_ref = make_fid_reference(fid_features->select_rows(reference->indices));

    std::vector<std::string> texts(n);
    for (std::size_t i = 0; i < n; ++i)
        if (table.records[i].text) texts[i] = *table.records[i].text;

    auto with_text = [&](std::span<const std::size_t> rows) {
        std::vector<std::size_t> out;
        for (auto r : rows)
            if (table.records[r].text && !tokenize(*table.records[r].text).empty()) out.push_back(r);
        return out;
    };

    auto vendi_plan = [&](const std::optional<Matrix>& m, std::string_view name, std::string_view what) {
        Plan p;
        p.subsampled = true;
        if (!m) {
            p.absent_reason = "no " + std::string(what) + " features";
            return p;
        }
        p.eval = [&m, name](std::span<const std::size_t> rows) {
            return vendi_score(m->select_rows(rows), VendiRoute::automatic, name).value;
        };
        return p;
    };

    std::vector<Plan> plans;
    {
        Plan is;
        if (features.probabilities) {
            is.eval = [&](std::span<const std::size_t> rows) {
                return inception_score(features.probabilities->select_rows(rows)).value;
            };
        } else {
            is.absent_reason = "no class probabilities";
        }
        plans.push_back(std::move(is));

        Plan f;
        if (!reference) {
            f.absent_reason = "no reference scenario";
        } else if (!fid_features) {
            f.absent_reason = "no " + std::string(to_string(options.fid_source)) + " features";
        } else {
            f.eval = [&](std::span<const std::size_t> rows) {
                return fid(fid_features->select_rows(rows), *fid_ref).value;
            };
        }
        plans.push_back(std::move(f));

        plans.push_back(vendi_plan(features.pixel, names::vendi_pixel, "pixel"));
        plans.push_back(vendi_plan(features.hog, names::vendi_hog, "HOG"));
        plans.push_back(vendi_plan(features.external, names::vendi_external, "external"));

        Plan lex;
        lex.subsampled = true;
        lex.eval = [&](std::span<const std::size_t> rows) {
            std::vector<std::string> picked;
            picked.reserve(rows.size());
            for (auto r : rows) picked.push_back(texts[r]);
            return lexical_diversity(picked).value;
        };
        plans.push_back(std::move(lex));

        Plan sem;
        sem.subsampled = true;
        if (features.text_embeddings) {
            sem.eval = [&](std::span<const std::size_t> rows) {
                return semantic_diversity(features.text_embeddings->select_rows(rows)).value;
            };
        } else {
            sem.absent_reason = "no text embeddings";
        }
        plans.push_back(std::move(sem));

        Plan meta;
        const std::size_t meta_dims = table.records.empty() ? 0 : table.records.front().metadata.size();
        if (meta_dims > 0) {
            meta.eval = [&](std::span<const std::size_t> rows) {
                return metadata_diversity(table.metadata_matrix(rows)).value;
            };
        } else {
            meta.absent_reason = "no metadata columns";
        }
        plans.push_back(std::move(meta));
    }
    const std::size_t lexical_slot = 5;
    const std::size_t semantic_slot = 6;

    report.scenarios.resize(scenarios.size());
    parallel_for(scenarios.size(), options.threads, [&](std::size_t s) {
        const auto& sel = scenarios[s];
        auto& out = report.scenarios[s];
        out.scenario = sel.name;
        out.n = sel.indices.size();
        out.cells.resize(plans.size());

        const auto text_rows = with_text(sel.indices);
        for (std::size_t m = 0; m < plans.size(); ++m) {
            const Plan& plan = plans[m];
            auto& cell = out.cells[m];
            if (!plan.eval) {
                cell.absent_reason = plan.absent_reason;
                continue;
            }
            const bool textual = m == lexical_slot || m == semantic_slot;
            const std::vector<std::size_t>& rows = textual ? text_rows : sel.indices;
            if (textual && rows.size() < 2) {
                cell.absent_reason = "fewer than 2 samples with text";
                continue;
            }

            auto statistic = [&](std::span<const std::size_t> subset) {
                return plan.subsampled ? subsampled_mean(plan.eval, subset, table, options.subsample)
                                       : plan.eval(subset);
            };
            MetricValue mv;
            mv.name = report.metrics[m].name;
            mv.direction = report.metrics[m].direction;
            mv.value = statistic(rows);
            mv.n_used = rows.size();
            mv.repeats = plan.subsampled && options.subsample.enabled ? options.subsample.repeats : 1;
            cell.value = mv;

            if (options.bootstrap_reps > 0) {
                cell.ci = resample::bootstrap_ci(
                    [&](std::span<const std::size_t> positions) {
                        std::vector<std::size_t> picked;
                        picked.reserve(positions.size());
                        for (auto p : positions) picked.push_back(rows[p]);
                        return statistic(picked);
                    },
                    rows.size(), options.bootstrap_reps, options.bootstrap_level, options.subsample.seed);
            }
        }
    });
    return report;
}

} // namespace divscore::metrics
