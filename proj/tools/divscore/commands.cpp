#include "commands.hpp"

#include "divscore/datamap.hpp"
#include "divscore/dataio/csv.hpp"
#include "divscore/dataio/file.hpp"
#include "divscore/dataio/tensor.hpp"
#include "divscore/error.hpp"
#include "divscore/evaluate.hpp"
#include "divscore/stats.hpp"
#include "divscore/toygen.hpp"
#include "divscore/trainer.hpp"

#include <cstdio>
#include <iostream>
#include <json.hpp>

namespace divscore::cli {

namespace {

namespace fs = std::filesystem;

void write_matrix(const fs::path& path, const Matrix& m) {
    dataio::write_bytes(path, dataio::encode_tensor(dataio::tensor_from_matrix(m)));
}

bool ends_with(const std::string& s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

report::ParsedReport load_report(const std::string& path, ManifestBuilder& mb) {
    mb.add_input(path);
    return report::report_from_json(dataio::read_text(path));
}

stats::RankingMatrix ranking_of(const metrics::ScenarioReport& r) {
    const auto names = report::scenario_names(r);
    const auto rows = report::metric_rows(r);
    return stats::rank_scenarios(names, rows);
}

} // namespace

int run_gen_toy(const GenToyOptions& o, const GlobalOptions& g) {
    ManifestBuilder mb("gen-toy", g);
    const auto toy = toygen::build_scenarios(o.n, g.seed, o.reference_n.value_or(o.n));
    dataio::save_dataset(o.out, toy.table, toy.images, toy.scenarios);
    dataio::write_text(fs::path(o.out) / "manifest.json", report::manifest_to_json(mb.finish()) + "\n");
    std::cout << "wrote " << toy.table.size() << " samples and " << toy.scenarios.scenarios.size() << " scenarios to "
              << o.out << "\n";
    return 0;
}

int run_extract(const ExtractOptions& o, const GlobalOptions& g) {
    const auto ds = dataio::load_dataset(o.data);
    const Matrix f = image_features(ds, parse_source(o.features), g.worker_count());
    write_matrix(o.out, f);
    std::cout << "wrote " << f.rows() << "x" << f.cols() << " " << o.features << " features to " << o.out << "\n";
    return 0;
}

int run_metrics(const MetricsOptions& o, const GlobalOptions& g) {
    ManifestBuilder mb("metrics", g);
    const auto ds = dataio::load_dataset(o.data);
    mb.add_dataset(ds);
    const std::size_t n = ds.table.size();
    const unsigned threads = g.worker_count();

    metrics::FeatureSet fs;
    if (ds.images) {
        fs.pixel = image_features(ds, FeatureSource::pixel, threads);
        fs.hog = image_features(ds, FeatureSource::hog, threads);
    }
    if (!o.external.empty()) {
        mb.add_input(o.external);
        fs.external = load_divt_matrix(o.external, n, "external features");
    }
    if (!o.text_embeddings.empty()) {
        mb.add_input(o.text_embeddings);
        fs.text_embeddings = load_divt_matrix(o.text_embeddings, n, "text embeddings");
    }
    if (!o.probs.empty() && !o.model.empty()) throw ValidationError("give either --probs or --model, not both");
    if (!o.probs.empty()) {
        mb.add_input(o.probs);
        fs.probabilities = load_divt_matrix(o.probs, n, "probability matrix");
    } else if (!o.model.empty()) {
        mb.add_input(o.model);
        const auto model = trainer::LinearModel::from_json(dataio::read_text(o.model));
        const auto src = parse_source(o.model_features);
        const auto& f = src == FeatureSource::pixel ? fs.pixel : src == FeatureSource::hog ? fs.hog : fs.external;
        if (!f) throw ValidationError("model features '" + o.model_features + "' are not available");
        fs.probabilities = trainer::predict_proba(model, *f);
    }

    const auto selections = dataio::materialize_scenarios(ds.scenarios, ds.table);
    std::string ref_name = o.ref_scenario.empty() ? ds.scenarios.reference_scenario.value_or("") : o.ref_scenario;
    std::optional<dataio::ScenarioSelection> reference;
    std::vector<dataio::ScenarioSelection> evaluated;
    for (const auto& sel : selections) {
        if (sel.name == ref_name) reference = sel;
        // The declared reference pool is not ranked alongside the scenarios.
        if (ds.scenarios.reference_scenario && sel.name == *ds.scenarios.reference_scenario) continue;
        evaluated.push_back(sel);
    }
    if (!ref_name.empty() && !reference) throw ValidationError("reference scenario '" + ref_name + "' is not defined");

    metrics::EvaluationOptions opt;
    opt.fid_source = parse_source(o.features);
    opt.subsample = {!o.no_subsample, o.fraction, o.repeats, g.seed};
    opt.bootstrap_reps = o.bootstrap;
    opt.threads = threads;
    const auto rep = metrics::evaluate_scenarios(ds.table, evaluated, reference, fs, opt);

    const auto manifest = mb.finish();
    dataio::write_text(o.out, report::report_to_json(rep, manifest));
    if (!o.csv.empty()) dataio::write_text(o.csv, report::report_to_csv(rep, manifest));
    std::cout << report::report_to_csv(rep, manifest);
    return 0;
}

int run_rank(const RankOptions& o, const GlobalOptions& g) {
    ManifestBuilder mb("rank", g);
    const auto parsed = load_report(o.report, mb);
    const auto ranking = ranking_of(parsed.report);
    const auto text = report::ranking_to_csv(ranking, mb.finish());
    dataio::write_text(o.out, text);
    std::cout << text;
    return 0;
}

int run_correlate(const CorrelateOptions& o, const GlobalOptions& g) {
    ManifestBuilder mb("correlate", g);
    const auto parsed = load_report(o.report, mb);
    const auto corr = stats::correlation_matrix(ranking_of(parsed.report));
    const auto manifest = mb.finish();
    const auto outputs = split_outputs(o.out);
    if (outputs.empty()) throw ValidationError("--out needs at least one .csv or .svg path");
    for (const auto& path : outputs) {
        if (ends_with(path, ".svg")) {
            dataio::write_text(path, report::correlation_to_svg(corr, "Spearman correlation of scenario rankings", manifest));
        } else if (ends_with(path, ".csv")) {
            dataio::write_text(path, report::correlation_to_csv(corr, manifest));
        } else {
            throw ValidationError("output '" + path + "' must end in .csv or .svg");
        }
    }
    std::cout << report::correlation_to_csv(corr, manifest);
    return 0;
}

int run_train(const TrainOptions& o, const GlobalOptions& g) {
    ManifestBuilder mb("train", g);
    const auto ds = dataio::load_dataset(o.data);
    mb.add_dataset(ds);
    const unsigned threads = g.worker_count();
    const auto src = parse_source(o.features);
    Matrix features;
    if (src == FeatureSource::external) {
        if (o.external.empty()) throw ValidationError("--features external needs --external FILE");
        mb.add_input(o.external);
        features = load_divt_matrix(o.external, ds.table.size(), "external features");
    } else {
        features = image_features(ds, src, threads);
    }

    trainer::TrainConfig cfg;
    cfg.learning_rate = o.lr;
    cfg.max_epochs = o.epochs;
    cfg.patience = o.patience;
    cfg.batch_size = o.batch;
    cfg.class_weighting = trainer::parse_class_weighting(o.weighting);
    cfg.seed = g.seed;
    cfg.validate();

    const auto labels = ds.table.labels();
    const auto groups = ds.table.group_ids();
    std::vector<std::string> ids;
    for (const auto& r : ds.table.records) ids.push_back(r.sample_id);
    const auto folds = resample::group_stratified_kfold(labels, groups, o.k, g.seed);
    const trainer::TrainData data{features, labels, ids, ds.table.num_classes};
    const auto cv = trainer::cross_validate(data, folds, cfg, threads);

    nlohmann::json summary;
    nlohmann::json fold_list = nlohmann::json::array();
    for (std::size_t f = 0; f < cv.folds.size(); ++f) {
        nlohmann::json jf{{"fold", f}, {"best_epoch", cv.folds[f].best_epoch}, {"epochs_run", cv.folds[f].epochs_run}};
        if (cv.test_auc[f]) jf["test_auc"] = *cv.test_auc[f];
        else jf["test_auc"] = nullptr;
        fold_list.push_back(jf);
        std::cout << "fold " << f << ": best epoch " << cv.folds[f].best_epoch << " of " << cv.folds[f].epochs_run;
        if (cv.test_auc[f]) std::cout << ", test AUC " << dataio::format_double(*cv.test_auc[f]);
        std::cout << "\n";
    }

    if (!o.folds.empty()) dataio::write_text(o.folds, resample::format_folds_csv(folds, ids));
    if (!o.log.empty()) dataio::write_text(o.log, trainer::format_prob_log_csv(cv.log));
    if (!o.probs.empty()) write_matrix(o.probs, cv.out_of_fold);
    if (!o.model.empty()) {
        // Final model: fold 0 held out for early stopping, the rest for training.
        const auto val = folds.members(0);
        const auto tr = folds.complement(0);
        const auto fit = trainer::train(data, tr, val, {}, cfg, 0);
        dataio::write_text(o.model, fit.model.to_json() + "\n");
    }
    const auto manifest = mb.finish();
    if (!o.summary.empty()) {
        summary["manifest"] = nlohmann::json::parse(report::manifest_to_json(manifest));
        summary["folds"] = fold_list;
        summary["features"] = o.features;
        dataio::write_text(o.summary, summary.dump(2) + "\n");
    }
    return 0;
}

int run_datamap(const DatamapOptions& o, const GlobalOptions& g) {
    ManifestBuilder mb("datamap", g);
    mb.add_input(o.log);
    auto points = datamap::datamap_stats(trainer::parse_prob_log_csv(dataio::read_text(o.log)));
    std::vector<std::string> tag_columns;
    if (!o.data.empty()) {
        const auto ds = dataio::load_dataset(o.data);
        mb.add_dataset(ds);
        std::map<std::string, std::map<std::string, std::string>> tags;
        for (const auto& r : ds.table.records) {
            auto t = r.tags;
            t["label"] = std::to_string(r.label);
            tags[r.sample_id] = std::move(t);
        }
        datamap::attach_tags(points, tags);
        tag_columns = ds.table.schema.tag_columns;
        tag_columns.push_back("label");
    }
    if (!o.tag.empty() && o.data.empty()) throw ValidationError("--tag needs --data to look up sample tags");

    std::map<std::string, std::vector<datamap::DataMapPoint>> groups;
    if (o.tag.empty()) groups["all"] = points;
    else groups = datamap::subgroup_maps(points, o.tag);
    std::map<std::string, datamap::DensityGrid> grids;
    for (const auto& [name, pts] : groups) grids[name] = datamap::density_grid(pts);

    const auto manifest = mb.finish();
    dataio::write_text(o.out, report::manifest_comment_lines(manifest) + datamap::format_points_csv(points, tag_columns));
    if (!o.grid.empty()) dataio::write_text(o.grid, report::manifest_comment_lines(manifest) + datamap::format_grids_csv(grids));
    if (!o.svg.empty()) {
        const auto svg = datamap::render_datamap_svg(groups, grids, o.tag.empty() ? "Data map" : "Data maps by " + o.tag);
        dataio::write_text(o.svg, report::embed_manifest_svg(svg, manifest));
    }
    if (!o.tag.empty() && groups.size() >= 2) {
        const auto flagged = datamap::flag_outlier_subgroups(points, o.tag, o.threshold);
        std::cout << "flagged " << o.tag << " values:";
        for (const auto& f : flagged) std::cout << " " << f;
        std::cout << (flagged.empty() ? " none\n" : "\n");
    }
    std::cout << "wrote " << points.size() << " data-map points to " << o.out << "\n";
    return 0;
}

int run_report(const ReportOptions& o, const GlobalOptions& g) {
    ManifestBuilder mb("report", g);
    const auto parsed = load_report(o.report, mb);
    const fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    const auto manifest = mb.finish();
    dataio::write_text(dir / "metrics.csv", report::report_to_csv(parsed.report, manifest));
    const auto ranking = ranking_of(parsed.report);
    dataio::write_text(dir / "ranks.csv", report::ranking_to_csv(ranking, manifest));
    if (ranking.metrics.size() >= 2) {
        const auto corr = stats::correlation_matrix(ranking);
        dataio::write_text(dir / "correlation.csv", report::correlation_to_csv(corr, manifest));
        dataio::write_text(dir / "correlation.svg",
                           report::correlation_to_svg(corr, "Spearman correlation of scenario rankings", manifest));
    }
    std::cout << "wrote report files to " << dir.string() << "\n";
    return 0;
}

} // namespace divscore::cli
