#include "commands.hpp"

#include "divscore/error.hpp"

#include <CLI11.hpp>
#include <iostream>

using namespace divscore;
using namespace divscore::cli;

int main(int argc, char** argv) {
    CLI::App app{"divscore: diversity metrics, rankings and data maps for multimodal datasets"};
    app.set_version_flag("--version", std::string(DIVSCORE_VERSION));
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML file with flag values");

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads (0: DIVSCORE_THREADS or all cores)")->capture_default_str();
    app.add_flag("--reproducible", g.reproducible, "Omit wall time and timestamps from reports");

    GenToyOptions gen;
    auto* c_gen = app.add_subcommand("gen-toy", "Write a synthetic perturbed-glyph dataset");
    c_gen->add_option("--n", gen.n, "Base glyphs per perturbation (≥ 10)")->capture_default_str();
    c_gen->add_option("--reference-n", gen.reference_n, "Size of the plain reference pool (default: --n)");
    c_gen->add_option("--out", gen.out, "Output directory")->required();

    ExtractOptions ext;
    auto* c_ext = app.add_subcommand("extract", "Compute pixel or HOG features as a DIVT file");
    c_ext->add_option("--data", ext.data, "Dataset directory")->required();
    c_ext->add_option("--features", ext.features, "pixel or hog")->capture_default_str();
    c_ext->add_option("--out", ext.out, "Output .divt file")->required();

    MetricsOptions met;
    auto* c_met = app.add_subcommand("metrics", "Score every scenario with the diversity metrics");
    c_met->add_option("--data", met.data, "Dataset directory")->required();
    c_met->add_option("--features", met.features, "FID feature source: pixel, hog or external")->capture_default_str();
    c_met->add_option("--external", met.external, "DIVT image features, one row per table record");
    c_met->add_option("--probs", met.probs, "DIVT class probabilities for IS");
    c_met->add_option("--model", met.model, "Trained model JSON; its predictions feed IS");
    c_met->add_option("--model-features", met.model_features, "Feature source the model was trained on")
        ->capture_default_str();
    c_met->add_option("--text-embeddings", met.text_embeddings, "DIVT text embeddings for semantic diversity");
    c_met->add_option("--ref-scenario", met.ref_scenario, "Reference scenario for FID (default: from the config)");
    c_met->add_option("--subsample-fraction", met.fraction, "Fraction drawn for pairwise metrics")
        ->capture_default_str();
    c_met->add_option("--repeats", met.repeats, "Subsample draws averaged per pairwise metric")->capture_default_str();
    c_met->add_flag("--no-subsample", met.no_subsample, "Use whole scenarios for pairwise metrics");
    c_met->add_option("--bootstrap", met.bootstrap, "Bootstrap resamples per cell (0: no intervals)")
        ->capture_default_str();
    c_met->add_option("--out", met.out, "Report JSON")->required();
    c_met->add_option("--csv", met.csv, "Report CSV");

    RankOptions rk;
    auto* c_rank = app.add_subcommand("rank", "Rank scenarios per metric");
    c_rank->add_option("--report", rk.report, "Report JSON")->required();
    c_rank->add_option("--out", rk.out, "Ranking CSV")->required();

    CorrelateOptions cor;
    auto* c_cor = app.add_subcommand("correlate", "Spearman correlation between metric rankings");
    c_cor->add_option("--report", cor.report, "Report JSON")->required();
    c_cor->add_option("--out", cor.out, "Comma-separated .csv and/or .svg outputs")->required();

    TrainOptions tr;
    auto* c_tr = app.add_subcommand("train", "Cross-validated linear classifier with per-epoch probability logs");
    c_tr->add_option("--data", tr.data, "Dataset directory")->required();
    c_tr->add_option("--features", tr.features, "pixel, hog or external")->capture_default_str();
    c_tr->add_option("--external", tr.external, "DIVT features for --features external");
    c_tr->add_option("--k", tr.k, "Folds (≥ 3)")->capture_default_str();
    c_tr->add_option("--lr", tr.lr, "Adam learning rate")->capture_default_str();
    c_tr->add_option("--epochs", tr.epochs, "Maximum epochs")->capture_default_str();
    c_tr->add_option("--patience", tr.patience, "Epochs without validation AUC gain before stopping")
        ->capture_default_str();
    c_tr->add_option("--batch", tr.batch, "Mini-batch size")->capture_default_str();
    c_tr->add_option("--weighting", tr.weighting, "none or inverse_prevalence")->capture_default_str();
    c_tr->add_option("--log", tr.log, "EpochProbLog CSV of the test folds");
    c_tr->add_option("--model", tr.model, "Model JSON");
    c_tr->add_option("--probs", tr.probs, "Out-of-fold probabilities as DIVT");
    c_tr->add_option("--folds", tr.folds, "Fold assignment CSV");
    c_tr->add_option("--summary", tr.summary, "Per-fold summary JSON");

    DatamapOptions dm;
    auto* c_dm = app.add_subcommand("datamap", "Confidence/variability maps from a probability log");
    c_dm->add_option("--log", dm.log, "EpochProbLog CSV")->required();
    c_dm->add_option("--data", dm.data, "Dataset directory supplying sample tags");
    c_dm->add_option("--tag", dm.tag, "Tag to split panels and flag outlier subgroups by");
    c_dm->add_option("--threshold", dm.threshold, "Outlier rule: median below global median − threshold·IQR")
        ->capture_default_str();
    c_dm->add_option("--out", dm.out, "Points CSV")->required();
    c_dm->add_option("--grid", dm.grid, "Density grids CSV");
    c_dm->add_option("--svg", dm.svg, "SVG panels");

    ReportOptions rp;
    auto* c_rep = app.add_subcommand("report", "Write metrics/ranks/correlation tables and figure from a report");
    c_rep->add_option("--report", rp.report, "Report JSON")->required();
    c_rep->add_option("--out-dir", rp.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "divscore: " << e.what() << " (see --help)\n";
        return 1;
    }

    try {
        g.effective_config = app.config_to_str(true, false);
        if (c_gen->parsed()) return run_gen_toy(gen, g);
        if (c_ext->parsed()) return run_extract(ext, g);
        if (c_met->parsed()) return run_metrics(met, g);
        if (c_rank->parsed()) return run_rank(rk, g);
        if (c_cor->parsed()) return run_correlate(cor, g);
        if (c_tr->parsed()) return run_train(tr, g);
        if (c_dm->parsed()) return run_datamap(dm, g);
        if (c_rep->parsed()) return run_report(rp, g);
    } catch (const IoError& e) {
        std::cerr << "divscore: I/O error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "divscore: error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
