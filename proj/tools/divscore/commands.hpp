#pragma once

#include "common.hpp"

#include <cstddef>
#include <string>

namespace divscore::cli {

struct GenToyOptions {
    std::size_t n = 100;
    std::optional<std::size_t> reference_n; // default: n
    std::string out;
};

struct ExtractOptions {
    std::string data;
    std::string features = "hog";
    std::string out;
};

struct MetricsOptions {
    std::string data;
    std::string features = "hog"; // FID source
    std::string external;
    std::string probs;
    std::string model;
    std::string model_features = "hog";
    std::string text_embeddings;
    std::string ref_scenario;
    double fraction = 0.10;
    int repeats = 5;
    bool no_subsample = false;
    std::size_t bootstrap = 0;
    std::string out;
    std::string csv;
};

struct RankOptions {
    std::string report;
    std::string out;
};

struct CorrelateOptions {
    std::string report;
    std::string out; // comma-separated .csv and/or .svg
};

struct TrainOptions {
    std::string data;
    std::string features = "hog";
    std::string external;
    std::size_t k = 5;
    double lr = 1e-4;
    int epochs = 100;
    int patience = 10;
    std::size_t batch = 32;
    std::string weighting = "inverse_prevalence";
    std::string log;
    std::string model;
    std::string probs;
    std::string folds;
    std::string summary;
};

struct DatamapOptions {
    std::string log;
    std::string data;
    std::string tag;
    double threshold = 1.5;
    std::string out;
    std::string grid;
    std::string svg;
};

struct ReportOptions {
    std::string report;
    std::string out_dir;
};

int run_gen_toy(const GenToyOptions& o, const GlobalOptions& g);
int run_extract(const ExtractOptions& o, const GlobalOptions& g);
int run_metrics(const MetricsOptions& o, const GlobalOptions& g);
int run_rank(const RankOptions& o, const GlobalOptions& g);
int run_correlate(const CorrelateOptions& o, const GlobalOptions& g);
int run_train(const TrainOptions& o, const GlobalOptions& g);
int run_datamap(const DatamapOptions& o, const GlobalOptions& g);
int run_report(const ReportOptions& o, const GlobalOptions& g);

} // namespace divscore::cli
