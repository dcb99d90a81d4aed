#pragma once

#include "divscore/dataio/dataset.hpp"
#include "divscore/feature_matrix.hpp"
#include "divscore/report.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace divscore::cli {

struct GlobalOptions {
    std::uint64_t seed = 0;
    unsigned threads = 0; // 0: DIVSCORE_THREADS or machine parallelism
    bool reproducible = false;
    std::string effective_config; // flag dump, hashed into the manifest

    unsigned worker_count() const;
};

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

// Collects inputs while a command runs, then stamps the manifest.
class ManifestBuilder {
public:
    ManifestBuilder(std::string command, const GlobalOptions& options);

    void add_input(const std::filesystem::path& path);
    void add_dataset(const dataio::Dataset& ds);
    report::RunManifest finish() const;

private:
    report::RunManifest manifest_;
    bool reproducible_;
    std::chrono::steady_clock::time_point start_;
};

FeatureSource parse_source(const std::string& text);

// Features per table record (row i = record i). Pixel and HOG come from the
// image stack; external features from a DIVT file with one row per record.
Matrix image_features(const dataio::Dataset& ds, FeatureSource source, unsigned threads);
Matrix load_divt_matrix(const std::filesystem::path& path, std::size_t expected_rows, const std::string& what);

std::vector<std::string> split_outputs(const std::string& list);

} // namespace divscore::cli
