#pragma once

#include "divscore/dataio/idx.hpp"
#include "divscore/dataio/scenario.hpp"
#include "divscore/dataio/table.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace divscore::dataio {

// File names inside a dataset directory, as listed in its dataset.ini.
struct DatasetLayout {
    std::string table = "table.csv";
    std::string texts;      // JSONL, optional
    std::string images;     // IDX images, optional
    std::string dictionary = "dictionary.json";
    std::string scenarios = "scenarios.ini";
};

inline constexpr const char* kDatasetManifest = "dataset.ini";

struct Dataset {
    std::filesystem::path root;
    DatasetLayout layout;
    DatasetTable table;
    std::optional<ImageStack> images;
    ScenarioConfig scenarios;
};

// Reads dataset.ini ([files] + [table] sections) and everything it names.
// A missing dictionary file starts an empty dictionary.
Dataset load_dataset(const std::filesystem::path& root);

// Writes dataset.ini, the table CSV, texts, dictionary, scenario config and
// (if present) the images as IDX.
void save_dataset(const std::filesystem::path& root, const DatasetTable& table,
                  const std::optional<ImageStack>& images, const ScenarioConfig& scenarios,
                  const DatasetLayout& layout = {});

} // namespace divscore::dataio
