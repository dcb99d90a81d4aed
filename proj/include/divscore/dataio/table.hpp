#pragma once

#include "divscore/dataio/ini.hpp"
#include "divscore/matrix.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace divscore::dataio {

// Which CSV columns carry what. Metadata columns are vectorized in the listed
// order; columns also listed in `categorical_columns` are dictionary-encoded.
struct TableSchema {
    std::string id_column = "sample_id";
    std::string label_column = "label";
    std::string group_column;       // empty: each sample is its own group
    std::string image_index_column; // empty: no image reference
    std::vector<std::string> metadata_columns;
    std::vector<std::string> categorical_columns;
    std::vector<std::string> tag_columns;
    std::vector<std::string> label_values; // empty: labels are integers
    std::size_t num_classes = 0;           // 0: inferred

    bool is_categorical(std::string_view column) const;
};

TableSchema schema_from_ini(const IniSection& section);
IniSection schema_to_ini(const TableSchema& schema);

// Categorical value codes in first-seen order, per column.
class CategoryDictionary {
public:
    // Existing code, or the next free one.
    int encode(const std::string& column, const std::string& value);
    std::optional<int> find(const std::string& column, const std::string& value) const;
    const std::string& decode(const std::string& column, int code) const;

    std::string to_json() const;
    static CategoryDictionary from_json(std::string_view text);

    bool operator==(const CategoryDictionary&) const = default;

private:
    std::map<std::string, std::vector<std::string>> values_;
};

inline constexpr double kMissingMetadata = -1.0;

struct Record {
    std::string sample_id;
    std::optional<std::size_t> image_index;
    std::optional<std::string> text;
    std::vector<double> metadata;
    int label = 0;
    std::string group_id;
    std::map<std::string, std::string> tags;
};

struct DatasetTable {
    TableSchema schema;
    std::vector<Record> records;
    CategoryDictionary dictionary;
    std::size_t num_classes = 0;

    std::size_t size() const noexcept { return records.size(); }
    std::vector<int> labels() const;
    std::vector<std::string> group_ids() const;
    Matrix metadata_matrix(std::span<const std::size_t> indices) const;
    std::optional<std::size_t> find(std::string_view sample_id) const;
};

// id → text from {"id": ..., "text": ...} lines.
std::map<std::string, std::string> parse_texts_jsonl(std::string_view text);
std::string format_texts_jsonl(const DatasetTable& table);

// Parses CSV (plus optional JSONL texts). `dictionary` seeds the categorical
// codes; new values are appended. Throws ValidationError on duplicate ids,
// unknown label values, ragged rows or missing columns.
DatasetTable parse_table(std::string_view csv_text, const std::optional<std::string>& jsonl_text,
                         const TableSchema& schema, CategoryDictionary dictionary = {});

DatasetTable load_table(const std::filesystem::path& csv_path,
                        const std::optional<std::filesystem::path>& jsonl_path, const TableSchema& schema,
                        CategoryDictionary dictionary = {});

// Inverse of parse_table for the CSV part; categorical cells are written back
// as their original strings (missing ones as empty cells).
std::string format_table_csv(const DatasetTable& table);

} // namespace divscore::dataio
