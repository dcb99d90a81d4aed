#include "divscore/dataio/table.hpp"

#include "divscore/dataio/csv.hpp"
#include "divscore/dataio/file.hpp"
#include "divscore/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_map>

namespace divscore::dataio {
namespace {

using nlohmann::json;

std::optional<double> parse_number(std::string_view s) {
    const std::string t = trim(s);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string join_list(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ",";
        out += items[i];
    }
    return out;
}

std::size_t column_of(const CsvRow& header, const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

} // namespace

bool TableSchema::is_categorical(std::string_view column) const {
    return std::find(categorical_columns.begin(), categorical_columns.end(), column) != categorical_columns.end();
}

TableSchema schema_from_ini(const IniSection& section) {
    TableSchema s;
    if (auto v = section.get("id")) s.id_column = *v;
    if (auto v = section.get("label")) s.label_column = *v;
    if (auto v = section.get("group")) s.group_column = *v;
    if (auto v = section.get("image_index")) s.image_index_column = *v;
    if (auto v = section.get("metadata")) s.metadata_columns = split_list(*v);
    if (auto v = section.get("categorical")) s.categorical_columns = split_list(*v);
    if (auto v = section.get("tags")) s.tag_columns = split_list(*v);
    if (auto v = section.get("label_values")) s.label_values = split_list(*v);
    if (auto v = section.get("classes"); v && !v->empty()) {
        auto n = parse_number(*v);
        if (!n || *n < 0 || std::floor(*n) != *n) throw ValidationError("schema: classes must be a count");
        s.num_classes = static_cast<std::size_t>(*n);
    }
    for (const auto& c : s.categorical_columns) {
        if (std::find(s.metadata_columns.begin(), s.metadata_columns.end(), c) == s.metadata_columns.end()) {
            throw ValidationError("schema: categorical column '" + c + "' is not a metadata column");
        }
    }
    return s;
}

IniSection schema_to_ini(const TableSchema& s) {
    IniSection out{"table", {}};
    out.entries = {
        {"id", s.id_column},
        {"label", s.label_column},
        {"group", s.group_column},
        {"image_index", s.image_index_column},
        {"metadata", join_list(s.metadata_columns)},
        {"categorical", join_list(s.categorical_columns)},
        {"tags", join_list(s.tag_columns)},
        {"label_values", join_list(s.label_values)},
        {"classes", std::to_string(s.num_classes)},
    };
    return out;
}

int CategoryDictionary::encode(const std::string& column, const std::string& value) {
    auto& values = values_[column];
    auto it = std::find(values.begin(), values.end(), value);
    if (it != values.end()) return static_cast<int>(it - values.begin());
    values.push_back(value);
    return static_cast<int>(values.size() - 1);
}

std::optional<int> CategoryDictionary::find(const std::string& column, const std::string& value) const {
    auto col = values_.find(column);
    if (col == values_.end()) return std::nullopt;
    auto it = std::find(col->second.begin(), col->second.end(), value);
    if (it == col->second.end()) return std::nullopt;
    return static_cast<int>(it - col->second.begin());
}

const std::string& CategoryDictionary::decode(const std::string& column, int code) const {
    auto col = values_.find(column);
    if (col == values_.end() || code < 0 || static_cast<std::size_t>(code) >= col->second.size()) {
        throw ValidationError("no dictionary entry " + std::to_string(code) + " for column '" + column + "'");
    }
    return col->second[static_cast<std::size_t>(code)];
}

std::string CategoryDictionary::to_json() const {
    json j = json::object();
    for (const auto& [column, values] : values_) j[column] = values;
    return j.dump(2) + "\n";
}

CategoryDictionary CategoryDictionary::from_json(std::string_view text) {
    CategoryDictionary dict;
    try {
        const json j = json::parse(text);
        for (const auto& [column, values] : j.items()) {
            for (const auto& v : values) dict.values_[column].push_back(v.get<std::string>());
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("dictionary JSON: ") + e.what());
    }
    return dict;
}

std::vector<int> DatasetTable::labels() const {
    std::vector<int> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.label);
    return out;
}

std::vector<std::string> DatasetTable::group_ids() const {
    std::vector<std::string> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.group_id);
    return out;
}

Matrix DatasetTable::metadata_matrix(std::span<const std::size_t> indices) const {
    const std::size_t d = records.empty() ? schema.metadata_columns.size() : records.front().metadata.size();
    Matrix m(indices.size(), d);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const auto& md = records.at(indices[k]).metadata;
        if (md.size() != d) throw ValidationError("record '" + records[indices[k]].sample_id + "' has ragged metadata");
        std::copy(md.begin(), md.end(), m.row(k).begin());
    }
    return m;
}

std::optional<std::size_t> DatasetTable::find(std::string_view sample_id) const {
    for (std::size_t i = 0; i < records.size(); ++i)
        if (records[i].sample_id == sample_id) return i;
    return std::nullopt;
}

std::map<std::string, std::string> parse_texts_jsonl(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            std::string id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
            if (!out.emplace(id, j.at("text").get<std::string>()).second) {
                throw ValidationError("JSONL line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
            }
        } catch (const json::exception& e) {
            throw ValidationError("JSONL line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::string format_texts_jsonl(const DatasetTable& table) {
    std::string out;
    for (const auto& r : table.records) {
        if (!r.text) continue;
        json j = {{"id", r.sample_id}, {"text", *r.text}};
        out += j.dump() + "\n";
    }
    return out;
}

DatasetTable parse_table(std::string_view csv_text, const std::optional<std::string>& jsonl_text,
                         const TableSchema& schema, CategoryDictionary dictionary) {
    const auto rows = parse_csv(csv_text);
    if (rows.empty()) throw ValidationError("CSV has no header row");
    const CsvRow& header = rows.front();

    const std::size_t id_col = column_of(header, schema.id_column);
    const std::size_t label_col = column_of(header, schema.label_column);
    std::optional<std::size_t> group_col;
    if (!schema.group_column.empty()) group_col = column_of(header, schema.group_column);
    std::optional<std::size_t> image_col;
    if (!schema.image_index_column.empty()) image_col = column_of(header, schema.image_index_column);
    std::vector<std::size_t> meta_cols;
    for (const auto& c : schema.metadata_columns) meta_cols.push_back(column_of(header, c));
    std::vector<std::size_t> tag_cols;
    for (const auto& c : schema.tag_columns) tag_cols.push_back(column_of(header, c));

    DatasetTable table;
    table.schema = schema;
    table.dictionary = std::move(dictionary);

    std::set<std::string> seen;
    int max_label = -1;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        const std::string where = "CSV row " + std::to_string(r + 1);
        if (row.size() != header.size()) {
            throw ValidationError(where + ": has " + std::to_string(row.size()) + " fields, header has " +
                                  std::to_string(header.size()));
        }
        Record rec;
        rec.sample_id = trim(row[id_col]);
        if (rec.sample_id.empty()) throw ValidationError(where + ": empty sample id");
        if (!seen.insert(rec.sample_id).second) throw ValidationError(where + ": duplicate id '" + rec.sample_id + "'");

        const std::string label_text = trim(row[label_col]);
        if (!schema.label_values.empty()) {
            auto it = std::find(schema.label_values.begin(), schema.label_values.end(), label_text);
            if (it == schema.label_values.end()) throw ValidationError(where + ": unknown label value '" + label_text + "'");
            rec.label = static_cast<int>(it - schema.label_values.begin());
        } else {
            auto v = parse_number(label_text);
            if (!v || *v < 0 || std::floor(*v) != *v) {
                throw ValidationError(where + ": unknown label value '" + label_text + "'");
            }
            rec.label = static_cast<int>(*v);
        }
        if (schema.num_classes > 0 && static_cast<std::size_t>(rec.label) >= schema.num_classes) {
            throw ValidationError(where + ": unknown label value '" + label_text + "'");
        }
        max_label = std::max(max_label, rec.label);

        rec.group_id = group_col ? trim(row[*group_col]) : rec.sample_id;
        if (rec.group_id.empty()) rec.group_id = rec.sample_id;

        if (image_col) {
            const std::string cell = trim(row[*image_col]);
            if (!cell.empty()) {
                auto v = parse_number(cell);
                if (!v || *v < 0 || std::floor(*v) != *v) throw ValidationError(where + ": bad image index '" + cell + "'");
                rec.image_index = static_cast<std::size_t>(*v);
            }
        }

        rec.metadata.reserve(meta_cols.size());
        for (std::size_t m = 0; m < meta_cols.size(); ++m) {
            const std::string& name = schema.metadata_columns[m];
            const std::string cell = trim(row[meta_cols[m]]);
            if (cell.empty()) {
                rec.metadata.push_back(kMissingMetadata);
            } else if (schema.is_categorical(name)) {
                rec.metadata.push_back(table.dictionary.encode(name, cell));
            } else {
                auto v = parse_number(cell);
                if (!v) throw ValidationError(where + ": column '" + name + "' is not numeric: '" + cell + "'");
                rec.metadata.push_back(*v);
            }
        }
        for (std::size_t t = 0; t < tag_cols.size(); ++t) rec.tags[schema.tag_columns[t]] = trim(row[tag_cols[t]]);
        table.records.push_back(std::move(rec));
    }

    if (schema.num_classes > 0) {
        table.num_classes = schema.num_classes;
    } else if (!schema.label_values.empty()) {
        table.num_classes = schema.label_values.size();
    } else {
        table.num_classes = static_cast<std::size_t>(max_label + 1);
    }

    if (jsonl_text) {
        std::unordered_map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < table.records.size(); ++i) index.emplace(table.records[i].sample_id, i);
        for (auto& [id, text] : parse_texts_jsonl(*jsonl_text)) {
            auto it = index.find(id);
            if (it == index.end()) throw ValidationError("JSONL text for unknown sample id '" + id + "'");
            table.records[it->second].text = std::move(text);
        }
    }
    return table;
}

DatasetTable load_table(const std::filesystem::path& csv_path, const std::optional<std::filesystem::path>& jsonl_path,
                        const TableSchema& schema, CategoryDictionary dictionary) {
    std::optional<std::string> jsonl;
    if (jsonl_path) jsonl = read_text(*jsonl_path);
    return parse_table(read_text(csv_path), jsonl, schema, std::move(dictionary));
}

std::string format_table_csv(const DatasetTable& table) {
    const TableSchema& s = table.schema;
    CsvRow header{s.id_column};
    if (!s.image_index_column.empty()) header.push_back(s.image_index_column);
    header.push_back(s.label_column);
    if (!s.group_column.empty()) header.push_back(s.group_column);
    for (const auto& c : s.metadata_columns) header.push_back(c);
    std::vector<std::string> extra_tags;
    for (const auto& t : s.tag_columns) {
        if (std::find(header.begin(), header.end(), t) == header.end()) {
            header.push_back(t);
            extra_tags.push_back(t);
        }
    }

    std::string out = join_csv(header) + "\n";
    for (const auto& r : table.records) {
        CsvRow row{r.sample_id};
        if (!s.image_index_column.empty()) row.push_back(r.image_index ? std::to_string(*r.image_index) : "");
        row.push_back(s.label_values.empty() ? std::to_string(r.label) : s.label_values.at(static_cast<std::size_t>(r.label)));
        if (!s.group_column.empty()) row.push_back(r.group_id);
        for (std::size_t m = 0; m < s.metadata_columns.size(); ++m) {
            const double v = r.metadata[m];
            if (s.is_categorical(s.metadata_columns[m])) {
                row.push_back(v == kMissingMetadata ? "" : table.dictionary.decode(s.metadata_columns[m], static_cast<int>(v)));
            } else {
                row.push_back(format_double(v));
            }
        }
        for (const auto& t : extra_tags) {
            auto it = r.tags.find(t);
            row.push_back(it == r.tags.end() ? "" : it->second);
        }
        out += join_csv(row) + "\n";
    }
    return out;
}

} // namespace divscore::dataio
