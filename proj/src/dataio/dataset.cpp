#include "divscore/dataio/dataset.hpp"

#include "divscore/dataio/file.hpp"
#include "divscore/error.hpp"

#include <algorithm>

namespace divscore::dataio {

Dataset load_dataset(const std::filesystem::path& root) {
    const auto manifest_path = root / kDatasetManifest;
    if (!std::filesystem::exists(manifest_path)) throw IoError("no " + std::string(kDatasetManifest) + " in " + root.string());
    const IniDocument doc = parse_ini(read_text(manifest_path));

    Dataset ds;
    ds.root = root;
    if (const IniSection* files = doc.find("files")) {
        if (auto v = files->get("table")) ds.layout.table = *v;
        ds.layout.texts = files->get("texts").value_or("");
        ds.layout.images = files->get("images").value_or("");
        if (auto v = files->get("dictionary")) ds.layout.dictionary = *v;
        if (auto v = files->get("scenarios")) ds.layout.scenarios = *v;
    }
    const IniSection* table_section = doc.find("table");
    if (table_section == nullptr) throw ValidationError(manifest_path.string() + ": missing [table] section");
    const TableSchema schema = schema_from_ini(*table_section);

    CategoryDictionary dictionary;
    if (!ds.layout.dictionary.empty() && std::filesystem::exists(root / ds.layout.dictionary)) {
        dictionary = CategoryDictionary::from_json(read_text(root / ds.layout.dictionary));
    }
    std::optional<std::filesystem::path> texts;
    if (!ds.layout.texts.empty()) texts = root / ds.layout.texts;
    ds.table = load_table(root / ds.layout.table, texts, schema, std::move(dictionary));

    if (!ds.layout.images.empty()) {
        ds.images = decode_idx_images(read_bytes(root / ds.layout.images));
        for (const auto& r : ds.table.records) {
            if (r.image_index && *r.image_index >= ds.images->count) {
                throw ValidationError("sample '" + r.sample_id + "' references image " + std::to_string(*r.image_index) +
                                      " but the stack holds " + std::to_string(ds.images->count));
            }
        }
    }
    ds.scenarios = load_scenario_config(root / ds.layout.scenarios);
    return ds;
}

void save_dataset(const std::filesystem::path& root, const DatasetTable& table, const std::optional<ImageStack>& images,
                  const ScenarioConfig& scenarios, const DatasetLayout& layout_in) {
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    if (ec) throw IoError("cannot create " + root.string() + ": " + ec.message());

    DatasetLayout layout = layout_in;
    const bool has_text = std::any_of(table.records.begin(), table.records.end(), [](const Record& r) { return r.text.has_value(); });
    if (has_text && layout.texts.empty()) layout.texts = "texts.jsonl";
    if (!has_text) layout.texts.clear();
    if (images && layout.images.empty()) layout.images = "images.idx3-ubyte";
    if (!images) layout.images.clear();

    IniDocument doc;
    doc.sections.push_back({"files",
                            {{"table", layout.table},
                             {"texts", layout.texts},
                             {"images", layout.images},
                             {"dictionary", layout.dictionary},
                             {"scenarios", layout.scenarios}}});
    doc.sections.push_back(schema_to_ini(table.schema));
    write_text(root / kDatasetManifest, format_ini(doc));
    write_text(root / layout.table, format_table_csv(table));
    if (!layout.texts.empty()) write_text(root / layout.texts, format_texts_jsonl(table));
    write_text(root / layout.dictionary, table.dictionary.to_json());
    write_text(root / layout.scenarios, format_scenario_config(scenarios));
    if (images) write_bytes(root / layout.images, encode_idx_images(*images));
}

} // namespace divscore::dataio
