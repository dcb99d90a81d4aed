#include "divscore/dataio/scenario.hpp"

#include "divscore/dataio/file.hpp"
#include "divscore/error.hpp"

#include <algorithm>

namespace divscore::dataio {
namespace {

constexpr std::string_view kScenarioPrefix = "scenario ";
constexpr std::string_view kElementOf = "\xE2\x88\x88"; // U+2208

std::vector<std::string> split_terms(std::string_view text) {
    std::vector<std::string> terms;
    std::string cur;
    std::size_t i = 0;
    int depth = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (depth == 0 && c == '&') {
            terms.push_back(trim(cur));
            cur.clear();
            i += (i + 1 < text.size() && text[i + 1] == '&') ? 2 : 1;
            continue;
        }
        if (depth == 0 && text.substr(i, 5) == " and ") {
            terms.push_back(trim(cur));
            cur.clear();
            i += 5;
            continue;
        }
        cur.push_back(c);
        ++i;
    }
    terms.push_back(trim(cur));
    return terms;
}

FilterTerm parse_term(const std::string& term) {
    if (term.empty()) throw ValidationError("empty filter term");
    std::size_t op_pos = term.find(kElementOf);
    if (op_pos == std::string::npos) op_pos = term.find(" in ");
    if (op_pos != std::string::npos) {
        const std::size_t set_start = term.find('{', op_pos);
        const std::size_t set_end = term.rfind('}');
        if (set_start == std::string::npos || set_end == std::string::npos || set_end < set_start) {
            throw ValidationError("filter term '" + term + "': expected tag in {a, b}");
        }
        FilterTerm t{trim(std::string_view(term).substr(0, op_pos)),
                     split_list(std::string_view(term).substr(set_start + 1, set_end - set_start - 1))};
        if (t.tag.empty() || t.values.empty()) throw ValidationError("filter term '" + term + "' is incomplete");
        return t;
    }
    const std::size_t eq = term.find('=');
    if (eq == std::string::npos) throw ValidationError("filter term '" + term + "': expected tag=value");
    FilterTerm t{trim(std::string_view(term).substr(0, eq)), {trim(std::string_view(term).substr(eq + 1))}};
    if (t.tag.empty() || t.values.front().empty()) throw ValidationError("filter term '" + term + "' is incomplete");
    return t;
}

} // namespace

const Scenario* ScenarioConfig::find(std::string_view name) const {
    for (const auto& s : scenarios)
        if (s.name == name) return &s;
    return nullptr;
}

std::vector<FilterTerm> parse_filter(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty() || t == "*") return {};
    std::vector<FilterTerm> out;
    for (const auto& term : split_terms(t)) out.push_back(parse_term(term));
    return out;
}

std::string format_filter(const std::vector<FilterTerm>& filter) {
    if (filter.empty()) return "*";
    std::string out;
    for (std::size_t i = 0; i < filter.size(); ++i) {
        if (i) out += " & ";
        const auto& term = filter[i];
        if (term.values.size() == 1) {
            out += term.tag + "=" + term.values.front();
        } else {
            out += term.tag + " in {";
            for (std::size_t v = 0; v < term.values.size(); ++v) out += (v ? "," : "") + term.values[v];
            out += "}";
        }
    }
    return out;
}

ScenarioConfig parse_scenario_config(std::string_view text) {
    const IniDocument doc = parse_ini(text);
    ScenarioConfig config;
    for (const auto& section : doc.sections) {
        if (section.name == "config") {
            if (auto ref = section.get("reference"); ref && !ref->empty()) config.reference_scenario = *ref;
            continue;
        }
        if (section.name.rfind(kScenarioPrefix, 0) != 0) {
            throw ValidationError("scenario config: unexpected section [" + section.name + "]");
        }
        Scenario s;
        s.name = trim(std::string_view(section.name).substr(kScenarioPrefix.size()));
        if (s.name.empty()) throw ValidationError("scenario config: scenario without a name");
        if (config.find(s.name) != nullptr) throw ValidationError("scenario config: duplicate scenario '" + s.name + "'");
        s.filter = parse_filter(section.get("filter").value_or("*"));
        config.scenarios.push_back(std::move(s));
    }
    if (config.reference_scenario && config.find(*config.reference_scenario) == nullptr) {
        throw ValidationError("scenario config: reference '" + *config.reference_scenario + "' is not a scenario");
    }
    return config;
}

std::string format_scenario_config(const ScenarioConfig& config) {
    IniDocument doc;
    if (config.reference_scenario) doc.sections.push_back({"config", {{"reference", *config.reference_scenario}}});
    for (const auto& s : config.scenarios) {
        doc.sections.push_back({std::string(kScenarioPrefix) + s.name, {{"filter", format_filter(s.filter)}}});
    }
    return format_ini(doc);
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
    return parse_scenario_config(read_text(path));
}

std::vector<ScenarioSelection> materialize_scenarios(const ScenarioConfig& config, const DatasetTable& table) {
    const auto& tags = table.schema.tag_columns;
    std::vector<ScenarioSelection> out;
    for (const auto& scenario : config.scenarios) {
        for (const auto& term : scenario.filter) {
            if (term.tag != "label" && std::find(tags.begin(), tags.end(), term.tag) == tags.end()) {
                throw ValidationError("scenario '" + scenario.name + "': unknown tag '" + term.tag + "'");
            }
        }
        ScenarioSelection sel{scenario.name, {}};
        for (std::size_t i = 0; i < table.size(); ++i) {
            const Record& r = table.records[i];
            const bool keep = std::all_of(scenario.filter.begin(), scenario.filter.end(), [&](const FilterTerm& term) {
                std::string value;
                if (term.tag == "label") {
                    value = table.schema.label_values.empty()
                                ? std::to_string(r.label)
                                : table.schema.label_values.at(static_cast<std::size_t>(r.label));
                } else {
                    auto it = r.tags.find(term.tag);
                    if (it != r.tags.end()) value = it->second;
                }
                return std::find(term.values.begin(), term.values.end(), value) != term.values.end();
            });
            if (keep) sel.indices.push_back(i);
        }
        if (sel.indices.size() < 2) {
            throw ValidationError("scenario '" + scenario.name + "' selects " + std::to_string(sel.indices.size()) +
                                  " samples; at least 2 are required");
        }
        std::stable_sort(sel.indices.begin(), sel.indices.end(), [&](std::size_t a, std::size_t b) {
            return table.records[a].sample_id < table.records[b].sample_id;
        });
        out.push_back(std::move(sel));
    }
    return out;
}

} // namespace divscore::dataio
