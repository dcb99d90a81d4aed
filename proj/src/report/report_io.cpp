#include "divscore/dataio/csv.hpp"
#include "divscore/error.hpp"
#include "divscore/report.hpp"
#include "divscore/svg.hpp"

#include <charconv>
#include <cstdio>
#include <json.hpp>

namespace divscore::report {

using nlohmann::json;

namespace {

json manifest_object(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["config_hash"] = m.config_hash;
    j["seed"] = m.seed;
    j["version"] = m.version;
    json inputs = json::array();
    for (const auto& in : m.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
    j["inputs"] = inputs;
    if (m.wall_seconds) j["wall_seconds"] = *m.wall_seconds;
    if (m.timestamp) j["timestamp"] = *m.timestamp;
    return j;
}

RunManifest manifest_from_object(const json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    for (const auto& in : j.at("inputs")) m.inputs.push_back({in.at("path"), in.at("sha256")});
    if (j.contains("wall_seconds")) m.wall_seconds = j["wall_seconds"].get<double>();
    if (j.contains("timestamp")) m.timestamp = j["timestamp"].get<std::string>();
    return m;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

std::string manifest_to_json(const RunManifest& manifest) { return manifest_object(manifest).dump(2); }

RunManifest manifest_from_json(std::string_view text) {
    try {
        return manifest_from_object(json::parse(text));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed run manifest: ") + e.what());
    }
}

std::string manifest_comment_lines(const RunManifest& m) {
    std::string out = "# command: " + m.command + "\n# version: " + m.version + "\n# seed: " + std::to_string(m.seed) +
                      "\n# config_hash: " + m.config_hash + "\n";
    for (const auto& in : m.inputs) out += "# input: " + in.path + " sha256=" + in.sha256 + "\n";
    if (m.wall_seconds) out += "# wall_seconds: " + dataio::format_double(*m.wall_seconds) + "\n";
    if (m.timestamp) out += "# timestamp: " + *m.timestamp + "\n";
    return out;
}

std::string report_to_json(const metrics::ScenarioReport& report, const RunManifest& manifest) {
    json j;
    j["manifest"] = manifest_object(manifest);
    if (report.reference) j["reference"] = *report.reference;
    json metric_list = json::array();
    for (const auto& m : report.metrics)
        metric_list.push_back({{"name", m.name},
                               {"direction", std::string(metrics::to_string(m.direction))},
                               {"arrow", std::string(metrics::arrow(m.direction))}});
    j["metrics"] = metric_list;
    json scen = json::array();
    for (const auto& s : report.scenarios) {
        json values = json::object();
        for (std::size_t m = 0; m < s.cells.size(); ++m) {
            const auto& cell = s.cells[m];
            json c;
            if (cell.value) {
                c["value"] = cell.value->value;
                c["n_used"] = cell.value->n_used;
                c["repeats"] = cell.value->repeats;
                if (cell.ci) {
                    c["ci"] = {{"lo", cell.ci->lo}, {"hi", cell.ci->hi}, {"point", cell.ci->point},
                               {"reps", cell.ci->reps}, {"level", cell.ci->level}};
                }
            } else {
                c["absent"] = cell.absent_reason;
            }
            values[report.metrics[m].name] = c;
        }
        scen.push_back({{"name", s.scenario}, {"n", s.n}, {"values", values}});
    }
    j["scenarios"] = scen;
    return j.dump(2) + "\n";
}

ParsedReport report_from_json(std::string_view text) {
    try {
        const auto j = json::parse(text);
        ParsedReport out;
        out.manifest = manifest_from_object(j.at("manifest"));
        auto& r = out.report;
        if (j.contains("reference")) r.reference = j["reference"].get<std::string>();
        for (const auto& m : j.at("metrics")) {
            r.metrics.push_back(
                {m.at("name").get<std::string>(), metrics::parse_direction(m.at("direction").get<std::string>())});
        }
        for (const auto& s : j.at("scenarios")) {
            metrics::ScenarioResult res;
            res.scenario = s.at("name").get<std::string>();
            res.n = s.at("n").get<std::size_t>();
            const auto& values = s.at("values");
            for (const auto& m : r.metrics) {
                metrics::MetricCell cell;
                const auto& c = values.at(m.name);
                if (c.contains("value")) {
                    metrics::MetricValue v;
                    v.name = m.name;
                    v.direction = m.direction;
                    v.value = c.at("value").get<double>();
                    v.n_used = c.at("n_used").get<std::size_t>();
                    v.repeats = c.at("repeats").get<int>();
                    cell.value = v;
                    if (c.contains("ci")) {
                        const auto& ci = c["ci"];
                        cell.ci = resample::BootstrapCI{ci.at("point").get<double>(), ci.at("lo").get<double>(),
                                                        ci.at("hi").get<double>(), ci.at("reps").get<std::size_t>(),
                                                        ci.at("level").get<double>()};
                    }
                } else {
                    cell.absent_reason = c.at("absent").get<std::string>();
                }
                res.cells.push_back(std::move(cell));
            }
            r.scenarios.push_back(std::move(res));
        }
        return out;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed report JSON: ") + e.what());
    }
}

std::string report_to_csv(const metrics::ScenarioReport& report, const RunManifest& manifest) {
    std::string out = manifest_comment_lines(manifest);
    dataio::CsvRow header{"metric", "direction"};
    for (const auto& s : report.scenarios) header.push_back(s.scenario);
    out += dataio::join_csv(header) + "\n";
    for (std::size_t m = 0; m < report.metrics.size(); ++m) {
        dataio::CsvRow row{report.metrics[m].name, std::string(metrics::arrow(report.metrics[m].direction))};
        for (const auto& s : report.scenarios) {
            const auto& cell = s.cells[m];
            if (!cell.value) {
                row.emplace_back();
                continue;
            }
            std::string text = dataio::format_double(cell.value->value);
            if (cell.ci) {
                text += " [" + dataio::format_double(cell.ci->lo) + ", " + dataio::format_double(cell.ci->hi) + "]";
            }
            row.push_back(text);
        }
        out += dataio::join_csv(row) + "\n";
    }
    return out;
}

std::vector<std::string> scenario_names(const metrics::ScenarioReport& report) {
    std::vector<std::string> names;
    for (const auto& s : report.scenarios) names.push_back(s.scenario);
    return names;
}

std::vector<stats::MetricRow> metric_rows(const metrics::ScenarioReport& report) {
    std::vector<stats::MetricRow> rows;
    for (std::size_t m = 0; m < report.metrics.size(); ++m) {
        stats::MetricRow row{report.metrics[m].name, report.metrics[m].direction, {}};
        for (const auto& s : report.scenarios) {
            const auto& cell = s.cells.at(m);
            row.values.push_back(cell.value ? std::optional<double>(cell.value->value) : std::nullopt);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string ranking_to_csv(const stats::RankingMatrix& ranking, const RunManifest& manifest) {
    std::string out = manifest_comment_lines(manifest);
    for (const auto& d : ranking.dropped) out += "# unranked: " + d + "\n";
    dataio::CsvRow header{"metric", "direction"};
    header.insert(header.end(), ranking.scenarios.begin(), ranking.scenarios.end());
    out += dataio::join_csv(header) + "\n";
    for (std::size_t m = 0; m < ranking.metrics.size(); ++m) {
        dataio::CsvRow row{ranking.metrics[m], std::string(metrics::arrow(ranking.directions[m]))};
        for (double r : ranking.rank[m]) row.push_back(dataio::format_double(r));
        out += dataio::join_csv(row) + "\n";
    }
    return out;
}

std::string correlation_to_csv(const stats::CorrelationMatrix& corr, const RunManifest& manifest) {
    std::string out = manifest_comment_lines(manifest);
    dataio::CsvRow header{"metric"};
    header.insert(header.end(), corr.names.begin(), corr.names.end());
    out += dataio::join_csv(header) + "\n";
    for (std::size_t i = 0; i < corr.names.size(); ++i) {
        dataio::CsvRow row{corr.names[i]};
        for (const auto& v : corr.values[i]) row.push_back(v ? dataio::format_double(*v) : std::string());
        out += dataio::join_csv(row) + "\n";
    }
    return out;
}

stats::CorrelationMatrix correlation_from_csv(std::string_view text) {
    const auto rows = dataio::parse_csv(text);
    if (rows.empty() || rows.front().empty() || rows.front()[0] != "metric") {
        throw ValidationError("correlation CSV must start with a 'metric' header");
    }
    stats::CorrelationMatrix out;
    out.names.assign(rows.front().begin() + 1, rows.front().end());
    const std::size_t m = out.names.size();
    if (rows.size() != m + 1) throw ValidationError("correlation CSV is not square");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != m + 1) throw ValidationError("correlation CSV row " + std::to_string(i) + " is ragged");
        std::vector<std::optional<double>> vals;
        for (std::size_t j = 1; j <= m; ++j) {
            const auto& cell = rows[i][j];
            if (cell.empty()) {
                vals.emplace_back();
                continue;
            }
            double v = 0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || p != cell.data() + cell.size()) {
                throw ValidationError("correlation CSV cell '" + cell + "' is not a number");
            }
            vals.push_back(v);
        }
        out.values.push_back(std::move(vals));
    }
    return out;
}

std::string embed_manifest_svg(std::string svg_text, const RunManifest& manifest) {
    const auto at = svg_text.find(">\n");
    if (svg_text.rfind("<svg", 0) != 0 || at == std::string::npos) throw ValidationError("not an SVG document");
    std::string block;
    const std::string lines = manifest_comment_lines(manifest);
    for (std::size_t pos = 0; pos < lines.size();) {
        const auto end = lines.find('\n', pos);
        std::string line = lines.substr(pos + 2, end - pos - 2); // drop "# "
        for (std::size_t p; (p = line.find("--")) != std::string::npos;) line.replace(p, 2, "- -");
        block += "<!-- " + line + " -->\n";
        pos = end + 1;
    }
    svg_text.insert(at + 2, block);
    return svg_text;
}

std::string correlation_to_svg(const stats::CorrelationMatrix& corr, const std::string& title,
                               const RunManifest& manifest) {
    const std::size_t m = corr.names.size();
    constexpr double cell = 56.0;
    constexpr double left = 110.0;
    constexpr double top = 110.0;
    svg::Document doc(left + cell * static_cast<double>(m) + 20.0, top + cell * static_cast<double>(m) + 40.0);
    doc.text(10.0, 22.0, title, 14.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double c = static_cast<double>(i);
        doc.text(left - 6.0, top + (c + 0.5) * cell + 4.0, corr.names[i], 11.0, 0.0, "end");
        doc.text(left + (c + 0.5) * cell, top - 8.0, corr.names[i], 11.0, -45.0, "start");
        for (std::size_t j = 0; j < m; ++j) {
            const auto& v = corr.values[i][j];
            const double x = left + static_cast<double>(j) * cell;
            const double y = top + c * cell;
            doc.rect(x, y, cell, cell, v ? svg::diverging_color(*v) : "#dddddd", "#ffffff");
            doc.text(x + cell / 2.0, y + cell / 2.0 + 4.0, v ? fixed(*v, 2) : "n/a", 11.0, 0.0, "middle");
        }
    }
    return embed_manifest_svg(doc.str(), manifest);
}

} // namespace divscore::report
