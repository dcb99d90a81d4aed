#include "divscore/dataio/csv.hpp"
#include "divscore/error.hpp"
#include "divscore/report.hpp"
#include "divscore/svg.hpp"

#include <catch_amalgamated.hpp>
#include <algorithm>

using namespace divscore;
using namespace divscore::report;
using metrics::Direction;

namespace {

metrics::ScenarioReport sample_report() {
    metrics::ScenarioReport r;
    r.metrics = metrics::standard_metrics();
    r.reference = "reference";
    for (int s = 0; s < 3; ++s) {
        metrics::ScenarioResult res;
        res.scenario = "sc" + std::to_string(s);
        res.n = 10 + s;
        for (std::size_t m = 0; m < r.metrics.size(); ++m) {
            metrics::MetricCell c;
            if (m == 5) {
                c.absent_reason = "no texts";
            } else {
                metrics::MetricValue v{r.metrics[m].name, 0.125 * (m + 1) + s, r.metrics[m].direction, res.n, 5};
                c.value = v;
                if (m == 2) c.ci = resample::BootstrapCI{v.value, v.value - 0.5, v.value + 0.25, 10, 0.95};
            }
            res.cells.push_back(c);
        }
        r.scenarios.push_back(res);
    }
    return r;
}

RunManifest sample_manifest() {
    RunManifest m;
    m.command = "metrics";
    m.config_hash = std::string(64, 'a');
    m.seed = 42;
    m.inputs = {{"data/table.csv", std::string(64, 'b')}};
    m.wall_seconds = 1.5;
    m.timestamp = "2026-01-01T00:00:00Z";
    return m;
}

} // namespace

TEST_CASE("manifest JSON round trip") {
    const auto m = sample_manifest();
    CHECK(manifest_from_json(manifest_to_json(m)) == m);
    RunManifest bare = m;
    bare.wall_seconds.reset();
    bare.timestamp.reset();
    const auto text = manifest_to_json(bare);
    CHECK(text.find("wall_seconds") == std::string::npos);
    CHECK(manifest_from_json(text) == bare);
    CHECK_THROWS_AS(manifest_from_json("[1]"), ValidationError);
}

TEST_CASE("report JSON round trip") {
    const auto r = sample_report();
    const auto parsed = report_from_json(report_to_json(r, sample_manifest()));
    CHECK(parsed.manifest == sample_manifest());
    const auto& back = parsed.report;
    CHECK(back.reference == r.reference);
    REQUIRE(back.metrics.size() == r.metrics.size());
    REQUIRE(back.scenarios.size() == 3);
    for (std::size_t s = 0; s < 3; ++s) {
        CHECK(back.scenarios[s].scenario == r.scenarios[s].scenario);
        CHECK(back.scenarios[s].n == r.scenarios[s].n);
        for (std::size_t m = 0; m < r.metrics.size(); ++m) {
            const auto& a = r.scenarios[s].cells[m];
            const auto& b = back.scenarios[s].cells[m];
            REQUIRE(a.value.has_value() == b.value.has_value());
            if (a.value) {
                CHECK(b.value->value == a.value->value);
                CHECK(b.value->direction == a.value->direction);
                CHECK(b.value->repeats == a.value->repeats);
            } else {
                CHECK(b.absent_reason == a.absent_reason);
            }
            REQUIRE(a.ci.has_value() == b.ci.has_value());
            if (a.ci) {
                CHECK(b.ci->lo == a.ci->lo);
                CHECK(b.ci->hi == a.ci->hi);
            }
        }
    }
    // Serializing the parsed report again is byte-identical.
    CHECK(report_to_json(back, parsed.manifest) == report_to_json(r, sample_manifest()));
}

TEST_CASE("report CSV layout") {
    const auto csv = report_to_csv(sample_report(), sample_manifest());
    CHECK(csv.rfind("# command: metrics\n", 0) == 0);
    const auto rows = dataio::parse_csv(csv);
    REQUIRE(rows.size() == 1 + 8);
    CHECK(rows[0] == dataio::CsvRow{"metric", "direction", "sc0", "sc1", "sc2"});
    CHECK(rows[1][0] == "IS");
    CHECK(rows[1][1] == "↑");
    CHECK(rows[2][1] == "↓");
    CHECK(rows[3][2] == "0.375 [-0.125, 0.625]");
    CHECK(rows[6][2].empty());
}

TEST_CASE("metric rows feed the ranking") {
    const auto r = sample_report();
    const auto names = scenario_names(r);
    const auto rows = metric_rows(r);
    CHECK(names == std::vector<std::string>{"sc0", "sc1", "sc2"});
    const auto ranking = stats::rank_scenarios(names, rows);
    CHECK(ranking.dropped == std::vector<std::string>{"RougeL"});
    CHECK(ranking.rank[0] == std::vector<double>{3, 2, 1}); // IS is higher-better
    CHECK(ranking.rank[1] == std::vector<double>{1, 2, 3}); // FID is lower-better
    const auto csv = ranking_to_csv(ranking, sample_manifest());
    CHECK(csv.find("# unranked: RougeL\n") != std::string::npos);
}

TEST_CASE("correlation CSV round trip and SVG") {
    stats::CorrelationMatrix c{{"IS", "FID", "VS_hog"}, {{1.0, -0.5, std::nullopt}, {-0.5, 1.0, 0.25}, {std::nullopt, 0.25, 1.0}}};
    const auto text = correlation_to_csv(c, sample_manifest());
    const auto back = correlation_from_csv(text);
    CHECK(back.names == c.names);
    CHECK(back.values == c.values);
    CHECK_THROWS_AS(correlation_from_csv("x,y\n1,2\n"), ValidationError);

    const auto svg = correlation_to_svg(c, "Rank <correlation>", sample_manifest());
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("Rank &lt;correlation&gt;") != std::string::npos);
    CHECK(svg.find("n/a") != std::string::npos);
    auto count = [&](const std::string& s) {
        std::size_t n = 0;
        for (auto p = svg.find(s); p != std::string::npos; p = svg.find(s, p + 1)) ++n;
        return n;
    };
    CHECK(count("<text") == count("</text>"));
    CHECK(count("<rect") >= 9);
}

TEST_CASE("svg helpers") {
    CHECK(svg::escape("a<b & \"c\">") == "a&lt;b &amp; &quot;c&quot;&gt;");
    CHECK(svg::diverging_color(0.0) == "#ffffff");
    CHECK(svg::diverging_color(1.0) != svg::diverging_color(-1.0));
    CHECK(svg::sequential_color(0.0) == "#ffffff");
    svg::Document d(10, 20);
    d.rect(0, 0, 1.005, 2, "#000000", "none");
    const auto s = d.str();
    CHECK(s.find("width=\"10.00\"") != std::string::npos);
}

TEST_CASE("manifest embedded in SVG") {
    auto m = sample_manifest();
    m.inputs[0].path = "a--b.csv";
    const auto out = embed_manifest_svg("<svg x=\"1\">\n<rect/>\n</svg>\n", m);
    CHECK(out.find("<svg x=\"1\">\n<!-- command: metrics -->\n") == 0);
    CHECK(out.find("a- -b.csv") != std::string::npos);
    CHECK(out.find("<!-- timestamp: 2026-01-01T00:00:00Z -->") != std::string::npos);
    CHECK_THROWS_AS(embed_manifest_svg("hello", m), ValidationError);
}
