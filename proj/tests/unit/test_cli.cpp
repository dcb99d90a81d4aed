#include "divscore/dataio/csv.hpp"
#include "divscore/dataio/file.hpp"
#include "divscore/dataio/tensor.hpp"
#include "divscore/report.hpp"
#include "support/fixtures.hpp"

#include <catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <map>
#include <cstdlib>
#include <sys/wait.h>

using namespace divscore;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(DIVSCORE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

bool have_python() { return std::system("python3 -c 'import struct' >/dev/null 2>&1") == 0; }

// A small toy dataset shared by the pipeline cases.
const fs::path& toy_dir() {
    static fixture::TempDir dir("cli_toy");
    static bool made = false;
    if (!made) {
        REQUIRE(run("--seed 3 gen-toy --n 12 --reference-n 12 --out " + q(dir / "toy")) == 0);
        made = true;
    }
    static const fs::path p = dir / "toy";
    return p;
}

} // namespace

TEST_CASE("exit codes") {
    fixture::TempDir dir("cli_codes");
    CHECK(run("--version") == 0);
    CHECK(run("") == 1);
    CHECK(run("metrics --bogus") == 1);
    CHECK(run("gen-toy --n 3 --out " + q(dir / "x")) == 1);
    CHECK(run("metrics --data " + q(dir / "missing") + " --out " + q(dir / "r.json")) == 2);
    CHECK(run("rank --report " + q(dir / "none.json") + " --out " + q(dir / "r.csv")) == 2);
    dataio::write_text(dir / "bad.json", "{not json");
    CHECK(run("rank --report " + q(dir / "bad.json") + " --out " + q(dir / "r.csv")) == 1);
}

TEST_CASE("generated dataset has its manifest") {
    const auto& d = toy_dir();
    for (auto f : {"dataset.ini", "table.csv", "texts.jsonl", "images.idx3-ubyte", "scenarios.ini", "manifest.json"})
        CHECK(fs::exists(d / f));
    const auto m = report::manifest_from_json(dataio::read_text(d / "manifest.json"));
    CHECK(m.command == "gen-toy");
    CHECK(m.seed == 3);
}

TEST_CASE("pipeline output is byte identical under --reproducible") {
    fixture::TempDir dir("cli_repro");
    const auto data = q(toy_dir());
    // Both runs use the same paths, since paths are part of the manifest.
    const fs::path o = dir / "work";
    const std::vector<std::string> files{"log.csv",   "model.json", "folds.csv",  "report.json",        "report.csv",
                                         "ranks.csv", "corr.csv",   "corr.svg",   "points.csv",         "map.svg",
                                         "tables/metrics.csv",      "tables/correlation.svg"};
    std::vector<std::map<std::string, std::string>> snapshots;
    for (int pass = 0; pass < 2; ++pass) {
        fs::remove_all(o);
        fs::create_directories(o);
        REQUIRE(run("--seed 5 --reproducible train --data " + data + " --k 3 --epochs 4 --lr 0.01 --log " +
                    q(o / "log.csv") + " --model " + q(o / "model.json") + " --folds " + q(o / "folds.csv")) == 0);
        REQUIRE(run("--seed 5 --reproducible metrics --data " + data + " --model " + q(o / "model.json") +
                    " --repeats 2 --out " + q(o / "report.json") + " --csv " + q(o / "report.csv")) == 0);
        REQUIRE(run("--reproducible rank --report " + q(o / "report.json") + " --out " + q(o / "ranks.csv")) == 0);
        REQUIRE(run("--reproducible correlate --report " + q(o / "report.json") + " --out " + q(o / "corr.csv") + "," +
                    q(o / "corr.svg")) == 0);
        REQUIRE(run("--reproducible datamap --log " + q(o / "log.csv") + " --data " + data +
                    " --tag perturbation --out " + q(o / "points.csv") + " --svg " + q(o / "map.svg")) == 0);
        REQUIRE(run("--reproducible report --report " + q(o / "report.json") + " --out-dir " + q(o / "tables")) == 0);
        auto& snap = snapshots.emplace_back();
        for (const auto& f : files) snap[f] = dataio::read_text(o / f);
    }
    for (const auto& f : files) {
        INFO(f);
        CHECK(snapshots[0].at(f) == snapshots[1].at(f));
    }

    const auto parsed = report::report_from_json(dataio::read_text(o / "report.json"));
    CHECK(parsed.manifest.command == "metrics");
    CHECK(parsed.manifest.seed == 5);
    CHECK(!parsed.manifest.wall_seconds);
    CHECK(!parsed.manifest.inputs.empty());
    CHECK(parsed.report.reference == "reference");
    CHECK(parsed.report.scenarios.size() == 9);
    const auto is = *parsed.report.metric_index("IS");
    for (const auto& s : parsed.report.scenarios) CHECK(s.cells[is].value);

    for (auto f : {"report.csv", "ranks.csv", "corr.csv", "points.csv"}) {
        INFO(f);
        CHECK(dataio::read_text(o / f).rfind("# command: ", 0) == 0);
    }
    for (auto f : {"corr.svg", "map.svg", "tables/correlation.svg"}) {
        INFO(f);
        CHECK(dataio::read_text(o / f).find("<!-- config_hash: ") != std::string::npos);
    }

    const auto corr = report::correlation_from_csv(dataio::read_text(o / "corr.csv"));
    REQUIRE(corr.names.size() >= 6);
    for (std::size_t i = 0; i < corr.names.size(); ++i) {
        CHECK(corr.values[i][i] == 1.0);
        for (std::size_t j = 0; j < corr.names.size(); ++j) CHECK(corr.values[i][j] == corr.values[j][i]);
    }
}

TEST_CASE("a different seed changes the subsampled metrics") {
    fixture::TempDir dir("cli_seed");
    const auto data = q(toy_dir());
    REQUIRE(run("--seed 1 --reproducible metrics --data " + data + " --out " + q(dir / "a.json")) == 0);
    REQUIRE(run("--seed 2 --reproducible metrics --data " + data + " --out " + q(dir / "b.json")) == 0);
    const auto a = report::report_from_json(dataio::read_text(dir / "a.json")).report;
    const auto b = report::report_from_json(dataio::read_text(dir / "b.json")).report;
    const auto vs = *a.metric_index("VS_hog");
    const auto fid = *a.metric_index("FID");
    CHECK(a.scenarios[0].cells[vs].value->value != b.scenarios[0].cells[vs].value->value);
    CHECK(a.scenarios[0].cells[fid].value->value == b.scenarios[0].cells[fid].value->value);
}

TEST_CASE("extract writes DIVT features") {
    fixture::TempDir dir("cli_extract");
    REQUIRE(run("extract --data " + q(toy_dir()) + " --features hog --out " + q(dir / "hog.divt")) == 0);
    const auto t = dataio::decode_tensor(dataio::read_bytes(dir / "hog.divt"));
    CHECK(t.rows == 12 * 5 + 12);
    CHECK(t.cols == 324);
    CHECK(run("extract --data " + q(toy_dir()) + " --features wavelet --out " + q(dir / "w.divt")) == 1);
}

TEST_CASE("DIVT written by an external Python exporter") {
    if (!have_python()) SKIP("python3 is not available");
    fixture::TempDir dir("cli_interop");
    const std::string script = DIVSCORE_INTEROP_SCRIPT;
    const auto path = dir / "ext.divt";
    REQUIRE(std::system(("python3 '" + script + "' " + q(path) + " 3 4").c_str()) == 0);
    const auto t = dataio::decode_tensor(dataio::read_bytes(path));
    REQUIRE(t.rows == 3);
    REQUIRE(t.cols == 4);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(t.values[r * 4 + c] == static_cast<float>(std::sin(7.0 * r + c) + c / 8.0));

    // The same exporter output drives the external-feature metrics.
    const auto rows = std::to_string(12 * 5 + 12);
    REQUIRE(std::system(("python3 '" + script + "' " + q(dir / "feat.divt") + " " + rows + " 16").c_str()) == 0);
    REQUIRE(run("--reproducible metrics --data " + q(toy_dir()) + " --external " + q(dir / "feat.divt") +
                " --features external --out " + q(dir / "r.json")) == 0);
    const auto rep = report::report_from_json(dataio::read_text(dir / "r.json")).report;
    CHECK(rep.scenarios[0].cells[*rep.metric_index("VS_external")].value);
    CHECK(rep.scenarios[0].cells[*rep.metric_index("FID")].value);

    REQUIRE(std::system(("python3 '" + script + "' " + q(dir / "short.divt") + " 5 16").c_str()) == 0);
    CHECK(run("metrics --data " + q(toy_dir()) + " --external " + q(dir / "short.divt") + " --out " +
              q(dir / "r2.json")) == 1);
}
