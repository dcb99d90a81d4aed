#include "divscore/dataio/csv.hpp"
#include "divscore/dataio/dataset.hpp"
#include "divscore/dataio/file.hpp"
#include "divscore/dataio/idx.hpp"
#include "divscore/dataio/ini.hpp"
#include "divscore/dataio/scenario.hpp"
#include "divscore/dataio/table.hpp"
#include "divscore/dataio/tensor.hpp"
#include "divscore/error.hpp"
#include "divscore/resample.hpp"
#include "support/fixtures.hpp"

#include <catch_amalgamated.hpp>
#include <cmath>
#include <cstring>
#include <functional>
#include <limits>

using namespace divscore;
using namespace divscore::dataio;

namespace {

std::vector<std::uint8_t> be32(std::uint32_t v) {
    return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8),
            static_cast<std::uint8_t>(v)};
}

std::vector<std::uint8_t> idx_header(std::uint32_t magic, std::initializer_list<std::uint32_t> dims) {
    auto out = be32(magic);
    for (auto d : dims) {
        auto b = be32(d);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

ParseErrc parse_code(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.code();
    }
    FAIL("no ParseError thrown");
    return ParseErrc::empty;
}

} // namespace

TEST_CASE("IDX images decode and re-encode byte-identically") {
    auto bytes = idx_header(0x803, {2, 28, 28});
    for (int i = 0; i < 1568; ++i) bytes.push_back(static_cast<std::uint8_t>(i * 7));
    const auto stack = decode_idx_images(bytes);
    CHECK(stack.count == 2);
    CHECK(stack.height == 28);
    CHECK(stack.width == 28);
    CHECK(stack.image(1)[0] == static_cast<std::uint8_t>(784 * 7));
    CHECK(encode_idx_images(stack) == bytes);
}

TEST_CASE("IDX labels") {
    auto bytes = idx_header(0x801, {3});
    bytes.insert(bytes.end(), {7, 1, 9});
    CHECK(decode_idx_labels(bytes) == std::vector<std::uint8_t>{7, 1, 9});
    CHECK(encode_idx_labels(std::vector<std::uint8_t>{7, 1, 9}) == bytes);
}

TEST_CASE("IDX errors are distinct") {
    CHECK(parse_code([] { decode_idx_images(idx_header(0x703, {1, 1, 1})); }) == ParseErrc::bad_magic);
    CHECK(parse_code([] { decode_idx_images(idx_header(0x801, {1})); }) == ParseErrc::bad_magic);
    CHECK(parse_code([] { decode_idx_images(idx_header(0x803, {2, 2, 2})); }) == ParseErrc::truncated);
    CHECK(parse_code([] { decode_idx_images(std::vector<std::uint8_t>{0, 0, 8}); }) == ParseErrc::truncated);
    CHECK(parse_code([] { decode_idx_images(idx_header(0x803, {0xFFFFFFFF, 0xFFFFFFFF, 0xFFFFFFFF})); }) ==
          ParseErrc::dim_overflow);
    auto extra = idx_header(0x803, {1, 1, 1});
    extra.insert(extra.end(), {1, 2});
    CHECK(parse_code([&] { decode_idx_images(extra); }) == ParseErrc::size_mismatch);
}

TEST_CASE("IDX round trip on random stacks") {
    resample::Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const std::size_t c = 1 + rng.below(5), h = 1 + rng.below(9), w = 1 + rng.below(9);
        std::vector<std::uint8_t> px(c * h * w);
        for (auto& p : px) p = static_cast<std::uint8_t>(rng.below(256));
        const auto s = make_image_stack(c, h, w, px);
        CHECK(decode_idx_images(encode_idx_images(s)) == s);
    }
    CHECK_THROWS_AS(make_image_stack(1, 0, 3, {}), ValidationError);
    CHECK_THROWS_AS(make_image_stack(1, 2, 2, {1, 2, 3}), ValidationError);
}

TEST_CASE("DIVT smallest file") {
    TensorFile t{1, 2, {1.0f, -1.0f}};
    const auto bytes = encode_tensor(t);
    CHECK(bytes.size() == 32);
    CHECK(bytes[0] == 'D');
    CHECK(bytes[3] == 'T');
    CHECK(bytes[4] == 1);
    CHECK(bytes[8] == 1);
    CHECK(bytes[16] == 2);
    // 1.0f little-endian
    CHECK(bytes[24] == 0x00);
    CHECK(bytes[27] == 0x3F);
    CHECK(decode_tensor(bytes) == t);
}

TEST_CASE("DIVT errors") {
    CHECK(parse_code([] { encode_tensor(TensorFile{0, 2, {}}); }) == ParseErrc::empty);
    auto good = encode_tensor(TensorFile{1, 2, {1.0f, 2.0f}});

    auto zero_rows = good;
    zero_rows[8] = 0;
    CHECK(parse_code([&] { decode_tensor(zero_rows); }) == ParseErrc::empty);

    auto nan = good;
    const float q = std::numeric_limits<float>::quiet_NaN();
    std::memcpy(nan.data() + 28, &q, 4);
    CHECK(parse_code([&] { decode_tensor(nan); }) == ParseErrc::non_finite);

    auto magic = good;
    magic[0] = 'X';
    CHECK(parse_code([&] { decode_tensor(magic); }) == ParseErrc::bad_magic);
    auto version = good;
    version[4] = 2;
    CHECK(parse_code([&] { decode_tensor(version); }) == ParseErrc::bad_version);
    auto shorter = good;
    shorter.pop_back();
    CHECK(parse_code([&] { decode_tensor(shorter); }) == ParseErrc::size_mismatch);
    auto longer = good;
    longer.push_back(0);
    CHECK(parse_code([&] { decode_tensor(longer); }) == ParseErrc::size_mismatch);
    CHECK(parse_code([&] { decode_tensor(std::span(good).first(10)); }) == ParseErrc::truncated);
    CHECK_THROWS_AS(encode_tensor(TensorFile{1, 1, {std::numeric_limits<float>::infinity()}}), ParseError);
}

TEST_CASE("DIVT round trip on random tensors") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto m = fixture::random_matrix(1 + s % 7, 1 + s % 5, s, -1e6, 1e6);
        const auto t = tensor_from_matrix(m);
        const auto bytes = encode_tensor(t);
        CHECK(decode_tensor(bytes) == t);
        CHECK(encode_tensor(decode_tensor(bytes)) == bytes);
    }
}

TEST_CASE("CSV splitting and escaping") {
    CHECK(split_csv_line("a,\"b,c\",\"d\"\"e\"") == CsvRow{"a", "b,c", "d\"e"});
    CHECK(split_csv_line("x,,") == CsvRow{"x", "", ""});
    const CsvRow row{"plain", "with,comma", "with\"quote", ""};
    CHECK(split_csv_line(join_csv(row)) == row);
    const auto doc = parse_csv("# comment\r\nh1,h2\r\n\r\n1,2\r\n");
    REQUIRE(doc.size() == 2);
    CHECK(doc[1] == CsvRow{"1", "2"});
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-1) == "-1");
}

TEST_CASE("INI parsing") {
    const auto doc = parse_ini("# top\n[a]\nk = v\n; c\nlist = x, y\n[b]\n");
    REQUIRE(doc.sections.size() == 2);
    CHECK(doc.find("a")->get("k") == "v");
    CHECK(split_list(*doc.find("a")->get("list")) == std::vector<std::string>{"x", "y"});
    CHECK(parse_ini(format_ini(doc)).sections.size() == 2);
    CHECK_THROWS_AS(parse_ini("[a]\n[a]\n"), ValidationError);
    CHECK_THROWS_AS(parse_ini("[a]\nnovalue\n"), ValidationError);
    CHECK_THROWS_AS(parse_ini("[a\n"), ValidationError);
}

namespace {

TableSchema padchest_schema() {
    TableSchema s;
    s.group_column = "patient";
    s.metadata_columns = {"age", "sex", "projection", "scanner"};
    s.categorical_columns = {"sex", "projection", "scanner"};
    s.tag_columns = {"sex", "scanner"};
    return s;
}

} // namespace

TEST_CASE("table loading maps metadata and labels") {
    CategoryDictionary dict;
    dict.encode("sex", "F");
    dict.encode("sex", "M");
    const std::string csv = "sample_id,age,sex,projection,scanner,label,patient\n"
                            "s1,45,F,PA,Philips,0,p1\n"
                            "s2,,M,AP,GE,1,p1\n";
    const auto t = parse_table(csv, std::nullopt, padchest_schema(), dict);
    REQUIRE(t.size() == 2);
    const auto& r = t.records[0];
    CHECK(r.metadata == std::vector<double>{45, 0, 0, 0});
    CHECK(r.label == 0);
    CHECK(r.group_id == "p1");
    CHECK(r.tags.at("scanner") == "Philips");
    CHECK(t.records[1].metadata[0] == -1.0);
    CHECK(t.records[1].metadata[1] == 1.0);
    CHECK(t.dictionary.find("projection", "AP") == 1);
}

TEST_CASE("table errors") {
    const auto s = padchest_schema();
    CHECK_THROWS_AS(parse_table("sample_id,age,sex,projection,scanner,label,patient\n"
                                "s1,1,F,PA,GE,0,p\ns1,2,F,PA,GE,1,q\n",
                                std::nullopt, s),
                    ValidationError);
    CHECK_THROWS_AS(parse_table("sample_id,age,sex,projection,scanner,label,patient\ns1,1,F,PA,GE,0\n", std::nullopt,
                                s),
                    ValidationError);
    TableSchema named = s;
    named.label_values = {"healthy", "sick"};
    CHECK_THROWS_AS(parse_table("sample_id,age,sex,projection,scanner,label,patient\ns1,1,F,PA,GE,other,p\n",
                                std::nullopt, named),
                    ValidationError);
    CHECK_THROWS_AS(parse_table("sample_id,sex,projection,scanner,label,patient\ns1,F,PA,GE,0,p\n", std::nullopt, s),
                    ValidationError);
}

TEST_CASE("table write and reload keep metadata identical") {
    const std::string csv = "sample_id,age,sex,projection,scanner,label,patient\n"
                            "s1,45,F,PA,Philips,0,p1\n"
                            "s2,,,AP,GE,1,p2\n"
                            "s3,71.5,M,,GE,1,p3\n";
    const auto t1 = parse_table(csv, std::nullopt, padchest_schema());
    const auto t2 = parse_table(format_table_csv(t1), std::nullopt, padchest_schema(), t1.dictionary);
    REQUIRE(t2.size() == t1.size());
    for (std::size_t i = 0; i < t1.size(); ++i) {
        CHECK(t2.records[i].metadata == t1.records[i].metadata);
        CHECK(t2.records[i].tags == t1.records[i].tags);
    }
    CHECK(CategoryDictionary::from_json(t1.dictionary.to_json()) == t1.dictionary);
}

TEST_CASE("texts JSONL") {
    const auto texts = parse_texts_jsonl("{\"id\":\"s1\",\"text\":\"hello\"}\n\n{\"id\":\"s2\",\"text\":\"x\"}\n");
    CHECK(texts.at("s1") == "hello");
    CHECK_THROWS_AS(parse_texts_jsonl("{\"id\":\"s1\"}\n"), ValidationError);
    CHECK_THROWS_AS(parse_texts_jsonl("not json\n"), ValidationError);

    TableSchema s;
    const auto t = parse_table("sample_id,label\ns1,0\ns2,1\n", std::string("{\"id\":\"s2\",\"text\":\"b\"}\n"), s);
    CHECK(!t.records[0].text);
    CHECK(t.records[1].text == "b");
    CHECK_THROWS_AS(parse_table("sample_id,label\ns1,0\n", std::string("{\"id\":\"zz\",\"text\":\"b\"}\n"), s),
                    ValidationError);
}

TEST_CASE("scenario filters") {
    TableSchema s;
    s.tag_columns = {"sex", "perturbation"};
    const auto t = parse_table("sample_id,label,sex,perturbation\n"
                               "a,0,F,plain\nb,1,M,thin\nc,0,F,thick\nd,1,M,plain\n",
                               std::nullopt, s);
    const auto cfg = parse_scenario_config("[scenario female]\nfilter = sex=F\n"
                                           "[scenario pt]\nfilter = perturbation ∈ {plain, thin}\n"
                                           "[scenario all]\nfilter = *\n"
                                           "[scenario pos]\nfilter = label=1 and sex in {M}\n"
                                           "[config]\nreference = all\n");
    const auto sel = materialize_scenarios(cfg, t);
    REQUIRE(sel.size() == 4);
    CHECK(sel[0].indices == std::vector<std::size_t>{0, 2});
    CHECK(sel[1].indices == std::vector<std::size_t>{0, 1, 3});
    CHECK(sel[2].indices.size() == 4);
    CHECK(sel[3].indices == std::vector<std::size_t>{1, 3});
    CHECK(cfg.reference_scenario == "all");
    CHECK(parse_scenario_config(format_scenario_config(cfg)).scenarios.size() == 4);
    CHECK(materialize_scenarios(cfg, t)[1].indices == sel[1].indices);

    CHECK_THROWS_AS(materialize_scenarios(parse_scenario_config("[scenario x]\nfilter = scanner=GE\n"), t),
                    ValidationError);
    CHECK_THROWS_AS(materialize_scenarios(parse_scenario_config("[scenario x]\nfilter = sex=F & label=1\n"), t),
                    ValidationError);
}

TEST_CASE("scenario indices are ordered by sample id") {
    TableSchema s;
    s.tag_columns = {"k"};
    const auto t = parse_table("sample_id,label,k\nz,0,a\nb,0,a\nm,1,a\n", std::nullopt, s);
    const auto sel = materialize_scenarios(parse_scenario_config("[scenario x]\nfilter = k=a\n"), t);
    CHECK(sel[0].indices == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("dataset directory round trip") {
    fixture::TempDir dir("dataset");
    TableSchema s;
    s.image_index_column = "image_index";
    s.group_column = "group";
    s.metadata_columns = {"size", "colour"};
    s.categorical_columns = {"colour"};
    s.tag_columns = {"colour"};
    const auto t = parse_table("sample_id,image_index,label,group,size,colour\n"
                               "a,0,0,g1,1.5,red\nb,1,1,g2,,blue\n",
                               std::string("{\"id\":\"a\",\"text\":\"first\"}\n"), s);
    const auto images = make_image_stack(2, 2, 2, {0, 1, 2, 3, 4, 5, 6, 7});
    const auto cfg = parse_scenario_config("[scenario all]\nfilter = *\n");
    save_dataset(dir.path(), t, images, cfg);
    const auto ds = load_dataset(dir.path());
    CHECK(ds.table.size() == 2);
    CHECK(ds.images == images);
    CHECK(ds.table.records[1].metadata == t.records[1].metadata);
    CHECK(ds.table.records[0].text == "first");
    CHECK(ds.scenarios.scenarios.size() == 1);
    CHECK_THROWS_AS(load_dataset(dir / "missing"), IoError);
    CHECK_THROWS_AS(read_bytes(dir / "nope.bin"), IoError);
}
