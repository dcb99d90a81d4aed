#include "divscore/error.hpp"
#include "divscore/resample.hpp"
#include "divscore/toygen.hpp"

#include <cstdio>

namespace divscore::toygen {

namespace {

std::string numbered(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%05zu", prefix, i);
    return buf;
}

} // namespace

ToyDataset build_scenarios(std::size_t n_per_kind, std::uint64_t seed, std::size_t reference_n) {
    if (n_per_kind < 10) throw ValidationError("toy data needs at least 10 glyphs per perturbation");
    const auto base = base_glyphs(n_per_kind, seed);
    const std::size_t total = n_per_kind * kAllKinds.size() + reference_n;

    ToyDataset out;
    auto& t = out.table;
    t.schema.group_column = "group_id";
    t.schema.image_index_column = "image_index";
    t.schema.metadata_columns = kMorphometricColumns;
    t.schema.tag_columns = {"perturbation", "split"};
    t.schema.num_classes = 10;
    t.num_classes = 10;

    std::vector<std::uint8_t> pixels;
    pixels.reserve(total * kSide * kSide);
    auto add = [&](std::string id, std::string group, int label, PerturbationKind kind, const char* split,
                   std::span<const std::uint8_t> img) {
        dataio::Record r;
        r.sample_id = std::move(id);
        r.group_id = std::move(group);
        r.label = label;
        r.image_index = pixels.size() / (kSide * kSide);
        r.text = caption(label, kind);
        r.metadata = morphometrics(img, kSide, kSide).as_vector();
        r.tags = {{"perturbation", std::string(to_string(kind))}, {"split", split}};
        pixels.insert(pixels.end(), img.begin(), img.end());
        t.records.push_back(std::move(r));
    };

    for (std::size_t i = 0; i < n_per_kind; ++i) {
        const auto glyph = numbered("g", i);
        for (auto kind : kAllKinds) {
            const std::string id = glyph + "_" + std::string(to_string(kind));
            const auto img = perturb(base.images.image(i), kSide, kSide, kind, resample::seeded_hash(id, seed));
            add(id, glyph, base.labels[i], kind, "train", img);
        }
    }

    if (reference_n > 0) {
        const auto ref = base_glyphs(reference_n, resample::seeded_hash("reference", seed));
        for (std::size_t i = 0; i < reference_n; ++i) {
            const auto id = numbered("ref", i);
            add(id, id, ref.labels[i], PerturbationKind::plain, "test", ref.images.image(i));
        }
    }
    out.images = dataio::make_image_stack(total, kSide, kSide, std::move(pixels));

    auto& sc = out.scenarios;
    for (auto kind : kAllKinds) {
        sc.scenarios.push_back({std::string(to_string(kind)),
                                {{"split", {"train"}}, {"perturbation", {std::string(to_string(kind))}}}});
    }
    for (auto kind : kAllKinds) {
        if (kind == PerturbationKind::plain) continue;
        sc.scenarios.push_back({"plain+" + std::string(to_string(kind)),
                                {{"split", {"train"}}, {"perturbation", {"plain", std::string(to_string(kind))}}}});
    }
    if (reference_n > 0) {
        sc.scenarios.push_back({"reference", {{"split", {"test"}}}});
        sc.reference_scenario = "reference";
    }
    return out;
}

} // namespace divscore::toygen
