#include "common.hpp"

#include "divscore/dataio/file.hpp"
#include "divscore/dataio/tensor.hpp"
#include "divscore/error.hpp"
#include "divscore/features.hpp"
#include "divscore/parallel.hpp"

#include <cstdio>
#include <ctime>
#include <openssl/evp.h>

namespace divscore::cli {

unsigned GlobalOptions::worker_count() const { return threads > 0 ? threads : default_threads(); }

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 computation failed");
    }
    std::string hex;
    char buf[3];
    for (unsigned i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

std::string file_sha256(const std::filesystem::path& path) {
    const auto bytes = dataio::read_bytes(path);
    return sha256_hex(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

ManifestBuilder::ManifestBuilder(std::string command, const GlobalOptions& options)
    : reproducible_(options.reproducible), start_(std::chrono::steady_clock::now()) {
    manifest_.command = std::move(command);
    manifest_.seed = options.seed;
    manifest_.config_hash = sha256_hex(options.effective_config);
}

void ManifestBuilder::add_input(const std::filesystem::path& path) {
    manifest_.inputs.push_back({path.generic_string(), file_sha256(path)});
}

void ManifestBuilder::add_dataset(const dataio::Dataset& ds) {
    add_input(ds.root / dataio::kDatasetManifest);
    add_input(ds.root / ds.layout.table);
    for (const auto* name : {&ds.layout.texts, &ds.layout.images, &ds.layout.dictionary, &ds.layout.scenarios}) {
        if (!name->empty() && std::filesystem::exists(ds.root / *name)) add_input(ds.root / *name);
    }
}

report::RunManifest ManifestBuilder::finish() const {
    report::RunManifest m = manifest_;
    if (!reproducible_) {
        m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        const std::time_t now = std::time(nullptr);
        std::tm utc{};
        gmtime_r(&now, &utc);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
        m.timestamp = buf;
    }
    return m;
}

FeatureSource parse_source(const std::string& text) {
    if (text == "pixel") return FeatureSource::pixel;
    if (text == "hog") return FeatureSource::hog;
    if (text == "external") return FeatureSource::external;
    throw ValidationError("unknown feature source '" + text + "' (use pixel, hog or external)");
}

Matrix image_features(const dataio::Dataset& ds, FeatureSource source, unsigned threads) {
    if (source == FeatureSource::external) throw ValidationError("external features come from a DIVT file");
    if (!ds.images) throw ValidationError("dataset " + ds.root.string() + " has no images");
    const auto& records = ds.table.records;
    const auto& src = *ds.images;
    std::vector<std::uint8_t> pixels;
    pixels.reserve(records.size() * src.image_size());
    for (const auto& r : records) {
        if (!r.image_index) throw ValidationError("sample '" + r.sample_id + "' has no image");
        const auto img = src.image(*r.image_index);
        pixels.insert(pixels.end(), img.begin(), img.end());
    }
    const auto stack = dataio::make_image_stack(records.size(), src.height, src.width, std::move(pixels));
    return source == FeatureSource::pixel ? features::pixel_features(stack).values
                                          : features::hog_features(stack, {}, threads).values;
}

Matrix load_divt_matrix(const std::filesystem::path& path, std::size_t expected_rows, const std::string& what) {
    const Matrix m = dataio::matrix_from_tensor(dataio::decode_tensor(dataio::read_bytes(path)));
    if (m.rows() != expected_rows) {
        throw ValidationError(what + " " + path.string() + " has " + std::to_string(m.rows()) +
                              " rows; the table has " + std::to_string(expected_rows));
    }
    return m;
}

std::vector<std::string> split_outputs(const std::string& list) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : list) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

} // namespace divscore::cli
