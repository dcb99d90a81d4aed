#include "divscore/dataio/tensor.hpp"

#include "divscore/error.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

namespace divscore::dataio {
namespace {

constexpr std::uint8_t kMagic[4] = {'D', 'I', 'V', 'T'};

std::uint64_t read_le(std::span<const std::uint8_t> bytes, std::size_t offset, std::size_t width) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < width; ++i) v |= std::uint64_t{bytes[offset + i]} << (8 * i);
    return v;
}

void append_le(std::vector<std::uint8_t>& out, std::uint64_t v, std::size_t width) {
    for (std::size_t i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::size_t checked_count(std::uint64_t rows, std::uint64_t cols) {
    std::uint64_t count = 0;
    std::uint64_t payload = 0;
    if (__builtin_mul_overflow(rows, cols, &count) || __builtin_mul_overflow(count, std::uint64_t{4}, &payload) ||
        payload > static_cast<std::uint64_t>(SIZE_MAX - kTensorHeaderSize)) {
        throw ParseError(ParseErrc::dim_overflow, "DIVT element count overflows");
    }
    return static_cast<std::size_t>(count);
}

} // namespace

TensorFile decode_tensor(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw ParseError(ParseErrc::bad_magic, "DIVT magic missing");
    }
    if (bytes.size() < kTensorHeaderSize) throw ParseError(ParseErrc::truncated, "DIVT header cut short");
    const auto version = static_cast<std::uint32_t>(read_le(bytes, 4, 4));
    if (version != kTensorVersion) {
        throw ParseError(ParseErrc::bad_version, "DIVT version " + std::to_string(version));
    }
    TensorFile t;
    t.rows = read_le(bytes, 8, 8);
    t.cols = read_le(bytes, 16, 8);
    if (t.rows == 0 || t.cols == 0) throw ParseError(ParseErrc::empty, "DIVT has zero rows or columns");
    const std::size_t count = checked_count(t.rows, t.cols);
    if (bytes.size() - kTensorHeaderSize != count * 4) {
        throw ParseError(ParseErrc::size_mismatch, "DIVT payload is " + std::to_string(bytes.size() - kTensorHeaderSize) +
                                                       " bytes, expected " + std::to_string(count * 4));
    }
    t.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto raw = static_cast<std::uint32_t>(read_le(bytes, kTensorHeaderSize + 4 * i, 4));
        const float v = std::bit_cast<float>(raw);
        if (!std::isfinite(v)) {
            throw ParseError(ParseErrc::non_finite, "DIVT value at row " + std::to_string(i / t.cols) + ", column " +
                                                        std::to_string(i % t.cols));
        }
        t.values[i] = v;
    }
    return t;
}

std::vector<std::uint8_t> encode_tensor(const TensorFile& t) {
    if (t.rows == 0 || t.cols == 0) throw ParseError(ParseErrc::empty, "DIVT has zero rows or columns");
    const std::size_t count = checked_count(t.rows, t.cols);
    if (t.values.size() != count) throw ParseError(ParseErrc::size_mismatch, "value count differs from rows·cols");
    std::vector<std::uint8_t> out;
    out.reserve(kTensorHeaderSize + 4 * count);
    for (auto b : kMagic) out.push_back(static_cast<std::uint8_t>(b));
    append_le(out, kTensorVersion, 4);
    append_le(out, t.rows, 8);
    append_le(out, t.cols, 8);
    for (float v : t.values) {
        if (!std::isfinite(v)) throw ParseError(ParseErrc::non_finite, "refusing to write a non-finite value");
        append_le(out, std::bit_cast<std::uint32_t>(v), 4);
    }
    return out;
}

TensorFile tensor_from_matrix(const Matrix& m) {
    TensorFile t;
    t.rows = m.rows();
    t.cols = m.cols();
    t.values.reserve(m.values().size());
    for (double v : m.values()) t.values.push_back(static_cast<float>(v));
    return t;
}

Matrix matrix_from_tensor(const TensorFile& t) {
    std::vector<double> values(t.values.begin(), t.values.end());
    return Matrix(static_cast<std::size_t>(t.rows), static_cast<std::size_t>(t.cols), std::move(values));
}

} // namespace divscore::dataio
