#pragma once

#include "divscore/feature_matrix.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace divscore::dataio {

// DIVT: "DIVT" | u32 version (=1) | u64 rows | u64 cols | rows·cols f32,
// all little-endian, values row-major.
inline constexpr std::uint32_t kTensorVersion = 1;
inline constexpr std::size_t kTensorHeaderSize = 24;

struct TensorFile {
    std::uint64_t rows = 0;
    std::uint64_t cols = 0;
    std::vector<float> values;

    bool operator==(const TensorFile&) const = default;
};

TensorFile decode_tensor(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_tensor(const TensorFile& tensor);

TensorFile tensor_from_matrix(const Matrix& m);
Matrix matrix_from_tensor(const TensorFile& tensor);

} // namespace divscore::dataio
