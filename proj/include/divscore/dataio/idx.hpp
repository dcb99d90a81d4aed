#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace divscore::dataio {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

// count×height×width unsigned 8-bit grayscale images, sample-major, row-major.
struct ImageStack {
    std::size_t count = 0;
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t image_size() const noexcept { return height * width; }
    std::span<const std::uint8_t> image(std::size_t i) const noexcept {
        return {pixels.data() + i * image_size(), image_size()};
    }
    std::span<std::uint8_t> image(std::size_t i) noexcept {
        return {pixels.data() + i * image_size(), image_size()};
    }

    bool operator==(const ImageStack&) const = default;
};

// Validates count·height·width == pixels.size() and height, width ≥ 1.
ImageStack make_image_stack(std::size_t count, std::size_t height, std::size_t width,
                            std::vector<std::uint8_t> pixels);

// IDX (MNIST) codecs. Header integers are big-endian. Decoding throws
// ParseError with bad_magic, truncated, dim_overflow or size_mismatch.
ImageStack decode_idx_images(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_idx_images(const ImageStack& stack);

std::vector<std::uint8_t> decode_idx_labels(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_idx_labels(std::span<const std::uint8_t> labels);

} // namespace divscore::dataio
