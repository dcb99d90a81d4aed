#include "divscore/dataio/idx.hpp"

#include "divscore/dataio/file.hpp"
#include "divscore/error.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace divscore::dataio {

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading " + path.string());
    return bytes;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("failed reading " + path.string());
    return text;
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    write_bytes(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

namespace {

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t checked_u32(std::size_t v) {
    if (v > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("IDX dimension " + std::to_string(v) + " does not fit in 32 bits");
    }
    return static_cast<std::uint32_t>(v);
}

// Parses magic + dims; returns dims and checks the payload length exactly.
std::vector<std::size_t> parse_header(std::span<const std::uint8_t> bytes, std::uint32_t expected_magic,
                                      std::size_t& payload_offset) {
    if (bytes.size() < 4) throw ParseError(ParseErrc::truncated, "IDX header shorter than 4 bytes");
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != expected_magic) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "0x%08X", magic);
        throw ParseError(ParseErrc::bad_magic, std::string("IDX magic ") + buf);
    }
    const std::size_t ndims = expected_magic & 0xFFu;
    payload_offset = 4 + 4 * ndims;
    if (bytes.size() < payload_offset) throw ParseError(ParseErrc::truncated, "IDX dimension block cut short");

    std::vector<std::size_t> dims(ndims);
    std::size_t total = 1;
    for (std::size_t k = 0; k < ndims; ++k) {
        dims[k] = read_be32(bytes, 4 + 4 * k);
        if (__builtin_mul_overflow(total, dims[k], &total)) {
            throw ParseError(ParseErrc::dim_overflow, "IDX element count overflows");
        }
    }
    std::size_t expected = 0;
    if (__builtin_add_overflow(payload_offset, total, &expected)) {
        throw ParseError(ParseErrc::dim_overflow, "IDX element count overflows");
    }
    if (bytes.size() < expected) {
        throw ParseError(ParseErrc::truncated, "IDX payload has " + std::to_string(bytes.size() - payload_offset) +
                                                   " bytes, header promises " + std::to_string(total));
    }
    if (bytes.size() > expected) {
        throw ParseError(ParseErrc::size_mismatch, "IDX payload has trailing bytes");
    }
    return dims;
}

} // namespace

ImageStack make_image_stack(std::size_t count, std::size_t height, std::size_t width,
                            std::vector<std::uint8_t> pixels) {
    if (height == 0 || width == 0) throw ValidationError("image height and width must be at least 1");
    if (pixels.size() != count * height * width) {
        throw ValidationError("image payload length does not match count·height·width");
    }
    return ImageStack{count, height, width, std::move(pixels)};
}

ImageStack decode_idx_images(std::span<const std::uint8_t> bytes) {
    std::size_t offset = 0;
    const auto dims = parse_header(bytes, kIdxImagesMagic, offset);
    if (dims[1] == 0 || dims[2] == 0) throw ParseError(ParseErrc::size_mismatch, "IDX image dimension is zero");
    return ImageStack{dims[0], dims[1], dims[2], std::vector<std::uint8_t>(bytes.begin() + offset, bytes.end())};
}

std::vector<std::uint8_t> encode_idx_images(const ImageStack& stack) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + stack.pixels.size());
    append_be32(out, kIdxImagesMagic);
    append_be32(out, checked_u32(stack.count));
    append_be32(out, checked_u32(stack.height));
    append_be32(out, checked_u32(stack.width));
    out.insert(out.end(), stack.pixels.begin(), stack.pixels.end());
    return out;
}

std::vector<std::uint8_t> decode_idx_labels(std::span<const std::uint8_t> bytes) {
    std::size_t offset = 0;
    parse_header(bytes, kIdxLabelsMagic, offset);
    return {bytes.begin() + offset, bytes.end()};
}

std::vector<std::uint8_t> encode_idx_labels(std::span<const std::uint8_t> labels) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + labels.size());
    append_be32(out, kIdxLabelsMagic);
    append_be32(out, checked_u32(labels.size()));
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

} // namespace divscore::dataio
