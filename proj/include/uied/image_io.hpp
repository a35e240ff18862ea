#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include <png.h>

#include "uied/error.hpp"
#include "uied/geometry.hpp"
#include "uied/image.hpp"

namespace uied {

// ============================================================================
// PNG (via libpng)
// ============================================================================

namespace detail {

struct PngReadCursor {
    const std::uint8_t* data;
    std::size_t size;
    std::size_t pos;
};

inline void png_mem_read(png_structp png, png_bytep out, png_size_t count) {
    auto* cur = static_cast<PngReadCursor*>(png_get_io_ptr(png));
    if (cur->pos + count > cur->size) {
        png_error(png, "unexpected end of PNG stream");
        return;
    }
    std::memcpy(out, cur->data + cur->pos, count);
    cur->pos += count;
}

inline void png_mem_write(png_structp png, png_bytep data, png_size_t count) {
    auto* sink = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
    sink->insert(sink->end(), data, data + count);
}

inline void png_mem_flush(png_structp) {}

}  // namespace detail

inline RgbImage decode_png(const std::vector<std::uint8_t>& bytes) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("png: failed to allocate read struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error("png: failed to allocate info struct");
    }

    RgbImage image;
    std::vector<png_bytep> rows;
    detail::PngReadCursor cursor{bytes.data(), bytes.size(), 0};
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ParseError("png: corrupt or truncated stream");
    }
    png_set_read_fn(png, &cursor, detail::png_mem_read);
    png_read_info(png, info);
    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);

    // Normalize every input variant to 8-bit RGB.
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    // Composite any alpha over white; screenshots are opaque anyway.
    png_color_16 white{0, 0xFFFF, 0xFFFF, 0xFFFF, 0xFFFF};
    png_set_background(png, &white, PNG_BACKGROUND_GAMMA_SCREEN, 0, 1.0);
    png_read_update_info(png, info);

    image = RgbImage(int(width), int(height));
    rows.resize(height);
    for (png_uint_32 y = 0; y < height; ++y) rows[y] = image.at(0, int(y));
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return image;
}

inline std::vector<std::uint8_t> encode_png(const RgbImage& image) {
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw Error("png: failed to allocate write struct");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error("png: failed to allocate info struct");
    }
    std::vector<std::uint8_t> out;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("png: encode failed");
    }
    png_set_write_fn(png, &out, detail::png_mem_write, detail::png_mem_flush);
    png_set_IHDR(png, info, png_uint_32(image.width), png_uint_32(image.height), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_bytep> rows(image.height);
    for (int y = 0; y < image.height; ++y)
        rows[y] = const_cast<png_bytep>(image.at(0, y));
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return out;
}

// ============================================================================
// PPM (P6, binary)
// ============================================================================

inline std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
    const std::string header =
        "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.pixels.begin(), image.pixels.end());
    return out;
}

inline RgbImage decode_ppm(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    const auto token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (std::isspace(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        std::string t;
        while (pos < bytes.size() && !std::isspace(bytes[pos])) t.push_back(char(bytes[pos++]));
        if (t.empty()) throw ParseError("ppm: truncated header");
        return t;
    };
    if (token() != "P6") throw ParseError("ppm: not a P6 file");
    const int width = std::stoi(token());
    const int height = std::stoi(token());
    const int maxval = std::stoi(token());
    if (maxval != 255) throw ParseError("ppm: only maxval 255 is supported");
    ++pos;  // single whitespace after maxval
    RgbImage image(width, height);
    if (bytes.size() - pos < image.pixels.size()) throw ParseError("ppm: truncated pixel data");
    std::memcpy(image.pixels.data(), bytes.data() + pos, image.pixels.size());
    return image;
}

// ============================================================================
// File dispatch by extension
// ============================================================================

namespace detail {

inline std::string lower_ext(const std::string& path) {
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = char(std::tolower(c));
    return ext;
}

inline std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

inline void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw Error("write failed: " + path);
}

}  // namespace detail

inline RgbImage load_image(const std::string& path) {
    const std::vector<std::uint8_t> bytes = detail::read_file(path);
    const std::string ext = detail::lower_ext(path);
    if (ext == "ppm") return decode_ppm(bytes);
    if (ext == "png") return decode_png(bytes);
    // No known extension: sniff the magic.
    if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') return decode_ppm(bytes);
    return decode_png(bytes);
}

inline void save_image(const std::string& path, const RgbImage& image) {
    const std::string ext = detail::lower_ext(path);
    if (ext == "ppm")
        detail::write_file(path, encode_ppm(image));
    else
        detail::write_file(path, encode_png(image));
}

}  // namespace uied
