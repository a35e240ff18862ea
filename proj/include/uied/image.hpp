#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "uied/error.hpp"
#include "uied/geometry.hpp"

namespace uied {

namespace detail {
inline void check_dims(int width, int height, const char* what) {
    if (width < 1 || height < 1)
        throw DimensionError(std::string(what) + ": dimensions must be at least 1x1, got " +
                             std::to_string(width) + "x" + std::to_string(height));
}
}  // namespace detail

// Interleaved 8-bit RGB raster, row-major.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // 3 bytes per pixel

    RgbImage() = default;
    RgbImage(int w, int h) : width(w), height(h) {
        detail::check_dims(w, h, "RgbImage");
        pixels.assign(std::size_t(w) * h * 3, 0);
    }

    std::uint8_t* at(int x, int y) { return pixels.data() + (std::size_t(y) * width + x) * 3; }
    const std::uint8_t* at(int x, int y) const {
        return pixels.data() + (std::size_t(y) * width + x) * 3;
    }

    void fill(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        for (std::size_t i = 0; i + 2 < pixels.size(); i += 3) {
            pixels[i] = r;
            pixels[i + 1] = g;
            pixels[i + 2] = b;
        }
    }

    BBox bounds() const { return {0, 0, width, height}; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Single-channel intensity grid, values in [0,255].
struct GreyMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;

    GreyMap() = default;
    GreyMap(int w, int h, std::uint8_t value = 0) : width(w), height(h) {
        detail::check_dims(w, h, "GreyMap");
        values.assign(std::size_t(w) * h, value);
    }

    std::uint8_t at(int x, int y) const { return values[std::size_t(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return values[std::size_t(y) * width + x]; }

    BBox bounds() const { return {0, 0, width, height}; }

    friend bool operator==(const GreyMap&, const GreyMap&) = default;
};

// Foreground mask; nonzero = white/foreground.
struct BinaryMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> foreground;

    BinaryMap() = default;
    BinaryMap(int w, int h, bool value = false) : width(w), height(h) {
        detail::check_dims(w, h, "BinaryMap");
        foreground.assign(std::size_t(w) * h, value ? 1 : 0);
    }

    bool at(int x, int y) const { return foreground[std::size_t(y) * width + x] != 0; }
    void set(int x, int y, bool v) { foreground[std::size_t(y) * width + x] = v ? 1 : 0; }

    BBox bounds() const { return {0, 0, width, height}; }

    friend bool operator==(const BinaryMap&, const BinaryMap&) = default;
};

inline RgbImage crop(const RgbImage& image, const BBox& bbox) {
    if (!bbox.valid() || !image.bounds().contains(bbox))
        throw DimensionError("crop: bbox out of image bounds");
    RgbImage out(bbox.width(), bbox.height());
    for (int y = 0; y < out.height; ++y)
        std::memcpy(out.at(0, y), image.at(bbox.x0, bbox.y0 + y), std::size_t(out.width) * 3);
    return out;
}

// Connected-component id per pixel; 0 is background, components are 1..count.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<int> labels;
    int count = 0;

    LabelMap() = default;
    LabelMap(int w, int h) : width(w), height(h) {
        detail::check_dims(w, h, "LabelMap");
        labels.assign(std::size_t(w) * h, 0);
    }

    int at(int x, int y) const { return labels[std::size_t(y) * width + x]; }
    int& at(int x, int y) { return labels[std::size_t(y) * width + x]; }
};

}  // namespace uied
