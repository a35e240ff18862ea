#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "uied/elements.hpp"
#include "uied/geometry.hpp"
#include "uied/image.hpp"

namespace uied {

namespace detail {

// 3x5 glyphs for burned-in labels: digits, upper-case letters and a few
// separators. Each row is 3 bits, left pixel in the high bit. Lower case
// renders as upper case, anything else as a blank.
struct Glyph {
    char ch;
    std::uint8_t rows[5];
};

inline constexpr Glyph kFont[] = {
    {'0', {0b111, 0b101, 0b101, 0b101, 0b111}}, {'1', {0b010, 0b110, 0b010, 0b010, 0b111}},
    {'2', {0b111, 0b001, 0b111, 0b100, 0b111}}, {'3', {0b111, 0b001, 0b111, 0b001, 0b111}},
    {'4', {0b101, 0b101, 0b111, 0b001, 0b001}}, {'5', {0b111, 0b100, 0b111, 0b001, 0b111}},
    {'6', {0b111, 0b100, 0b111, 0b101, 0b111}}, {'7', {0b111, 0b001, 0b001, 0b010, 0b010}},
    {'8', {0b111, 0b101, 0b111, 0b101, 0b111}}, {'9', {0b111, 0b101, 0b111, 0b001, 0b111}},
    {'A', {0b010, 0b101, 0b111, 0b101, 0b101}}, {'B', {0b110, 0b101, 0b110, 0b101, 0b110}},
    {'C', {0b011, 0b100, 0b100, 0b100, 0b011}}, {'D', {0b110, 0b101, 0b101, 0b101, 0b110}},
    {'E', {0b111, 0b100, 0b111, 0b100, 0b111}}, {'F', {0b111, 0b100, 0b111, 0b100, 0b100}},
    {'G', {0b011, 0b100, 0b101, 0b101, 0b011}}, {'H', {0b101, 0b101, 0b111, 0b101, 0b101}},
    {'I', {0b111, 0b010, 0b010, 0b010, 0b111}}, {'J', {0b001, 0b001, 0b001, 0b101, 0b010}},
    {'K', {0b101, 0b110, 0b100, 0b110, 0b101}}, {'L', {0b100, 0b100, 0b100, 0b100, 0b111}},
    {'M', {0b101, 0b111, 0b111, 0b101, 0b101}}, {'N', {0b110, 0b101, 0b101, 0b101, 0b101}},
    {'O', {0b010, 0b101, 0b101, 0b101, 0b010}}, {'P', {0b110, 0b101, 0b110, 0b100, 0b100}},
    {'Q', {0b111, 0b101, 0b101, 0b111, 0b001}}, {'R', {0b110, 0b101, 0b110, 0b110, 0b101}},
    {'S', {0b011, 0b100, 0b010, 0b001, 0b110}}, {'T', {0b111, 0b010, 0b010, 0b010, 0b010}},
    {'U', {0b101, 0b101, 0b101, 0b101, 0b111}}, {'V', {0b101, 0b101, 0b101, 0b101, 0b010}},
    {'W', {0b101, 0b101, 0b111, 0b111, 0b101}}, {'X', {0b101, 0b101, 0b010, 0b101, 0b101}},
    {'Y', {0b101, 0b101, 0b010, 0b010, 0b010}}, {'Z', {0b111, 0b001, 0b010, 0b100, 0b111}},
    {'-', {0b000, 0b000, 0b111, 0b000, 0b000}}, {'_', {0b000, 0b000, 0b000, 0b000, 0b111}},
    {'.', {0b000, 0b000, 0b000, 0b000, 0b010}}, {':', {0b000, 0b010, 0b000, 0b010, 0b000}},
    {'/', {0b001, 0b001, 0b010, 0b100, 0b100}},
};

inline const std::uint8_t* glyph_rows(char c) {
    const char upper = char(std::toupper(std::uint8_t(c)));
    for (const Glyph& g : kFont)
        if (g.ch == upper) return g.rows;
    return nullptr;
}

struct Rgb {
    std::uint8_t r, g, b;
};

// Distinct, saturated colors cycled by label hash.
inline constexpr Rgb kBoxColors[] = {
    {230, 57, 70},  {29, 131, 72},   {31, 97, 141},  {211, 84, 0},
    {108, 52, 131}, {23, 165, 137},  {183, 149, 11}, {40, 55, 71},
};

inline Rgb label_color(const std::string& label) {
    std::size_t h = 1469598103934665603ULL;
    for (char c : label) h = (h ^ std::size_t(std::uint8_t(c))) * 1099511628211ULL;
    return kBoxColors[h % (sizeof(kBoxColors) / sizeof(kBoxColors[0]))];
}

inline void put_pixel(RgbImage& image, int x, int y, Rgb c) {
    if (x < 0 || x >= image.width || y < 0 || y >= image.height) return;
    std::uint8_t* px = image.at(x, y);
    px[0] = c.r;
    px[1] = c.g;
    px[2] = c.b;
}

inline void draw_rect_outline(RgbImage& image, const BBox& bbox, Rgb color, int thickness) {
    for (int t = 0; t < thickness; ++t) {
        const int x0 = bbox.x0 + t, x1 = bbox.x1 - 1 - t;
        const int y0 = bbox.y0 + t, y1 = bbox.y1 - 1 - t;
        if (x0 > x1 || y0 > y1) break;
        for (int x = x0; x <= x1; ++x) {
            put_pixel(image, x, y0, color);
            put_pixel(image, x, y1, color);
        }
        for (int y = y0; y <= y1; ++y) {
            put_pixel(image, x0, y, color);
            put_pixel(image, x1, y, color);
        }
    }
}

inline void draw_text(RgbImage& image, int x, int y, const std::string& text, Rgb color,
                      int scale) {
    int cx = x;
    for (char c : text) {
        if (const std::uint8_t* rows = glyph_rows(c)) {
            for (int ry = 0; ry < 5; ++ry)
                for (int rx = 0; rx < 3; ++rx)
                    if (rows[ry] & (0b100 >> rx))
                        for (int sy = 0; sy < scale; ++sy)
                            for (int sx = 0; sx < scale; ++sx)
                                put_pixel(image, cx + rx * scale + sx, y + ry * scale + sy, color);
        }
        cx += 4 * scale;
    }
}

}  // namespace detail

// Returns a copy of the screenshot with detection boxes and their labels
// burned in. Output dimensions always equal the input's.
inline RgbImage annotate(const RgbImage& image, const std::vector<Detection>& detections,
                         int box_thickness = 2, int text_scale = 2) {
    RgbImage out = image;
    for (const Detection& d : detections) {
        const detail::Rgb color = detail::label_color(d.label);
        detail::draw_rect_outline(out, d.bbox, color, box_thickness);

        const int text_h = 5 * text_scale;
        // Above the box when there is room, tucked inside otherwise.
        int ty = d.bbox.y0 - text_h - 2;
        if (ty < 0) ty = d.bbox.y0 + box_thickness + 1;
        detail::draw_text(out, d.bbox.x0 + box_thickness, ty, d.label, color, text_scale);
    }
    return out;
}

}  // namespace uied
