#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "uied/dataset.hpp"
#include "uied/error.hpp"
#include "uied/image.hpp"

namespace uied {

struct SynthColor {
    std::uint8_t r = 0, g = 0, b = 0;

    int luma() const {
        return int(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
    }
};

// Recipe for one synthetic screen. Widgets are flat axis-aligned rectangles
// placed on a jittered grid, which guarantees the configured separation and
// makes placement either always succeed or fail deterministically. Photo
// blocks are filled with per-pixel noise of bounded amplitude: busy enough
// to read as texture, bounded so the block still floods as one region.
struct SynthSpec {
    int width = 360;
    int height = 640;
    int grid_cols = 3;
    int grid_rows = 5;
    int widget_count_min = 8;
    int widget_count_max = 12;
    int widget_w_min = 72;
    int widget_w_max = 116;
    int widget_h_min = 56;
    int widget_h_max = 124;
    int photo_count = 0;
    int noise_amplitude = 8;
    int separation = 4;       // minimum gap between any two drawn boxes
    int contrast = 40;        // minimum |luma(widget) - luma(background)|
    SynthColor background{235, 235, 235};
    std::vector<SynthColor> palette = {
        {66, 133, 244}, {219, 68, 55}, {15, 157, 88}, {244, 160, 0},
        {103, 58, 183}, {0, 0, 0},     {96, 96, 96},
    };
};

namespace detail {

// Deterministic bounded draw; avoids std::uniform_int_distribution, whose
// output is implementation-defined.
inline int draw(std::mt19937& rng, int lo, int hi) {
    if (hi <= lo) return lo;
    return lo + int(rng() % std::uint32_t(hi - lo + 1));
}

inline void validate_synth_spec(const SynthSpec& spec) {
    if (spec.width < 8 || spec.height < 8) throw GenerationError("synth: screen too small");
    if (spec.grid_cols < 1 || spec.grid_rows < 1) throw GenerationError("synth: empty grid");
    if (spec.widget_count_min < 0 || spec.widget_count_min > spec.widget_count_max)
        throw GenerationError("synth: bad widget count range");
    if (spec.widget_w_min < 2 || spec.widget_w_min > spec.widget_w_max ||
        spec.widget_h_min < 2 || spec.widget_h_min > spec.widget_h_max)
        throw GenerationError("synth: bad widget size range");
    if (spec.photo_count < 0) throw GenerationError("synth: bad photo count");
    if (spec.palette.empty()) throw GenerationError("synth: empty palette");

    const int cells = spec.grid_cols * spec.grid_rows;
    if (spec.widget_count_max + spec.photo_count > cells)
        throw GenerationError("synth: widgets do not fit: " +
                              std::to_string(spec.widget_count_max + spec.photo_count) +
                              " boxes requested but the grid has " + std::to_string(cells) +
                              " cells");
    const int inset = (spec.separation + 1) / 2;
    const int cell_w = spec.width / spec.grid_cols;
    const int cell_h = spec.height / spec.grid_rows;
    if (spec.widget_w_max > cell_w - 2 * inset || spec.widget_h_max > cell_h - 2 * inset)
        throw GenerationError("synth: widgets do not fit: max widget " +
                              std::to_string(spec.widget_w_max) + "x" +
                              std::to_string(spec.widget_h_max) + " exceeds grid cell " +
                              std::to_string(cell_w) + "x" + std::to_string(cell_h) +
                              " minus separation");

    const int bg = spec.background.luma();
    for (const SynthColor& c : spec.palette) {
        if (std::abs(c.luma() - bg) < spec.contrast + spec.noise_amplitude)
            throw GenerationError("synth: palette color luma " + std::to_string(c.luma()) +
                                  " too close to background luma " + std::to_string(bg));
    }
}

inline void fill_rect(RgbImage& image, const BBox& bbox, SynthColor color) {
    for (int y = bbox.y0; y < bbox.y1; ++y) {
        std::uint8_t* px = image.at(bbox.x0, y);
        for (int x = bbox.x0; x < bbox.x1; ++x, px += 3) {
            px[0] = color.r;
            px[1] = color.g;
            px[2] = color.b;
        }
    }
}

// Adds iid per-channel noise in [-amplitude, +amplitude] over a flat base.
inline void fill_noise(RgbImage& image, const BBox& bbox, SynthColor base, int amplitude,
                       std::mt19937& rng) {
    for (int y = bbox.y0; y < bbox.y1; ++y) {
        std::uint8_t* px = image.at(bbox.x0, y);
        for (int x = bbox.x0; x < bbox.x1; ++x, px += 3) {
            const int d = draw(rng, -amplitude, amplitude);
            px[0] = std::uint8_t(std::clamp(base.r + d, 0, 255));
            px[1] = std::uint8_t(std::clamp(base.g + d, 0, 255));
            px[2] = std::uint8_t(std::clamp(base.b + d, 0, 255));
        }
    }
}

// The label the drawn geometry will deserve under the heuristic classifier,
// so synthetic ground-truth classes line up with the baseline's verdicts.
inline std::string synth_label(const BBox& bbox, int screen_w, int screen_h) {
    const double aspect = double(bbox.width()) / double(bbox.height());
    const double screen_area = double(screen_w) * screen_h;
    if (aspect >= 4.0 && bbox.height() < 0.05 * screen_h) return "ProgressBar";
    if (aspect >= 0.75 && aspect <= 1.33 && double(bbox.area()) < 0.005 * screen_area)
        return "CheckBox";
    return "Button";
}

}  // namespace detail

// Deterministically renders one synthetic screenshot and its exact ground
// truth. The same seed and spec always produce the same bytes.
inline std::pair<RgbImage, Screen> synth_generate(std::uint32_t seed, const SynthSpec& spec = {}) {
    detail::validate_synth_spec(spec);
    std::mt19937 rng(seed);

    RgbImage image(spec.width, spec.height);
    image.fill(spec.background.r, spec.background.g, spec.background.b);

    Screen screen;
    char id[32];
    std::snprintf(id, sizeof(id), "synth-%08u", seed);
    screen.id = id;
    screen.width = spec.width;
    screen.height = spec.height;

    const int cells = spec.grid_cols * spec.grid_rows;
    const int widget_count = detail::draw(rng, spec.widget_count_min, spec.widget_count_max);
    const int total = widget_count + spec.photo_count;

    // Deterministic shuffle: pick `total` distinct grid cells.
    std::vector<int> order(cells);
    for (int i = 0; i < cells; ++i) order[i] = i;
    for (int i = cells - 1; i > 0; --i)
        std::swap(order[i], order[detail::draw(rng, 0, i)]);

    const int inset = (spec.separation + 1) / 2;
    const int cell_w = spec.width / spec.grid_cols;
    const int cell_h = spec.height / spec.grid_rows;

    for (int k = 0; k < total; ++k) {
        const int cell = order[k];
        const int cx = (cell % spec.grid_cols) * cell_w;
        const int cy = (cell / spec.grid_cols) * cell_h;
        const bool photo = k < spec.photo_count;

        const int w = detail::draw(rng, spec.widget_w_min, spec.widget_w_max);
        const int h = detail::draw(rng, spec.widget_h_min, spec.widget_h_max);
        const int x0 = cx + detail::draw(rng, inset, cell_w - inset - w);
        const int y0 = cy + detail::draw(rng, inset, cell_h - inset - h);
        const BBox bbox{x0, y0, x0 + w, y0 + h};

        const SynthColor color = spec.palette[std::size_t(detail::draw(
            rng, 0, int(spec.palette.size()) - 1))];
        GroundTruthElement element;
        element.bbox = bbox;
        element.channel = Channel::NonText;
        if (photo) {
            detail::fill_noise(image, bbox, color, spec.noise_amplitude, rng);
            element.label = "ImageView";
        } else {
            detail::fill_rect(image, bbox, color);
            element.label = detail::synth_label(bbox, spec.width, spec.height);
        }
        screen.elements.push_back(std::move(element));
    }
    return {std::move(image), std::move(screen)};
}

}  // namespace uied
