#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "uied/config.hpp"
#include "uied/geometry.hpp"
#include "uied/image.hpp"
#include "uied/pixelops.hpp"

namespace uied {

enum class BlockKind { Image, WidgetBearing };

// Coarse layout region: a rectangular flood-fill region of the grey map.
// Image blocks are not descended into by the fine stage.
struct Block {
    BBox bbox;
    Contour contour;  // outer border in screen coordinates
    BlockKind kind = BlockKind::WidgetBearing;
    std::int64_t region_area = 0;
};

namespace detail {

// Outer border of a flood region, traced on a mask local to its bbox and
// translated back to screen coordinates.
inline Contour trace_region_contour(const FloodRegion& region) {
    const BBox& bb = region.bbox;
    BinaryMap mask(bb.width(), bb.height());
    for (const Point& p : region.pixels) mask.set(p.x - bb.x0, p.y - bb.y0, true);

    Component comp;
    comp.area = region.area;
    comp.bbox = {0, 0, bb.width(), bb.height()};
    comp.anchor = {-1, -1};
    for (int y = 0; y < mask.height && comp.anchor.x < 0; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(x, y)) {
                comp.anchor = {x, y};
                break;
            }

    Contour contour = trace_contour(mask, comp);
    for (Point& p : contour.points) {
        p.x += bb.x0;
        p.y += bb.y0;
    }
    return contour;
}

}  // namespace detail

// Texture-density heuristic: a block whose bbox contains at least
// `image_gradient_density` high-gradient pixels is a picture, anything
// flatter is assumed to hold widgets. An attached external classifier may
// override this verdict in the pipeline.
inline BlockKind classify_block_kind(const GreyMap& gradient, const Block& block,
                                     const RunConfig& config = {}) {
    if (!block.bbox.valid() || !gradient.bounds().contains(block.bbox))
        throw DimensionError("classify_block_kind: block bbox out of image bounds");
    const double density =
        detail::gradient_density(gradient, block.bbox, config.binarize_threshold);
    return density >= config.image_gradient_density ? BlockKind::Image : BlockKind::WidgetBearing;
}

inline BlockKind classify_block_kind(const RgbImage& image, const Block& block,
                                     const RunConfig& config = {}) {
    return classify_block_kind(gradient_map(to_grey(image)), block, config);
}

namespace detail {

struct BlockScan {
    std::vector<Block> blocks;
    // Rectangular regions nested inside a larger block's bbox: element
    // candidates for the fine stage, not blocks of their own.
    std::vector<std::pair<BBox, int>> nested;  // bbox + index of enclosing block
};

inline BlockScan scan_blocks(const GreyMap& grey, const GreyMap& gradient,
                             const RunConfig& config) {
    const int min_area =
        std::max<int>(1, int(config.block_min_area_frac * double(grey.width) * grey.height));
    std::vector<FloodRegion> regions =
        flood_fill_regions(grey, config.flood_tolerance, min_area);

    // Largest first so nesting checks only look at already-kept blocks.
    std::sort(regions.begin(), regions.end(), [](const FloodRegion& a, const FloodRegion& b) {
        if (a.area != b.area) return a.area > b.area;
        return bbox_less(a.bbox, b.bbox);
    });

    BlockScan scan;
    for (FloodRegion& region : regions) {
        Contour contour = trace_region_contour(region);
        if (!is_rectangle(contour, region.area, config.rect_epsilon_frac, config.rect_min_fill))
            continue;
        int enclosing = -1;
        for (std::size_t i = 0; i < scan.blocks.size(); ++i) {
            if (scan.blocks[i].bbox.contains(region.bbox)) {
                enclosing = int(i);
                break;
            }
        }
        if (enclosing >= 0) {
            scan.nested.emplace_back(region.bbox, enclosing);
            continue;
        }
        Block block;
        block.bbox = region.bbox;
        block.contour = std::move(contour);
        block.region_area = region.area;
        block.kind = classify_block_kind(gradient, block, config);
        scan.blocks.push_back(std::move(block));
    }
    return scan;
}

}  // namespace detail

// Coarse stage: flood-fill the grey map into color-consistent regions, keep
// the rectangular ones as layout blocks (maximal regions only; rectangles
// nested in a bigger block become fine-stage candidates), and classify each
// block as picture vs widget-bearing. Blocks come back sorted by region
// area, largest first.
inline std::vector<Block> detect_blocks(const GreyMap& grey, const RunConfig& config = {}) {
    return detail::scan_blocks(grey, gradient_map(grey), config).blocks;
}

}  // namespace uied
