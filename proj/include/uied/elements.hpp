#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "uied/classify.hpp"
#include "uied/config.hpp"
#include "uied/geometry.hpp"
#include "uied/image.hpp"
#include "uied/layout.hpp"
#include "uied/pixelops.hpp"

namespace uied {

enum class Channel { NonText, Text };

inline const char* channel_name(Channel c) { return c == Channel::Text ? "text" : "nontext"; }

struct Detection {
    BBox bbox;
    std::string label;
    double confidence = 1.0;
    Channel channel = Channel::NonText;
    std::optional<int> source_block;  // index into the block list, when known
};

// Crop of the binary map at the block's bbox.
inline BinaryMap segment_block(const BinaryMap& binary, const Block& block) {
    const BBox& bb = block.bbox;
    if (!bb.valid() || !binary.bounds().contains(bb))
        throw DimensionError("segment_block: block bbox out of map bounds");
    BinaryMap out(bb.width(), bb.height());
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.set(x, y, binary.at(bb.x0 + x, bb.y0 + y));
    return out;
}

// Tight bounding boxes of the 8-connected foreground components in a block
// segment, in local segment coordinates; translating back to the screen is
// the caller's job.
inline std::vector<BBox> detect_regions_in_block(const BinaryMap& segment, int min_area) {
    auto [map, comps] = label_components(segment, min_area);
    (void)map;
    std::vector<BBox> boxes;
    boxes.reserve(comps.size());
    for (const Component& c : comps) boxes.push_back(c.bbox);
    return boxes;
}

// ============================================================================
// Non-maximum suppression
// ============================================================================

// Greedy by descending confidence (ties: larger area, then smaller (x0,y0)
// lexicographically). A detection is suppressed iff its IoU with an
// already-kept detection exceeds the threshold. Idempotent.
inline std::vector<Detection> nms(std::vector<Detection> detections, double iou_threshold) {
    std::sort(detections.begin(), detections.end(), [](const Detection& a, const Detection& b) {
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        if (a.bbox.area() != b.bbox.area()) return a.bbox.area() > b.bbox.area();
        return bbox_less(a.bbox, b.bbox);
    });
    std::vector<Detection> kept;
    for (Detection& d : detections) {
        bool suppressed = false;
        for (const Detection& k : kept) {
            if (iou(d.bbox, k.bbox) > iou_threshold) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(std::move(d));
    }
    return kept;
}

// ============================================================================
// Full non-text pipeline
// ============================================================================

namespace detail {

inline ClassifierVerdict label_candidate(const RgbImage& image, const GreyMap& gradient,
                                         const BBox& bbox, const RunConfig& config,
                                         Classifier* external) {
    if (external) return external->classify(crop(image, bbox), bbox);
    return classify_region_heuristic(gradient, bbox, config.vocabulary,
                                     config.heuristic_rules());
}

}  // namespace detail

// Top-down coarse-to-fine detection of non-text GUI elements:
// grey map -> layout blocks -> gradient binarization -> per-block connected
// components -> classification -> NMS. Picture blocks are reported as a
// single ImageView detection and never descended into. Without an external
// classifier every detection carries confidence 1.0.
inline std::vector<Detection> detect_nontext(const RgbImage& image, const RunConfig& config = {},
                                             Classifier* external = nullptr) {
    const GreyMap grey = to_grey(image);
    const GreyMap gradient = gradient_map(grey);
    detail::BlockScan scan = detail::scan_blocks(grey, gradient, config);
    const BinaryMap binary = binarize(gradient, config.binarize_threshold);

    // External verdicts override the texture heuristic for block kind.
    std::vector<ClassifierVerdict> block_verdicts(scan.blocks.size());
    if (external) {
        for (std::size_t i = 0; i < scan.blocks.size(); ++i) {
            Block& block = scan.blocks[i];
            block_verdicts[i] = external->classify(crop(image, block.bbox), block.bbox);
            block.kind = block_verdicts[i].label == "ImageView" ? BlockKind::Image
                                                                : BlockKind::WidgetBearing;
        }
    }

    std::vector<Detection> detections;
    const auto emit = [&](const BBox& bbox, int block_index) {
        const ClassifierVerdict v =
            detail::label_candidate(image, gradient, bbox, config, external);
        Detection d;
        d.bbox = bbox;
        d.label = v.label;
        d.confidence = external ? v.confidence : 1.0;
        d.channel = Channel::NonText;
        d.source_block = block_index;
        detections.push_back(std::move(d));
    };

    for (std::size_t bi = 0; bi < scan.blocks.size(); ++bi) {
        const Block& block = scan.blocks[bi];
        if (block.kind == BlockKind::Image) {
            Detection d;
            d.bbox = block.bbox;
            d.label = "ImageView";
            d.confidence = external ? block_verdicts[bi].confidence : 1.0;
            d.channel = Channel::NonText;
            d.source_block = int(bi);
            detections.push_back(std::move(d));
            continue;
        }
        const BinaryMap segment = segment_block(binary, block);
        for (const BBox& local : detect_regions_in_block(segment, config.component_min_area)) {
            const BBox screen{local.x0 + block.bbox.x0, local.y0 + block.bbox.y0,
                              local.x1 + block.bbox.x0, local.y1 + block.bbox.y0};
            emit(screen, int(bi));
        }
    }

    // Rectangular regions nested inside a widget-bearing block are element
    // candidates of their own; picture blocks swallow theirs.
    for (const auto& [bbox, enclosing] : scan.nested) {
        if (scan.blocks[enclosing].kind == BlockKind::Image) continue;
        emit(bbox, enclosing);
    }

    return nms(std::move(detections), config.nms_iou);
}

}  // namespace uied
