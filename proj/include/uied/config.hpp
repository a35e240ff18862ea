#pragma once

#include <string>
#include <vector>

#include "uied/classify.hpp"
#include "uied/error.hpp"

namespace uied {

// Tunables for the detection pipeline and the evaluation harness. Defaults
// are the documented baseline; the CLI layers config-file and command-line
// overrides on top (CLI > file > defaults).
struct RunConfig {
    // Binarization: gradient magnitude above which a pixel is foreground.
    int binarize_threshold = 4;
    // Coarse stage: seed-relative intensity tolerance for block flood fill.
    int flood_tolerance = 16;
    // Element candidates below this pixel count are noise.
    int component_min_area = 25;
    // Blocks below this fraction of the screen area are noise.
    double block_min_area_frac = 0.005;
    // A block with at least this fraction of high-gradient pixels is an image.
    double image_gradient_density = 0.35;
    // Rectangle recognition constants.
    double rect_epsilon_frac = 0.02;
    double rect_min_fill = 0.9;
    // Greedy suppression threshold for duplicate detections.
    double nms_iou = 0.5;
    // Evaluation thresholds; accuracy is reported at the highest one.
    std::vector<double> iou_thresholds = {0.5, 0.6, 0.7, 0.8, 0.9};
    // A text box covered by a non-image widget at least this much is dropped.
    double text_containment = 0.8;
    // OS bar heights stripped from imported screens (opt-in, device specific).
    int status_bar_px = 0;
    int nav_bar_px = 0;
    // "" = built-in heuristic; otherwise http://HOST:PORT or exec:COMMAND.
    std::string classifier_endpoint;

    ClassVocabulary vocabulary = ClassVocabulary::standard();

    void validate() const {
        if (binarize_threshold < 0 || binarize_threshold > 255)
            throw Error("config: binarize_threshold must be in [0,255]");
        if (flood_tolerance < 0 || flood_tolerance > 255)
            throw Error("config: flood_tolerance must be in [0,255]");
        if (component_min_area < 0) throw Error("config: component_min_area must be >= 0");
        if (block_min_area_frac < 0.0 || block_min_area_frac > 1.0)
            throw Error("config: block_min_area_frac must be in [0,1]");
        if (nms_iou < 0.0 || nms_iou > 1.0) throw Error("config: nms_iou must be in [0,1]");
        if (text_containment < 0.0 || text_containment > 1.0)
            throw Error("config: text_containment must be in [0,1]");
        if (iou_thresholds.empty()) throw Error("config: iou_thresholds must not be empty");
        for (double t : iou_thresholds)
            if (t <= 0.0 || t > 1.0) throw Error("config: iou_thresholds must be in (0,1]");
        if (status_bar_px < 0 || nav_bar_px < 0)
            throw Error("config: bar heights must be >= 0");
    }

    HeuristicRules heuristic_rules() const {
        HeuristicRules rules;
        rules.image_gradient_density = image_gradient_density;
        rules.gradient_threshold = binarize_threshold;
        return rules;
    }
};

}  // namespace uied
