#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "uied/error.hpp"
#include "uied/geometry.hpp"
#include "uied/image.hpp"
#include "uied/pixelops.hpp"

namespace uied {

// ============================================================================
// Element-class vocabulary
// ============================================================================

// Ordered, unique element-class names. The default set covers the common
// Android widget classes; callers may load their own list.
class ClassVocabulary {
public:
    ClassVocabulary() = default;

    explicit ClassVocabulary(std::vector<std::string> names) : names_(std::move(names)) {
        if (names_.empty()) throw Error("vocabulary: must not be empty");
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw Error("vocabulary: empty class name");
            if (!index_.emplace(names_[i], i).second)
                throw Error("vocabulary: duplicate class name '" + names_[i] + "'");
        }
    }

    static ClassVocabulary standard() {
        return ClassVocabulary({"Button", "CheckBox", "Chronometer", "EditText", "ImageButton",
                                "ImageView", "ProgressBar", "RadioButton", "RatingBar", "SeekBar",
                                "Spinner", "Switch", "TextView", "ToggleButton", "VideoView"});
    }

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    bool contains(const std::string& name) const { return index_.count(name) != 0; }

    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : int(it->second);
    }

    // FNV-1a over the newline-joined names; identifies the vocabulary in the
    // classifier protocol handshake fields.
    std::string hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (const std::string& name : names_) {
            for (char c : name) {
                h ^= std::uint8_t(c);
                h *= 1099511628211ULL;
            }
            h ^= std::uint8_t('\n');
            h *= 1099511628211ULL;
        }
        static const char* hex = "0123456789abcdef";
        std::string out(16, '0');
        for (int i = 15; i >= 0; --i) {
            out[i] = hex[h & 0xF];
            h >>= 4;
        }
        return out;
    }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct ClassifierVerdict {
    std::string label;
    double confidence = 0.0;
};

// Interface the detection pipeline talks to when an external classifier is
// attached; concrete transports live in classify_client.hpp. Implementations
// must tolerate calls from one thread at a time.
class Classifier {
public:
    virtual ~Classifier() = default;
    virtual ClassifierVerdict classify(const RgbImage& crop, const BBox& source_bbox) = 0;
    virtual const ClassVocabulary& vocabulary() const = 0;
};

// ============================================================================
// Heuristic baseline classifier
// ============================================================================

// Shape rules used by the deterministic baseline, in evaluation order:
//   1. texture-dense region                          -> ImageView
//   2. wide and flat (w/h >= 4, height < 5% screen)  -> progress-bar group
//   3. near-square and tiny (area < 0.5% screen)     -> small-control group
//   4. anything else                                 -> fallback class
// Group labels resolve to the first group member present in the vocabulary.
struct HeuristicRules {
    double image_gradient_density = 0.35;
    int gradient_threshold = 4;
    double bar_aspect = 4.0;
    double bar_max_height_frac = 0.05;
    double square_aspect_lo = 0.75;
    double square_aspect_hi = 1.33;
    double small_area_frac = 0.005;
    std::vector<std::string> bar_group = {"ProgressBar", "SeekBar", "RatingBar"};
    std::vector<std::string> small_group = {"CheckBox", "RadioButton", "Switch", "ToggleButton"};
    std::vector<std::string> fallback_group = {"Button", "TextView"};
};

namespace detail {

inline std::string first_in_vocabulary(const std::vector<std::string>& group,
                                       const ClassVocabulary& vocab) {
    for (const std::string& name : group)
        if (vocab.contains(name)) return name;
    return vocab.names().front();
}

// Fraction of bbox pixels whose forward-difference gradient exceeds the
// threshold; the gradient is computed on the full image so box borders see
// their true neighbors.
inline double gradient_density(const GreyMap& gradient, const BBox& bbox, int threshold) {
    std::int64_t hot = 0;
    for (int y = bbox.y0; y < bbox.y1; ++y)
        for (int x = bbox.x0; x < bbox.x1; ++x)
            if (gradient.at(x, y) > threshold) ++hot;
    return double(hot) / double(bbox.area());
}

}  // namespace detail

// Deterministic stand-in for a CNN classifier: identical pixels and bbox
// always produce the identical verdict. Confidence is fixed at 0.5 to mark
// the verdict as heuristic.
inline ClassifierVerdict classify_region_heuristic(const GreyMap& gradient, const BBox& bbox,
                                                   const ClassVocabulary& vocab,
                                                   const HeuristicRules& rules = {}) {
    if (!gradient.bounds().contains(bbox) || !bbox.valid())
        throw DimensionError("classify_region_heuristic: bbox out of image bounds");

    const double screen_area = double(gradient.width) * gradient.height;
    const double aspect = double(bbox.width()) / double(bbox.height());

    std::string label;
    if (detail::gradient_density(gradient, bbox, rules.gradient_threshold) >=
            rules.image_gradient_density &&
        vocab.contains("ImageView")) {
        label = "ImageView";
    } else if (aspect >= rules.bar_aspect &&
               bbox.height() < rules.bar_max_height_frac * gradient.height) {
        label = detail::first_in_vocabulary(rules.bar_group, vocab);
    } else if (aspect >= rules.square_aspect_lo && aspect <= rules.square_aspect_hi &&
               double(bbox.area()) < rules.small_area_frac * screen_area) {
        label = detail::first_in_vocabulary(rules.small_group, vocab);
    } else {
        label = detail::first_in_vocabulary(rules.fallback_group, vocab);
    }
    return {label, 0.5};
}

inline ClassifierVerdict classify_region_heuristic(const RgbImage& image, const BBox& bbox,
                                                   const ClassVocabulary& vocab,
                                                   const HeuristicRules& rules = {}) {
    return classify_region_heuristic(gradient_map(to_grey(image)), bbox, vocab, rules);
}

}  // namespace uied
