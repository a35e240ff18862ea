#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "uied/error.hpp"
#include "uied/eval.hpp"
#include "uied/geometry.hpp"

namespace uied {

// One screenshot plus its ground-truth elements.
struct Screen {
    std::string id;
    int width = 0;
    int height = 0;
    std::vector<GroundTruthElement> elements;
    std::optional<std::string> image_path;
};

// ============================================================================
// Hierarchy import
// ============================================================================

// Maps raw metadata class names onto the evaluation vocabulary. Lookup
// strips any package prefix ("android.widget.Button" -> "Button") and then
// consults the table; unmapped names pass through stripped.
struct ClassNameMap {
    std::map<std::string, std::string> table;

    std::string resolve(const std::string& raw) const {
        const std::size_t dot = raw.find_last_of('.');
        const std::string stripped = dot == std::string::npos ? raw : raw.substr(dot + 1);
        const auto it = table.find(stripped);
        if (it != table.end()) return it->second;
        const auto raw_it = table.find(raw);
        if (raw_it != table.end()) return raw_it->second;
        return stripped;
    }

    static ClassNameMap standard() {
        ClassNameMap m;
        m.table = {
            {"AppCompatButton", "Button"},   {"AppCompatImageButton", "ImageButton"},
            {"AppCompatTextView", "TextView"}, {"AppCompatEditText", "EditText"},
            {"AppCompatCheckBox", "CheckBox"}, {"CheckedTextView", "TextView"},
            {"ImageView", "ImageView"},      {"GlideImageView", "ImageView"},
            {"SwitchCompat", "Switch"},      {"ToggleButton", "ToggleButton"},
        };
        return m;
    }
};

namespace detail {

inline Channel channel_for_label(const std::string& label) {
    return label == "TextView" ? Channel::Text : Channel::NonText;
}

inline void collect_leaves(const nlohmann::json& node, const BBox& screen_bounds,
                           const ClassNameMap& classes, std::vector<GroundTruthElement>& out) {
    if (!node.is_object()) throw ParseError("hierarchy: node is not an object");
    const bool visible = node.value("visible", true);
    if (!visible) return;  // invisible subtrees contribute nothing

    const auto children = node.find("children");
    if (children != node.end() && children->is_array() && !children->empty()) {
        for (const auto& child : *children) collect_leaves(child, screen_bounds, classes, out);
        return;  // containers only describe layout
    }

    const auto bounds = node.find("bounds");
    if (bounds == node.end() || !bounds->is_array() || bounds->size() != 4) return;
    BBox bbox;
    try {
        bbox = {(*bounds)[0].get<int>(), (*bounds)[1].get<int>(), (*bounds)[2].get<int>(),
                (*bounds)[3].get<int>()};
    } catch (const nlohmann::json::exception&) {
        throw ParseError("hierarchy: bounds must be 4 integers");
    }
    if (!bbox.valid()) return;                       // degenerate bounds
    if (!screen_bounds.contains(bbox)) return;       // outside the screen

    const std::string raw = node.value("class", std::string());
    if (raw.empty()) return;
    const std::string label = classes.resolve(raw);
    // Leaves whose class still describes layout carry no element.
    if (label.find("Layout") != std::string::npos) return;

    out.push_back({bbox, label, channel_for_label(label)});
}

}  // namespace detail

// Builds a Screen from a view-hierarchy JSON document:
//   {"id": "...", "width": W, "height": H, "image": "...",
//    "root": {"class": "...", "bounds": [x0,y0,x1,y1], "visible": true,
//             "children": [...]}}
// Visible leaf nodes with valid in-screen bounds become elements; container
// nodes, invisible subtrees, layout classes and degenerate or out-of-screen
// bounds are dropped. Zero usable leaves is not an error: the screen comes
// back empty and corpus filtering rejects it.
inline Screen import_hierarchy(const nlohmann::json& doc, int width, int height,
                               const std::string& fallback_id = "",
                               const ClassNameMap& classes = ClassNameMap::standard()) {
    if (width < 1 || height < 1) throw DimensionError("import_hierarchy: bad screen dimensions");
    if (!doc.is_object()) throw ParseError("hierarchy: document is not an object");

    Screen screen;
    screen.id = doc.value("id", fallback_id);
    screen.width = width;
    screen.height = height;
    if (doc.contains("image") && doc["image"].is_string())
        screen.image_path = doc["image"].get<std::string>();

    const auto root = doc.find("root");
    if (root == doc.end()) throw ParseError("hierarchy: missing root node");
    detail::collect_leaves(*root, {0, 0, width, height}, classes, screen.elements);
    return screen;
}

inline Screen import_hierarchy_file(const std::string& path, std::optional<int> width_override,
                                    std::optional<int> height_override,
                                    const ClassNameMap& classes = ClassNameMap::standard()) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open hierarchy file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("hierarchy " + path + ": " + e.what());
    }
    const int width = width_override.value_or(doc.value("width", 0));
    const int height = height_override.value_or(doc.value("height", 0));
    if (width < 1 || height < 1)
        throw ParseError("hierarchy " + path + ": screen dimensions missing");
    // Default id: file stem.
    std::string stem = path;
    if (const auto slash = stem.find_last_of("/\\"); slash != std::string::npos)
        stem = stem.substr(slash + 1);
    if (const auto dot = stem.find_last_of('.'); dot != std::string::npos)
        stem = stem.substr(0, dot);
    return import_hierarchy(doc, width, height, stem, classes);
}

// ============================================================================
// Corpus filtering
// ============================================================================

struct ScreenVerdict {
    std::string id;
    std::string reason;
};

struct CorpusFilterResult {
    std::vector<Screen> kept;
    std::vector<ScreenVerdict> rejected;
    std::vector<ScreenVerdict> flagged;  // kept, but single-channel
};

// Screens without usable elements are rejected ("no-visible-leaves").
// Single-channel screens are flagged "text-only"/"nontext-only" and kept by
// default; set reject_single_channel to drop them like the paper's corpus
// construction did.
inline CorpusFilterResult filter_corpus(const std::vector<Screen>& screens,
                                        bool reject_single_channel = false) {
    CorpusFilterResult result;
    for (const Screen& screen : screens) {
        if (screen.elements.empty()) {
            result.rejected.push_back({screen.id, "no-visible-leaves"});
            continue;
        }
        const bool any_text = std::any_of(
            screen.elements.begin(), screen.elements.end(),
            [](const GroundTruthElement& e) { return e.channel == Channel::Text; });
        const bool any_nontext = std::any_of(
            screen.elements.begin(), screen.elements.end(),
            [](const GroundTruthElement& e) { return e.channel == Channel::NonText; });
        if (any_text != any_nontext) {
            const std::string reason = any_text ? "text-only" : "nontext-only";
            if (reject_single_channel) {
                result.rejected.push_back({screen.id, reason});
                continue;
            }
            result.flagged.push_back({screen.id, reason});
        }
        result.kept.push_back(screen);
    }
    return result;
}

// ============================================================================
// System-bar stripping
// ============================================================================

// Crops `status_px` rows off the top and `nav_px` off the bottom,
// translating element boxes accordingly. Elements fully inside the removed
// bands disappear; straddlers are clipped.
inline Screen strip_system_bars(const Screen& screen, int status_px, int nav_px) {
    if (status_px < 0 || nav_px < 0)
        throw Error("strip_system_bars: bar heights must be >= 0");
    const int new_height = screen.height - status_px - nav_px;
    if (new_height < 1)
        throw Error("strip_system_bars: bars (" + std::to_string(status_px) + "+" +
                    std::to_string(nav_px) + ") exceed screen height " +
                    std::to_string(screen.height));

    Screen out = screen;
    out.height = new_height;
    out.elements.clear();
    const BBox content{0, 0, screen.width, new_height};
    for (GroundTruthElement element : screen.elements) {
        element.bbox.y0 -= status_px;
        element.bbox.y1 -= status_px;
        const auto clipped = intersect(element.bbox, content);
        if (!clipped) continue;
        element.bbox = *clipped;
        out.elements.push_back(std::move(element));
    }
    return out;
}

}  // namespace uied
