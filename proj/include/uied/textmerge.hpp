#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uied/elements.hpp"
#include "uied/error.hpp"
#include "uied/geometry.hpp"

namespace uied {

// One box from an external scene-text detector. Quadrilateral detections are
// reduced to their axis-aligned bounding box at load time.
struct TextBox {
    BBox bbox;
    double confidence = 1.0;
    std::optional<std::string> text;
};

namespace detail {

inline bool is_number_token(const std::string& tok) {
    if (tok.empty()) return false;
    char* end = nullptr;
    std::strtod(tok.c_str(), &end);
    return end == tok.c_str() + tok.size();
}

}  // namespace detail

// Parses one text-box record. Grammar (whitespace-delimited):
//   x0 y0 x1 y1 [confidence] [text...]                axis-aligned form
//   x1 y1 x2 y2 x3 y3 x4 y4 [confidence] [text...]    quadrilateral form
// The quad form is chosen when at least 8 leading tokens are numeric; one
// further numeric token is the confidence and the remainder is free text.
inline TextBox parse_text_box(const std::string& record, int line_no = 0) {
    std::istringstream in(record);
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);

    std::size_t numeric = 0;
    while (numeric < tokens.size() && detail::is_number_token(tokens[numeric])) ++numeric;
    std::size_t coords;
    if (numeric >= 8)
        coords = 8;
    else if (numeric >= 4)
        coords = 4;
    else
        throw ParseError("text box: expected 4 or 8 leading coordinates", line_no);

    std::vector<double> vals(coords);
    for (std::size_t i = 0; i < coords; ++i) vals[i] = std::strtod(tokens[i].c_str(), nullptr);

    TextBox box;
    if (coords == 4) {
        box.bbox = {int(std::lround(vals[0])), int(std::lround(vals[1])),
                    int(std::lround(vals[2])), int(std::lround(vals[3]))};
    } else {
        double xmin = vals[0], xmax = vals[0], ymin = vals[1], ymax = vals[1];
        for (std::size_t i = 2; i < 8; i += 2) {
            xmin = std::min(xmin, vals[i]);
            xmax = std::max(xmax, vals[i]);
            ymin = std::min(ymin, vals[i + 1]);
            ymax = std::max(ymax, vals[i + 1]);
        }
        box.bbox = {int(std::floor(xmin)), int(std::floor(ymin)), int(std::ceil(xmax)),
                    int(std::ceil(ymax))};
    }
    if (!box.bbox.valid()) throw ParseError("text box: degenerate bounds", line_no);

    std::size_t next = coords;
    if (next < tokens.size() && detail::is_number_token(tokens[next])) {
        box.confidence = std::strtod(tokens[next].c_str(), nullptr);
        if (box.confidence < 0.0 || box.confidence > 1.0)
            throw ParseError("text box: confidence outside [0,1]", line_no);
        ++next;
    }
    if (next < tokens.size()) {
        std::string text = tokens[next];
        for (std::size_t i = next + 1; i < tokens.size(); ++i) text += " " + tokens[i];
        box.text = std::move(text);
    }
    return box;
}

// Loads text boxes from a line-delimited file ("#uied-txt v1" header and
// '#' comment lines are skipped). Boxes are clipped to the image bounds
// when dimensions are supplied; boxes entirely outside are dropped.
inline std::vector<TextBox> load_text_boxes(std::istream& in,
                                            std::optional<BBox> image_bounds = std::nullopt) {
    std::vector<TextBox> boxes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        TextBox box = parse_text_box(line, line_no);
        if (image_bounds) {
            auto clipped = intersect(box.bbox, *image_bounds);
            if (!clipped) continue;
            box.bbox = *clipped;
        }
        boxes.push_back(std::move(box));
    }
    return boxes;
}

inline std::vector<TextBox> load_text_boxes(const std::string& path,
                                            std::optional<BBox> image_bounds = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open text-box file: " + path);
    return load_text_boxes(in, image_bounds);
}

// Merges GUI text with non-text detections. A text box is discarded iff it
// lies (at least `containment` of its own area) inside some non-text
// detection that is not an ImageView; text over pictures is genuine scene
// text and survives. Surviving boxes become TextView detections on the text
// channel. Non-text detections always pass through untouched.
inline std::vector<Detection> merge_text(const std::vector<Detection>& nontext,
                                         const std::vector<TextBox>& texts,
                                         double containment_threshold = 0.8) {
    std::vector<Detection> merged = nontext;
    for (const TextBox& text : texts) {
        bool discard = false;
        for (const Detection& widget : nontext) {
            if (widget.channel != Channel::NonText) continue;
            if (widget.label == "ImageView") continue;
            if (containment(text.bbox, widget.bbox) >= containment_threshold) {
                discard = true;
                break;
            }
        }
        if (discard) continue;
        Detection d;
        d.bbox = text.bbox;
        d.label = "TextView";
        d.confidence = text.confidence;
        d.channel = Channel::Text;
        merged.push_back(std::move(d));
    }
    return merged;
}

}  // namespace uied
