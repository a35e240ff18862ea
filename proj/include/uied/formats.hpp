#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uied/elements.hpp"
#include "uied/error.hpp"
#include "uied/eval.hpp"
#include "uied/textmerge.hpp"

namespace uied {

// Line-delimited, whitespace-separated files with a one-line versioned
// header. Detection records are
//   screen_id x0 y0 x1 y1 label confidence channel     (#uied-det v1)
// and ground-truth records drop the confidence column:
//   screen_id x0 y0 x1 y1 label channel                (#uied-gt v1)
// Ids and labels may not contain whitespace; the writers replace any with
// underscores so every written record reads back identically.

inline constexpr const char* kDetectionHeader = "#uied-det v1";
inline constexpr const char* kGroundTruthHeader = "#uied-gt v1";
inline constexpr const char* kTextBoxHeader = "#uied-txt v1";

namespace detail {

inline std::string sanitize_token(std::string s) {
    for (char& c : s)
        if (std::isspace(std::uint8_t(c))) c = '_';
    return s.empty() ? "_" : s;
}

inline std::string format_confidence(double c) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", c);
    return buf;
}

inline Channel parse_channel(const std::string& token, int line_no) {
    if (token == "nontext") return Channel::NonText;
    if (token == "text") return Channel::Text;
    throw ParseError("channel must be 'nontext' or 'text', got '" + token + "'", line_no);
}

inline void expect_header(std::istream& in, const char* header, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(std::string(what) + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != header)
        throw ParseError(std::string(what) + ": expected header '" + header + "', got '" + line +
                         "'", 1);
}

}  // namespace detail

// ============================================================================
// Detection files
// ============================================================================

inline void write_detections(std::ostream& out, const DetectionCorpus& corpus) {
    out << kDetectionHeader << "\n";
    for (const auto& [id, dets] : corpus) {
        for (const Detection& d : dets) {
            out << detail::sanitize_token(id) << ' ' << d.bbox.x0 << ' ' << d.bbox.y0 << ' '
                << d.bbox.x1 << ' ' << d.bbox.y1 << ' ' << detail::sanitize_token(d.label) << ' '
                << detail::format_confidence(d.confidence) << ' ' << channel_name(d.channel)
                << "\n";
        }
    }
}

inline DetectionCorpus read_detections(std::istream& in) {
    detail::expect_header(in, kDetectionHeader, "detection file");
    DetectionCorpus corpus;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string id, label, channel;
        Detection d;
        double confidence;
        if (!(fields >> id >> d.bbox.x0 >> d.bbox.y0 >> d.bbox.x1 >> d.bbox.y1 >> label >>
              confidence >> channel))
            throw ParseError("detection record needs 8 fields", line_no);
        if (!d.bbox.valid()) throw ParseError("detection bbox is degenerate", line_no);
        if (confidence < 0.0 || confidence > 1.0)
            throw ParseError("confidence outside [0,1]", line_no);
        d.label = label;
        d.confidence = confidence;
        d.channel = detail::parse_channel(channel, line_no);
        corpus[id].push_back(std::move(d));
    }
    return corpus;
}

// ============================================================================
// Ground-truth files
// ============================================================================

inline void write_ground_truth(std::ostream& out, const GroundTruthCorpus& corpus) {
    out << kGroundTruthHeader << "\n";
    for (const auto& [id, gts] : corpus) {
        for (const GroundTruthElement& g : gts) {
            out << detail::sanitize_token(id) << ' ' << g.bbox.x0 << ' ' << g.bbox.y0 << ' '
                << g.bbox.x1 << ' ' << g.bbox.y1 << ' ' << detail::sanitize_token(g.label) << ' '
                << channel_name(g.channel) << "\n";
        }
    }
}

inline GroundTruthCorpus read_ground_truth(std::istream& in) {
    detail::expect_header(in, kGroundTruthHeader, "ground-truth file");
    GroundTruthCorpus corpus;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string id, label, channel;
        GroundTruthElement g;
        if (!(fields >> id >> g.bbox.x0 >> g.bbox.y0 >> g.bbox.x1 >> g.bbox.y1 >> label >> channel))
            throw ParseError("ground-truth record needs 7 fields", line_no);
        if (!g.bbox.valid()) throw ParseError("ground-truth bbox is degenerate", line_no);
        g.label = label;
        g.channel = detail::parse_channel(channel, line_no);
        corpus[id].push_back(std::move(g));
    }
    return corpus;
}

// ============================================================================
// Text-box files (writer; the reader lives in textmerge.hpp)
// ============================================================================

inline void write_text_boxes(std::ostream& out, const std::vector<TextBox>& boxes) {
    out << kTextBoxHeader << "\n";
    for (const TextBox& t : boxes) {
        out << t.bbox.x0 << ' ' << t.bbox.y0 << ' ' << t.bbox.x1 << ' ' << t.bbox.y1 << ' '
            << detail::format_confidence(t.confidence);
        if (t.text) out << ' ' << *t.text;
        out << "\n";
    }
}

// ============================================================================
// File helpers
// ============================================================================

template <typename WriteFn>
inline void write_text_file(const std::string& path, WriteFn&& fn) {
    // Write to a sibling temp file and rename, so readers never see a
    // half-written file.
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write file: " + tmp);
        fn(out);
        if (!out) throw Error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " to " + path);
}

inline DetectionCorpus read_detections_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open detection file: " + path);
    return read_detections(in);
}

inline GroundTruthCorpus read_ground_truth_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open ground-truth file: " + path);
    return read_ground_truth(in);
}

}  // namespace uied
