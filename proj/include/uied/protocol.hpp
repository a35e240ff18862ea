#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "uied/classify.hpp"
#include "uied/error.hpp"
#include "uied/geometry.hpp"
#include "uied/image.hpp"

namespace uied {

// Classifier protocol v1. One JSON record per line on either transport:
//   request:  {"bbox":[x0,y0,x1,y1],"h":H,"png":"<base64>","v":1,"vocab":"<hash>","w":W}
//   response: {"confidence":C,"label":"Name","v":1}
// Keys are serialized in sorted order with no whitespace, so a given crop
// always frames to the same bytes.
inline constexpr int kProtocolVersion = 1;

// ============================================================================
// base64
// ============================================================================

namespace detail {

inline constexpr char kB64Alphabet[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

}  // namespace detail

inline std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < data.size(); i += 3) {
        const std::uint32_t n = (data[i] << 16) | (data[i + 1] << 8) | data[i + 2];
        out.push_back(detail::kB64Alphabet[(n >> 18) & 63]);
        out.push_back(detail::kB64Alphabet[(n >> 12) & 63]);
        out.push_back(detail::kB64Alphabet[(n >> 6) & 63]);
        out.push_back(detail::kB64Alphabet[n & 63]);
    }
    const std::size_t rest = data.size() - i;
    if (rest == 1) {
        const std::uint32_t n = data[i] << 16;
        out.push_back(detail::kB64Alphabet[(n >> 18) & 63]);
        out.push_back(detail::kB64Alphabet[(n >> 12) & 63]);
        out += "==";
    } else if (rest == 2) {
        const std::uint32_t n = (data[i] << 16) | (data[i + 1] << 8);
        out.push_back(detail::kB64Alphabet[(n >> 18) & 63]);
        out.push_back(detail::kB64Alphabet[(n >> 12) & 63]);
        out.push_back(detail::kB64Alphabet[(n >> 6) & 63]);
        out += "=";
    }
    return out;
}

inline std::vector<std::uint8_t> base64_decode(const std::string& text) {
    std::vector<int> rev(256, -1);
    for (int i = 0; i < 64; ++i) rev[std::uint8_t(detail::kB64Alphabet[i])] = i;
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    std::uint32_t buf = 0;
    int bits = 0;
    for (char c : text) {
        if (c == '=' || c == '\n' || c == '\r') continue;
        const int v = rev[std::uint8_t(c)];
        if (v < 0) throw ProtocolError("base64: invalid character");
        buf = (buf << 6) | std::uint32_t(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(std::uint8_t((buf >> bits) & 0xFF));
        }
    }
    return out;
}

// ============================================================================
// Record framing
// ============================================================================

struct ClassifyRequest {
    int w = 0;
    int h = 0;
    BBox bbox;          // crop location in the source screenshot
    std::string png;    // base64 of the PNG-encoded crop
    std::string vocab;  // vocabulary hash the labels must come from
};

inline std::string encode_request(const ClassifyRequest& req) {
    nlohmann::json j;
    j["v"] = kProtocolVersion;
    j["vocab"] = req.vocab;
    j["w"] = req.w;
    j["h"] = req.h;
    j["bbox"] = {req.bbox.x0, req.bbox.y0, req.bbox.x1, req.bbox.y1};
    j["png"] = req.png;
    return j.dump();
}

inline ClassifyRequest decode_request(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("request: not valid JSON: ") + e.what());
    }
    if (!j.contains("v") || j["v"] != kProtocolVersion)
        throw ProtocolError("request: missing or unsupported protocol version");
    ClassifyRequest req;
    try {
        req.w = j.at("w").get<int>();
        req.h = j.at("h").get<int>();
        const auto& b = j.at("bbox");
        if (!b.is_array() || b.size() != 4) throw ProtocolError("request: bbox must have 4 ints");
        req.bbox = {b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()};
        req.png = j.at("png").get<std::string>();
        req.vocab = j.value("vocab", std::string());
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("request: bad field: ") + e.what());
    }
    return req;
}

inline std::string encode_response(const ClassifierVerdict& verdict) {
    nlohmann::json j;
    j["v"] = kProtocolVersion;
    j["label"] = verdict.label;
    j["confidence"] = verdict.confidence;
    return j.dump();
}

// Parses and validates a response line. The label must belong to the
// vocabulary and the confidence must lie in [0,1].
inline ClassifierVerdict decode_response(const std::string& line, const ClassVocabulary& vocab) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("response: not valid JSON: ") + e.what());
    }
    if (!j.contains("v") || j["v"] != kProtocolVersion)
        throw ProtocolError("response: missing or unsupported protocol version");
    ClassifierVerdict verdict;
    try {
        verdict.label = j.at("label").get<std::string>();
        verdict.confidence = j.at("confidence").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("response: bad field: ") + e.what());
    }
    if (!vocab.contains(verdict.label))
        throw ProtocolError("response: label '" + verdict.label + "' not in vocabulary");
    if (!(verdict.confidence >= 0.0 && verdict.confidence <= 1.0))
        throw ProtocolError("response: confidence " + std::to_string(verdict.confidence) +
                            " outside [0,1]");
    return verdict;
}

}  // namespace uied
