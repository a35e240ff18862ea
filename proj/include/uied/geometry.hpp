#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

namespace uied {

struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned box in pixel coordinates, half-open: [x0,x1) x [y0,y1).
// Origin is the top-left corner, x grows rightward, y grows downward.
struct BBox {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    std::int64_t area() const { return std::int64_t(width()) * height(); }
    bool valid() const { return x0 < x1 && y0 < y1; }

    bool contains(Point p) const {
        return p.x >= x0 && p.x < x1 && p.y >= y0 && p.y < y1;
    }
    bool contains(const BBox& other) const {
        return other.x0 >= x0 && other.y0 >= y0 && other.x1 <= x1 && other.y1 <= y1;
    }

    friend bool operator==(const BBox&, const BBox&) = default;
};

inline std::optional<BBox> intersect(const BBox& a, const BBox& b) {
    BBox r{std::max(a.x0, b.x0), std::max(a.y0, b.y0),
           std::min(a.x1, b.x1), std::min(a.y1, b.y1)};
    if (!r.valid()) return std::nullopt;
    return r;
}

inline std::int64_t intersection_area(const BBox& a, const BBox& b) {
    auto r = intersect(a, b);
    return r ? r->area() : 0;
}

// Intersection over union, I/(A+B-I). 0 for disjoint boxes, 1 for identical.
inline double iou(const BBox& a, const BBox& b) {
    const std::int64_t inter = intersection_area(a, b);
    if (inter == 0) return 0.0;
    const std::int64_t uni = a.area() + b.area() - inter;
    return double(inter) / double(uni);
}

// Fraction of a's area covered by b.
inline double containment(const BBox& a, const BBox& b) {
    if (a.area() <= 0) return 0.0;
    return double(intersection_area(a, b)) / double(a.area());
}

// Lexicographic (x0, y0, x1, y1); used for deterministic tie-breaks.
inline bool bbox_less(const BBox& a, const BBox& b) {
    if (a.x0 != b.x0) return a.x0 < b.x0;
    if (a.y0 != b.y0) return a.y0 < b.y0;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.y1 < b.y1;
}

}  // namespace uied
