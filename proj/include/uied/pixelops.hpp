#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <utility>
#include <vector>

#include "uied/geometry.hpp"
#include "uied/image.hpp"

namespace uied {

// ============================================================================
// Grey conversion and gradient binarization
// ============================================================================

// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0,255].
inline GreyMap to_grey(const RgbImage& image) {
    detail::check_dims(image.width, image.height, "to_grey");
    GreyMap grey(image.width, image.height);
    const std::uint8_t* src = image.pixels.data();
    for (std::size_t i = 0; i < grey.values.size(); ++i, src += 3) {
        const double luma = 0.299 * src[0] + 0.587 * src[1] + 0.114 * src[2];
        grey.values[i] = std::uint8_t(std::clamp<long>(std::lround(luma), 0, 255));
    }
    return grey;
}

// L1 forward-difference gradient magnitude:
//   out(x,y) = min(255, |g(x+1,y) - g(x,y)| + |g(x,y+1) - g(x,y)|)
// A missing right/bottom neighbor contributes 0, so the last column and row
// see only one difference and a 1x1 image maps to a single 0.
inline GreyMap gradient_map(const GreyMap& grey) {
    GreyMap out(grey.width, grey.height);
    for (int y = 0; y < grey.height; ++y) {
        for (int x = 0; x < grey.width; ++x) {
            const int v = grey.at(x, y);
            int mag = 0;
            if (x + 1 < grey.width) mag += std::abs(grey.at(x + 1, y) - v);
            if (y + 1 < grey.height) mag += std::abs(grey.at(x, y + 1) - v);
            out.at(x, y) = std::uint8_t(std::min(mag, 255));
        }
    }
    return out;
}

// A pixel becomes foreground (white) iff its gradient exceeds the threshold.
inline BinaryMap binarize(const GreyMap& gradient, int threshold) {
    BinaryMap out(gradient.width, gradient.height);
    for (std::size_t i = 0; i < gradient.values.size(); ++i)
        out.foreground[i] = gradient.values[i] > threshold ? 1 : 0;
    return out;
}

// ============================================================================
// Flood-fill region growing (coarse stage input)
// ============================================================================

struct FloodRegion {
    Point seed;                 // the raster-order pixel the region grew from
    int area = 0;
    BBox bbox;                  // tight bounds of the pixel set
    std::vector<Point> pixels;  // growth order (BFS from the seed)
};

// Grows 4-connected regions from raster-order seeds. A pixel joins the
// region iff |grey(pixel) - grey(seed)| <= tolerance. Every pixel is
// claimed by exactly one region; regions smaller than min_area are dropped
// after growth (their pixels stay claimed).
inline std::vector<FloodRegion> flood_fill_regions(const GreyMap& grey, int tolerance,
                                                   int min_area) {
    const int w = grey.width;
    const int h = grey.height;
    std::vector<std::uint8_t> visited(std::size_t(w) * h, 0);
    std::vector<FloodRegion> regions;
    std::deque<Point> queue;

    for (int sy = 0; sy < h; ++sy) {
        for (int sx = 0; sx < w; ++sx) {
            if (visited[std::size_t(sy) * w + sx]) continue;
            FloodRegion region;
            region.seed = {sx, sy};
            region.bbox = {sx, sy, sx + 1, sy + 1};
            const int seed_value = grey.at(sx, sy);

            visited[std::size_t(sy) * w + sx] = 1;
            queue.push_back(region.seed);
            while (!queue.empty()) {
                const Point p = queue.front();
                queue.pop_front();
                region.pixels.push_back(p);
                region.bbox.x0 = std::min(region.bbox.x0, p.x);
                region.bbox.y0 = std::min(region.bbox.y0, p.y);
                region.bbox.x1 = std::max(region.bbox.x1, p.x + 1);
                region.bbox.y1 = std::max(region.bbox.y1, p.y + 1);

                const Point neighbors[4] = {
                    {p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}};
                for (const Point& n : neighbors) {
                    if (n.x < 0 || n.x >= w || n.y < 0 || n.y >= h) continue;
                    std::uint8_t& seen = visited[std::size_t(n.y) * w + n.x];
                    if (seen) continue;
                    if (std::abs(grey.at(n.x, n.y) - seed_value) > tolerance) continue;
                    seen = 1;
                    queue.push_back(n);
                }
            }
            region.area = int(region.pixels.size());
            if (region.area >= min_area) regions.push_back(std::move(region));
        }
    }
    return regions;
}

// ============================================================================
// Two-pass connected-component labeling (8-connectivity)
// ============================================================================

struct Component {
    int label = 0;
    int area = 0;
    BBox bbox;
    Point anchor;  // first pixel in raster order; its left and upper neighbors
                   // are background, which the contour tracer relies on
};

namespace detail {

// Array-based union-find for provisional labels.
class LabelSolver {
public:
    explicit LabelSolver(std::size_t capacity) { parent_.reserve(capacity); }

    int fresh() {
        parent_.push_back(int(parent_.size()));
        return int(parent_.size()) - 1;
    }

    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }

    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<int> parent_;
};

}  // namespace detail

// Classic two-pass scan: the first pass assigns provisional labels from the
// four already-visited neighbors (W, NW, N, NE) and records equivalences,
// the second pass resolves them. Components below min_area are relabeled to
// background. Final ids are 1..count in raster order of the anchors.
inline std::pair<LabelMap, std::vector<Component>> label_components(const BinaryMap& binary,
                                                                    int min_area = 0) {
    const int w = binary.width;
    const int h = binary.height;
    LabelMap map(w, h);
    detail::LabelSolver solver(std::size_t(w) * h / 4 + 2);
    solver.fresh();  // provisional 0 = background

    std::vector<int>& lab = map.labels;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!binary.at(x, y)) continue;
            const std::size_t i = std::size_t(y) * w + x;
            int assigned = 0;
            const int prev[4][2] = {{x - 1, y}, {x - 1, y - 1}, {x, y - 1}, {x + 1, y - 1}};
            for (const auto& n : prev) {
                if (n[0] < 0 || n[0] >= w || n[1] < 0) continue;
                const int nl = lab[std::size_t(n[1]) * w + n[0]];
                if (nl == 0) continue;
                if (assigned == 0)
                    assigned = nl;
                else
                    solver.merge(assigned, nl);
            }
            lab[i] = assigned != 0 ? assigned : solver.fresh();
        }
    }

    // Second pass: resolve equivalences and gather per-root stats.
    std::vector<int> root_to_index;
    std::vector<Component> comps;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t i = std::size_t(y) * w + x;
            if (lab[i] == 0) continue;
            const int root = solver.find(lab[i]);
            if (std::size_t(root) >= root_to_index.size()) root_to_index.resize(root + 1, -1);
            int ci = root_to_index[root];
            if (ci < 0) {
                ci = int(comps.size());
                root_to_index[root] = ci;
                comps.push_back({0, 0, {x, y, x + 1, y + 1}, {x, y}});
            }
            Component& c = comps[ci];
            c.area += 1;
            c.bbox.x0 = std::min(c.bbox.x0, x);
            c.bbox.y0 = std::min(c.bbox.y0, y);
            c.bbox.x1 = std::max(c.bbox.x1, x + 1);
            c.bbox.y1 = std::max(c.bbox.y1, y + 1);
            lab[i] = root;
        }
    }

    // Compact: drop small components, renumber survivors 1..count in raster
    // order of their anchors (comps is already in that order).
    std::vector<int> final_of_comp(comps.size(), 0);
    std::vector<Component> kept;
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        if (comps[ci].area < min_area) continue;
        comps[ci].label = int(kept.size()) + 1;
        final_of_comp[ci] = comps[ci].label;
        kept.push_back(comps[ci]);
    }
    for (std::size_t i = 0; i < lab.size(); ++i)
        if (lab[i] != 0) lab[i] = final_of_comp[root_to_index[lab[i]]];
    map.count = int(kept.size());
    return {std::move(map), std::move(kept)};
}

// ============================================================================
// Suzuki-Abe outer border following
// ============================================================================

// Ordered border of a connected region. Points are listed in walk order,
// each listed once; consecutive points are 8-neighbors. For regions with an
// interior the walk closes (first and last points are 8-neighbors); a
// single pixel degenerates to one point.
struct Contour {
    std::vector<Point> points;

    BBox bbox() const {
        BBox b{points.front().x, points.front().y, points.front().x + 1, points.front().y + 1};
        for (const Point& p : points) {
            b.x0 = std::min(b.x0, p.x);
            b.y0 = std::min(b.y0, p.y);
            b.x1 = std::max(b.x1, p.x + 1);
            b.y1 = std::max(b.y1, p.y + 1);
        }
        return b;
    }

    // Closed polygonal length, diagonal steps counting sqrt(2).
    double perimeter() const {
        if (points.size() < 2) return 0.0;
        double len = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Point& a = points[i];
            const Point& b = points[(i + 1) % points.size()];
            len += std::hypot(double(b.x - a.x), double(b.y - a.y));
        }
        return len;
    }
};

namespace detail {

// 8-neighborhood in clockwise order starting west (y grows downward).
inline constexpr int kClockwise[8][2] = {{-1, 0}, {-1, -1}, {0, -1}, {1, -1},
                                         {1, 0},  {1, 1},   {0, 1},  {-1, 1}};

inline int neighbor_dir(Point center, Point n) {
    for (int d = 0; d < 8; ++d)
        if (center.x + kClockwise[d][0] == n.x && center.y + kClockwise[d][1] == n.y) return d;
    return -1;
}

}  // namespace detail

// Follows the outer border of the component containing `component.anchor`.
// The anchor must be the component's first pixel in raster order, so the
// pixel to its west is background. Under 8-connected labeling the walk
// cannot cross into another component.
inline Contour trace_contour(const BinaryMap& binary, const Component& component) {
    if (component.area <= 0) throw Error("trace_contour: empty component");
    const Point start = component.anchor;
    if (!binary.bounds().contains(start) || !binary.at(start.x, start.y))
        throw Error("trace_contour: anchor is not a foreground pixel");

    const auto fg = [&](Point p) {
        return p.x >= 0 && p.x < binary.width && p.y >= 0 && p.y < binary.height &&
               binary.at(p.x, p.y);
    };
    const auto step = [&](Point c, int dir) {
        return Point{c.x + detail::kClockwise[dir][0], c.y + detail::kClockwise[dir][1]};
    };

    // First foreground neighbor clockwise from west.
    int first_dir = -1;
    for (int d = 0; d < 8; ++d) {
        if (fg(step(start, d))) {
            first_dir = d;
            break;
        }
    }
    Contour contour;
    if (first_dir < 0) {
        contour.points.push_back(start);  // isolated pixel
        return contour;
    }

    const Point first_neighbor = step(start, first_dir);
    Point prev = first_neighbor;  // the pixel we arrived from (i2)
    Point cur = start;            // current border pixel (i3)

    std::vector<std::uint8_t> on_contour(std::size_t(binary.width) * binary.height, 0);
    while (true) {
        // Search counterclockwise, starting just past the arrival pixel, for
        // the next border pixel around cur.
        const int back = detail::neighbor_dir(cur, prev);
        Point next{};
        for (int k = 1; k <= 8; ++k) {
            const int d = (back - k % 8 + 8) % 8;
            const Point cand = step(cur, d);
            if (fg(cand)) {
                next = cand;
                break;
            }
        }
        std::uint8_t& seen = on_contour[std::size_t(cur.y) * binary.width + cur.x];
        if (!seen) {
            seen = 1;
            contour.points.push_back(cur);
        }
        if (next == start && cur == first_neighbor) break;  // walk closed
        prev = cur;
        cur = next;
    }
    return contour;
}

// ============================================================================
// Douglas-Peucker simplification and rectangle recognition
// ============================================================================

namespace detail {

inline double point_segment_distance(Point p, Point a, Point b) {
    const double vx = b.x - a.x;
    const double vy = b.y - a.y;
    const double wx = p.x - a.x;
    const double wy = p.y - a.y;
    const double len2 = vx * vx + vy * vy;
    if (len2 == 0.0) return std::hypot(wx, wy);
    const double t = std::clamp((wx * vx + wy * vy) / len2, 0.0, 1.0);
    return std::hypot(wx - t * vx, wy - t * vy);
}

inline void douglas_peucker(const std::vector<Point>& pts, std::size_t first, std::size_t last,
                            double epsilon, std::vector<Point>& out) {
    double max_dist = 0.0;
    std::size_t split = first;
    for (std::size_t i = first + 1; i < last; ++i) {
        const double d = point_segment_distance(pts[i], pts[first], pts[last]);
        if (d > max_dist) {
            max_dist = d;
            split = i;
        }
    }
    if (max_dist > epsilon) {
        douglas_peucker(pts, first, split, epsilon, out);
        out.push_back(pts[split]);
        douglas_peucker(pts, split, last, epsilon, out);
    }
}

// Simplifies an open polyline, keeping both endpoints.
inline std::vector<Point> simplify_polyline(const std::vector<Point>& pts, double epsilon) {
    if (pts.size() < 3) return pts;
    std::vector<Point> out;
    out.push_back(pts.front());
    douglas_peucker(pts, 0, pts.size() - 1, epsilon, out);
    out.push_back(pts.back());
    return out;
}

}  // namespace detail

// Douglas-Peucker on a closed contour. The contour is split at the point
// farthest from points[0] and each half is simplified independently; every
// dropped point stays within epsilon of the approximating polyline.
// Contours with fewer than 3 points are returned unchanged.
inline std::vector<Point> approx_polygon(const Contour& contour, double epsilon) {
    const std::vector<Point>& pts = contour.points;
    if (pts.size() < 3) return pts;

    std::size_t far = 0;
    double far_dist = -1.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = std::hypot(double(pts[i].x - pts[0].x), double(pts[i].y - pts[0].y));
        if (d > far_dist) {
            far_dist = d;
            far = i;
        }
    }
    std::vector<Point> half_a(pts.begin(), pts.begin() + far + 1);
    std::vector<Point> half_b(pts.begin() + far, pts.end());
    half_b.push_back(pts[0]);  // close the loop

    std::vector<Point> out = detail::simplify_polyline(half_a, epsilon);
    const std::vector<Point> back = detail::simplify_polyline(half_b, epsilon);
    for (std::size_t i = 1; i + 1 < back.size(); ++i) out.push_back(back[i]);
    return out;
}

// A region is a rectangle iff its simplified outline has exactly 4 vertices
// (epsilon = 2% of the contour perimeter) and the region fills at least 90%
// of its bounding box.
inline bool is_rectangle(const Contour& contour, std::int64_t component_area,
                         double epsilon_fraction = 0.02, double min_fill = 0.9) {
    if (contour.points.empty() || component_area <= 0) return false;
    const double fill = double(component_area) / double(contour.bbox().area());
    if (fill < min_fill) return false;
    const std::vector<Point> poly = approx_polygon(contour, epsilon_fraction * contour.perimeter());
    return poly.size() == 4;
}

}  // namespace uied
