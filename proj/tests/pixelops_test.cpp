#include "uied/pixelops.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "uied/image.hpp"

using namespace uied;

namespace {

RgbImage solid_rgb(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    RgbImage image(w, h);
    image.fill(r, g, b);
    return image;
}

BinaryMap map_from_rows(const std::vector<std::string>& rows) {
    BinaryMap m(int(rows[0].size()), int(rows.size()));
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) m.set(x, y, rows[y][x] != '.');
    return m;
}

}  // namespace

// ============================================================================
// to_grey
// ============================================================================

TEST(ToGrey, AllWhiteMapsTo255) {
    const GreyMap grey = to_grey(solid_rgb(4, 4, 255, 255, 255));
    for (auto v : grey.values) EXPECT_EQ(v, 255);
}

TEST(ToGrey, AllBlackMapsToZero) {
    const GreyMap grey = to_grey(solid_rgb(3, 5, 0, 0, 0));
    for (auto v : grey.values) EXPECT_EQ(v, 0);
}

TEST(ToGrey, PureRedIs76) {
    // round(0.299 * 255) = 76
    const GreyMap grey = to_grey(solid_rgb(1, 1, 255, 0, 0));
    EXPECT_EQ(grey.at(0, 0), 76);
}

TEST(ToGrey, ZeroDimensionImageThrows) {
    RgbImage empty;
    EXPECT_THROW(to_grey(empty), DimensionError);
}

// ============================================================================
// gradient_map
// ============================================================================

TEST(GradientMap, ConstantImageIsAllZero) {
    GreyMap grey(7, 9, 137);
    const GreyMap grad = gradient_map(grey);
    for (auto v : grad.values) EXPECT_EQ(v, 0);
}

TEST(GradientMap, VerticalStepLightsTheLeftColumn) {
    GreyMap grey(8, 4, 0);
    for (int y = 0; y < 4; ++y)
        for (int x = 4; x < 8; ++x) grey.at(x, y) = 255;
    const GreyMap grad = gradient_map(grey);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 8; ++x)
            EXPECT_EQ(grad.at(x, y), x == 3 ? 255 : 0) << "at " << x << "," << y;
}

TEST(GradientMap, SinglePixelImageIsZero) {
    GreyMap grey(1, 1, 200);
    EXPECT_EQ(gradient_map(grey).at(0, 0), 0);
}

TEST(GradientMap, SumSaturatesAt255) {
    // Down-right corner of a bright pixel: both differences are 200.
    GreyMap grey(2, 2, 0);
    grey.at(0, 0) = 200;
    EXPECT_EQ(gradient_map(grey).at(0, 0), 255);
}

// ============================================================================
// binarize
// ============================================================================

TEST(Binarize, AllZeroGradientIsAllBlack) {
    const BinaryMap b = binarize(GreyMap(6, 6, 0), 4);
    for (auto v : b.foreground) EXPECT_EQ(v, 0);
}

TEST(Binarize, StepEdgeIsWhiteOnlyOnEdgeColumn) {
    GreyMap grey(8, 4, 0);
    for (int y = 0; y < 4; ++y)
        for (int x = 4; x < 8; ++x) grey.at(x, y) = 255;
    const BinaryMap b = binarize(gradient_map(grey), 4);
    for (int y = 0; y < 4; ++y)
        for (int x = 0; x < 8; ++x) EXPECT_EQ(b.at(x, y), x == 3);
}

TEST(Binarize, Threshold255IsAllBlack) {
    GreyMap grad(5, 5, 0);
    grad.at(2, 2) = 255;
    const BinaryMap b = binarize(grad, 255);
    for (auto v : b.foreground) EXPECT_EQ(v, 0);
}

TEST(Binarize, MonotoneInThreshold) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        GreyMap grad(16, 16);
        for (auto& v : grad.values) v = std::uint8_t(rng() % 256);
        const int t_low = oracle::draw(rng, 0, 254);
        const int t_high = oracle::draw(rng, t_low, 255);
        const BinaryMap low = binarize(grad, t_low);
        const BinaryMap high = binarize(grad, t_high);
        for (std::size_t i = 0; i < low.foreground.size(); ++i)
            EXPECT_LE(high.foreground[i], low.foreground[i]);
    }
}

// ============================================================================
// flood_fill_regions
// ============================================================================

TEST(FloodFill, UniformImageIsOneRegion) {
    const auto regions = flood_fill_regions(GreyMap(10, 10, 50), 4, 1);
    ASSERT_EQ(regions.size(), 1u);
    EXPECT_EQ(regions[0].area, 100);
    EXPECT_EQ(regions[0].bbox, (BBox{0, 0, 10, 10}));
}

TEST(FloodFill, CloseIntensityMergesFarSeparates) {
    // 8x8 grid: background 10 with two flat 2x2 rectangles of intensities 12
    // and 200. Tolerance 4 merges the first into the background.
    GreyMap grey(8, 8, 10);
    for (int y = 1; y <= 2; ++y)
        for (int x = 1; x <= 2; ++x) grey.at(x, y) = 12;
    for (int y = 4; y <= 5; ++y)
        for (int x = 4; x <= 5; ++x) grey.at(x, y) = 200;
    const auto regions = flood_fill_regions(grey, 4, 1);
    ASSERT_EQ(regions.size(), 2u);
    EXPECT_EQ(regions[0].area, 60);  // background + near-intensity rectangle
    EXPECT_EQ(regions[1].area, 4);
    EXPECT_EQ(regions[1].bbox, (BBox{4, 4, 6, 6}));
}

TEST(FloodFill, MinAreaLargerThanImageYieldsNothing) {
    EXPECT_TRUE(flood_fill_regions(GreyMap(6, 6, 80), 4, 37).empty());
}

TEST(FloodFill, Tolerance255IsAlwaysOneRegion) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        GreyMap grey(oracle::draw(rng, 1, 24), oracle::draw(rng, 1, 24));
        for (auto& v : grey.values) v = std::uint8_t(rng() % 256);
        const auto regions = flood_fill_regions(grey, 255, 1);
        ASSERT_EQ(regions.size(), 1u);
        EXPECT_EQ(regions[0].area, grey.width * grey.height);
    }
}

TEST(FloodFill, RegionsPartitionThePixels) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        GreyMap grey(16, 16);
        for (auto& v : grey.values) v = std::uint8_t(oracle::draw(rng, 0, 3) * 60);
        const auto regions = flood_fill_regions(grey, 4, 1);
        std::set<std::pair<int, int>> seen;
        int total = 0;
        for (const auto& r : regions) {
            EXPECT_EQ(r.area, int(r.pixels.size()));
            for (const Point& p : r.pixels) EXPECT_TRUE(seen.insert({p.x, p.y}).second);
            total += r.area;
        }
        EXPECT_EQ(total, 16 * 16);
    }
}

// ============================================================================
// label_components
// ============================================================================

TEST(LabelComponents, AllBackgroundHasNoComponents) {
    const auto [map, comps] = label_components(BinaryMap(9, 9), 1);
    EXPECT_EQ(map.count, 0);
    EXPECT_TRUE(comps.empty());
}

TEST(LabelComponents, TwoDisjointSquares) {
    const BinaryMap m = map_from_rows({
        "XXX....XXX",
        "XXX....XXX",
        "XXX....XXX",
    });
    const auto [map, comps] = label_components(m, 1);
    ASSERT_EQ(comps.size(), 2u);
    EXPECT_EQ(comps[0].area, 9);
    EXPECT_EQ(comps[1].area, 9);
    EXPECT_EQ(comps[0].bbox, (BBox{0, 0, 3, 3}));
    EXPECT_EQ(comps[1].bbox, (BBox{7, 0, 10, 3}));
}

TEST(LabelComponents, DiagonalLineIsOneComponentUnder8Connectivity) {
    const BinaryMap m = map_from_rows({
        "X....",
        ".X...",
        "..X..",
        "...X.",
        "....X",
    });
    const auto [map, comps] = label_components(m, 1);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0].area, 5);
}

TEST(LabelComponents, MinAreaRelabelsSmallComponentsToBackground) {
    const BinaryMap m = map_from_rows({
        "XX..X",
        "XX...",
        ".....",
    });
    const auto [map, comps] = label_components(m, 2);
    ASSERT_EQ(comps.size(), 1u);
    EXPECT_EQ(comps[0].area, 4);
    EXPECT_EQ(map.at(4, 0), 0);  // the lone pixel went back to background
    EXPECT_EQ(map.count, 1);
}

TEST(LabelComponents, AgreesWithBfsOracleOnRandomGrids) {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 500; ++trial) {
        const int w = oracle::draw(rng, 1, 32);
        const int h = oracle::draw(rng, 1, 32);
        BinaryMap m(w, h);
        const int fill_pct = oracle::draw(rng, 10, 90);
        for (auto& v : m.foreground) v = (oracle::draw(rng, 0, 99) < fill_pct) ? 1 : 0;

        const auto [map, comps] = label_components(m, 1);
        const auto expected = oracle::canonical_labels(oracle::bfs_labels(m));
        const auto actual = oracle::canonical_labels(map.labels);
        ASSERT_EQ(actual, expected) << "trial " << trial << " " << w << "x" << h;

        // Component stats must match a recount from the label map.
        for (const Component& c : comps) {
            int area = 0;
            BBox bbox{w, h, 0, 0};
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    if (map.at(x, y) == c.label) {
                        ++area;
                        bbox.x0 = std::min(bbox.x0, x);
                        bbox.y0 = std::min(bbox.y0, y);
                        bbox.x1 = std::max(bbox.x1, x + 1);
                        bbox.y1 = std::max(bbox.y1, y + 1);
                    }
            EXPECT_EQ(area, c.area);
            EXPECT_EQ(bbox, c.bbox);
        }
    }
}

// ============================================================================
// trace_contour
// ============================================================================

namespace {

Component component_of(const BinaryMap& m, int label = 1) {
    auto [map, comps] = label_components(m, 1);
    return comps.at(label - 1);
}

}  // namespace

TEST(TraceContour, Solid3x3SquareHas8BorderPoints) {
    const BinaryMap m = map_from_rows({
        "XXX",
        "XXX",
        "XXX",
    });
    const Contour c = trace_contour(m, component_of(m));
    ASSERT_EQ(c.points.size(), 8u);
    for (const Point& p : c.points) EXPECT_FALSE(p.x == 1 && p.y == 1);  // center is interior
    // Closed: first and last points are 8-neighbors.
    const Point& a = c.points.front();
    const Point& b = c.points.back();
    EXPECT_LE(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)), 1);
}

TEST(TraceContour, SinglePixelIsOnePointContour) {
    const BinaryMap m = map_from_rows({"X"});
    const Contour c = trace_contour(m, component_of(m));
    ASSERT_EQ(c.points.size(), 1u);
    EXPECT_EQ(c.points[0], (Point{0, 0}));
}

TEST(TraceContour, Line1x5VisitsAllFivePixels) {
    const BinaryMap m = map_from_rows({"XXXXX"});
    const Contour c = trace_contour(m, component_of(m));
    ASSERT_EQ(c.points.size(), 5u);
    for (int x = 0; x < 5; ++x) EXPECT_EQ(c.points[std::size_t(x)], (Point{x, 0}));
}

TEST(TraceContour, EmptyComponentThrows) {
    const BinaryMap m(4, 4);
    Component none;
    EXPECT_THROW(trace_contour(m, none), Error);
}

TEST(TraceContour, BBoxFromContourEqualsComponentBBoxOnRandomBlobs) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = oracle::draw(rng, 2, 24);
        const int h = oracle::draw(rng, 2, 24);
        BinaryMap m(w, h);
        for (auto& v : m.foreground) v = (oracle::draw(rng, 0, 99) < 55) ? 1 : 0;
        auto [map, comps] = label_components(m, 1);
        for (const Component& comp : comps) {
            const Contour c = trace_contour(m, comp);
            EXPECT_EQ(c.bbox(), comp.bbox);
            for (const Point& p : c.points) {
                EXPECT_TRUE(comp.bbox.contains(p));
                EXPECT_EQ(map.at(p.x, p.y), comp.label);  // contour stays on its component
            }
        }
    }
}

// ============================================================================
// approx_polygon / is_rectangle
// ============================================================================

namespace {

Contour rect_contour(int w, int h) {
    BinaryMap m(w + 2, h + 2);
    for (int y = 1; y <= h; ++y)
        for (int x = 1; x <= w; ++x) m.set(x, y, true);
    return trace_contour(m, component_of(m));
}

}  // namespace

TEST(ApproxPolygon, PerfectRectangleGivesFourVertices) {
    const Contour c = rect_contour(20, 12);
    const auto poly = approx_polygon(c, 2.0);
    ASSERT_EQ(poly.size(), 4u);
    const std::set<std::pair<int, int>> corners{{1, 1}, {20, 1}, {20, 12}, {1, 12}};
    for (const Point& p : poly) EXPECT_TRUE(corners.count({p.x, p.y})) << p.x << "," << p.y;
}

TEST(ApproxPolygon, EpsilonZeroRemovesOnlyCollinearPoints) {
    const Contour c = rect_contour(9, 5);
    const auto poly = approx_polygon(c, 0.0);
    EXPECT_EQ(poly.size(), 4u);  // rectangle edges are exactly collinear
    // Short contour passes through unchanged.
    Contour two;
    two.points = {{0, 0}, {1, 0}};
    EXPECT_EQ(approx_polygon(two, 0.0).size(), 2u);
}

TEST(ApproxPolygon, CircleKeepsMoreThanFourVertices) {
    // Radius-20 disc: chord sagitta over a quarter arc is ~5.9px > epsilon 1.
    BinaryMap m(50, 50);
    for (int y = 0; y < 50; ++y)
        for (int x = 0; x < 50; ++x)
            if ((x - 25) * (x - 25) + (y - 25) * (y - 25) <= 20 * 20) m.set(x, y, true);
    const Contour c = trace_contour(m, component_of(m));
    EXPECT_GT(approx_polygon(c, 1.0).size(), 4u);
}

TEST(ApproxPolygon, DeviationBoundHoldsOnRandomBlobs) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = oracle::draw(rng, 3, 28);
        const int h = oracle::draw(rng, 3, 28);
        BinaryMap m(w, h);
        for (auto& v : m.foreground) v = (oracle::draw(rng, 0, 99) < 60) ? 1 : 0;
        auto [map, comps] = label_components(m, 1);
        if (comps.empty()) continue;
        const Contour c = trace_contour(m, comps[0]);
        if (c.points.size() < 3) continue;
        const double eps = oracle::draw(rng, 0, 40) / 10.0;
        const auto poly = approx_polygon(c, eps);
        EXPECT_LE(oracle::max_polyline_deviation(c.points, poly), eps + 1e-9)
            << "trial " << trial;
    }
}

TEST(IsRectangle, SolidRectangleIsTrue) {
    const Contour c = rect_contour(30, 18);
    EXPECT_TRUE(is_rectangle(c, 30 * 18));
}

TEST(IsRectangle, RightTriangleFailsFillRatio) {
    BinaryMap m(34, 34);
    int area = 0;
    for (int y = 1; y <= 30; ++y)
        for (int x = 1; x <= y; ++x) {
            m.set(x, y, true);
            ++area;
        }
    const Contour c = trace_contour(m, component_of(m));
    EXPECT_FALSE(is_rectangle(c, area));
}

TEST(IsRectangle, LShapeFails) {
    BinaryMap m(42, 42);
    int area = 0;
    for (int y = 1; y <= 40; ++y)
        for (int x = 1; x <= 40; ++x)
            if (x <= 12 || y >= 29) {
                m.set(x, y, true);
                ++area;
            }
    const Contour c = trace_contour(m, component_of(m));
    EXPECT_FALSE(is_rectangle(c, area));
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
