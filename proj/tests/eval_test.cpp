#include "uied/eval.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace uied;

namespace {

Detection det(const BBox& b, double conf = 1.0, const std::string& label = "Button") {
    Detection d;
    d.bbox = b;
    d.label = label;
    d.confidence = conf;
    return d;
}

GroundTruthElement gt(const BBox& b, const std::string& label = "Button",
                      Channel channel = Channel::NonText) {
    return {b, label, channel};
}

}  // namespace

// ============================================================================
// iou
// ============================================================================

TEST(Iou, IdenticalBoxesGiveOne) {
    const BBox b{3, 4, 17, 22};
    EXPECT_DOUBLE_EQ(iou(b, b), 1.0);
}

TEST(Iou, HandComputedOverlapIsExactlyOneSeventh) {
    // I = 25, A = B = 100, IoU = 25/175 = 1/7.
    const BBox a{0, 0, 10, 10};
    const BBox b{5, 5, 15, 15};
    EXPECT_NEAR(iou(a, b), 1.0 / 7.0, 1e-12);
}

TEST(Iou, DisjointBoxesGiveZero) {
    EXPECT_DOUBLE_EQ(iou({0, 0, 5, 5}, {5, 0, 9, 5}), 0.0);
    EXPECT_DOUBLE_EQ(iou({0, 0, 5, 5}, {20, 20, 30, 30}), 0.0);
}

TEST(Iou, SymmetricAndBoundedOnRandomPairs) {
    std::mt19937 rng(5150);
    for (int i = 0; i < 10000; ++i) {
        const BBox a = oracle::random_bbox(rng, 64, 64, 32, 32);
        const BBox b = oracle::random_bbox(rng, 64, 64, 32, 32);
        const double ab = iou(a, b);
        const double ba = iou(b, a);
        EXPECT_EQ(ab, ba);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, 1.0);
        EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
    }
}

// ============================================================================
// match_detections
// ============================================================================

TEST(MatchDetections, PerfectSingleMatch) {
    const auto r = match_detections({det({5, 5, 20, 20})}, {gt({5, 5, 20, 20})}, 0.9);
    EXPECT_EQ(r.tp, 1);
    EXPECT_EQ(r.fp, 0);
    EXPECT_EQ(r.fn, 0);
    ASSERT_EQ(r.pairs.size(), 1u);
    EXPECT_DOUBLE_EQ(r.pairs[0].iou, 1.0);
}

TEST(MatchDetections, GroundTruthMatchesAtMostOnce) {
    const auto r = match_detections({det({5, 5, 20, 20}, 0.9), det({5, 5, 20, 20}, 0.8)},
                                    {gt({5, 5, 20, 20})}, 0.5);
    EXPECT_EQ(r.tp, 1);
    EXPECT_EQ(r.fp, 1);
    EXPECT_EQ(r.fn, 0);
}

TEST(MatchDetections, BelowThresholdIsNoMatch) {
    // IoU 1/7 < 0.5.
    const auto r = match_detections({det({0, 0, 10, 10})}, {gt({5, 5, 15, 15})}, 0.5);
    EXPECT_EQ(r.tp, 0);
    EXPECT_EQ(r.fp, 1);
    EXPECT_EQ(r.fn, 1);
}

TEST(MatchDetections, ThresholdIsStrict) {
    // IoU exactly 0.5: (0,0,10,10) vs (0,0,10,5) -> 50/100.
    const auto r = match_detections({det({0, 0, 10, 10})}, {gt({0, 0, 10, 5})}, 0.5);
    EXPECT_EQ(r.tp, 0);
}

TEST(MatchDetections, CountsAlwaysReconcile) {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Detection> dets;
        std::vector<GroundTruthElement> gts;
        for (int i = oracle::draw(rng, 0, 6); i > 0; --i)
            dets.push_back(det(oracle::random_bbox(rng, 40, 40, 20, 20),
                               oracle::draw(rng, 0, 100) / 100.0));
        for (int i = oracle::draw(rng, 0, 6); i > 0; --i)
            gts.push_back(gt(oracle::random_bbox(rng, 40, 40, 20, 20)));
        const auto r = match_detections(dets, gts, 0.5);
        EXPECT_EQ(r.tp + r.fp, int(dets.size()));
        EXPECT_EQ(r.tp + r.fn, int(gts.size()));
        EXPECT_EQ(r.tp, int(r.pairs.size()));
        std::vector<char> dseen(dets.size(), 0), gseen(gts.size(), 0);
        for (const auto& p : r.pairs) {
            EXPECT_FALSE(dseen[p.detection]++);
            EXPECT_FALSE(gseen[p.ground_truth]++);
            EXPECT_GT(p.iou, 0.5);
        }
    }
}

// Greedy matching vs the exhaustive optimal-assignment oracle; the greedy
// TP count may fall short occasionally but must never exceed the optimum.
TEST(MatchDetections, GreedyTracksExhaustiveOracle) {
    std::mt19937 rng(31337);
    int agree = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<GroundTruthElement> gts;
        std::vector<Detection> dets;
        const int n_gt = oracle::draw(rng, 1, 6);
        for (int i = 0; i < n_gt; ++i) gts.push_back(gt(oracle::random_bbox(rng, 48, 48, 24, 24)));
        const int n_det = oracle::draw(rng, 0, 6);
        for (int i = 0; i < n_det; ++i) {
            if (oracle::draw(rng, 0, 99) < 70) {
                // Perturbed copy of a random ground truth: realistic overlaps.
                BBox b = gts[std::size_t(oracle::draw(rng, 0, n_gt - 1))].bbox;
                b.x0 += oracle::draw(rng, -3, 3);
                b.y0 += oracle::draw(rng, -3, 3);
                b.x1 += oracle::draw(rng, -3, 3);
                b.y1 += oracle::draw(rng, -3, 3);
                if (b.x0 >= b.x1) b.x1 = b.x0 + 1;
                if (b.y0 >= b.y1) b.y1 = b.y0 + 1;
                dets.push_back(det(b, oracle::draw(rng, 0, 100) / 100.0));
            } else {
                dets.push_back(det(oracle::random_bbox(rng, 48, 48, 24, 24),
                                   oracle::draw(rng, 0, 100) / 100.0));
            }
        }
        std::vector<BBox> det_boxes, gt_boxes;
        for (const auto& d : dets) det_boxes.push_back(d.bbox);
        for (const auto& g : gts) gt_boxes.push_back(g.bbox);

        const int greedy = match_detections(dets, gts, 0.5).tp;
        const int optimal = oracle::optimal_tp_count(det_boxes, gt_boxes, 0.5);
        ASSERT_LE(greedy, optimal) << "greedy must never beat the optimum";
        if (greedy == optimal) ++agree;
    }
    EXPECT_GE(agree, trials * 95 / 100) << "agreement " << agree << "/" << trials;
}

// ============================================================================
// metrics
// ============================================================================

TEST(Metricsf, PaperRowFasterRcnn) {
    // Counts consistent with P=0.440, R=0.437.
    const Metrics m = metrics(192280, 244720, 247720);
    EXPECT_NEAR(m.precision, 0.440, 1e-9);
    EXPECT_NEAR(m.recall, 0.437, 1e-9);
    EXPECT_NEAR(m.f1, 0.438, 0.001);
}

TEST(Metricsf, AllZeroCountsGiveZeroByConvention) {
    const Metrics m = metrics(0, 0, 0);
    EXPECT_EQ(m.precision, 0.0);
    EXPECT_EQ(m.recall, 0.0);
    EXPECT_EQ(m.f1, 0.0);
}

TEST(Metricsf, DirectSubstitution) {
    const Metrics m = metrics(1, 1, 0);
    EXPECT_DOUBLE_EQ(m.precision, 0.5);
    EXPECT_DOUBLE_EQ(m.recall, 1.0);
    EXPECT_NEAR(m.f1, 2.0 / 3.0, 1e-12);
}

TEST(Metricsf, NegativeCountsRejected) { EXPECT_THROW(metrics(-1, 0, 0), Error); }

// ============================================================================
// evaluate
// ============================================================================

TEST(Evaluate, PerfectScreenIsF1OneEverywhere) {
    DetectionCorpus dets{{"s1", {det({0, 0, 10, 10}), det({20, 20, 40, 40})}}};
    GroundTruthCorpus gts{{"s1", {gt({0, 0, 10, 10}), gt({20, 20, 40, 40})}}};
    const EvalReport r = evaluate(dets, gts, {0.5, 0.6, 0.7, 0.8, 0.9});
    for (const auto& [t, tr] : r.per_threshold) {
        EXPECT_DOUBLE_EQ(tr.metrics.f1, 1.0) << "threshold " << t;
        EXPECT_EQ(tr.fp, 0);
        EXPECT_EQ(tr.fn, 0);
    }
}

TEST(Evaluate, ShiftedDetectionsScoreHigherAtLooseThresholds) {
    // Half the detections shifted to IoU ~0.6: they count at 0.5, not at 0.9.
    DetectionCorpus dets;
    GroundTruthCorpus gts;
    for (int i = 0; i < 10; ++i) {
        const std::string id = "s" + std::to_string(i);
        const BBox truth{10, 10, 40, 40};
        BBox found = truth;
        if (i % 2 == 0) {
            found.x0 += 6;  // 24x30 overlap of 30x30 boxes: IoU = 720/1080 = 2/3
            found.x1 += 6;
        }
        dets[id] = {det(found)};
        gts[id] = {gt(truth)};
    }
    const EvalReport r = evaluate(dets, gts, {0.5, 0.9});
    EXPECT_GT(r.per_threshold.at(0.5).metrics.f1, r.per_threshold.at(0.9).metrics.f1);
}

TEST(Evaluate, EmptyDetectionsGiveZeroPrecisionRecall) {
    DetectionCorpus dets;
    GroundTruthCorpus gts{{"s1", {gt({0, 0, 10, 10})}}};
    const EvalReport r = evaluate(dets, gts, {0.9});
    EXPECT_EQ(r.per_threshold.at(0.9).metrics.precision, 0.0);
    EXPECT_EQ(r.per_threshold.at(0.9).metrics.recall, 0.0);
    EXPECT_EQ(r.per_threshold.at(0.9).fn, 1);
}

TEST(Evaluate, UnknownScreenIdsAreAnError) {
    DetectionCorpus dets{{"mystery", {det({0, 0, 5, 5})}}};
    GroundTruthCorpus gts{{"s1", {gt({0, 0, 5, 5})}}};
    try {
        evaluate(dets, gts, {0.9});
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("mystery"), std::string::npos);
    }
}

TEST(Evaluate, ChannelFilterSelectsOneSide) {
    DetectionCorpus dets{{"s1", {det({0, 0, 10, 10})}}};  // nontext only
    GroundTruthCorpus gts{
        {"s1", {gt({0, 0, 10, 10}), gt({30, 30, 60, 40}, "TextView", Channel::Text)}}};
    const EvalReport nontext = evaluate(dets, gts, {0.9}, Channel::NonText);
    EXPECT_DOUBLE_EQ(nontext.per_threshold.at(0.9).metrics.f1, 1.0);
    const EvalReport text = evaluate(dets, gts, {0.9}, Channel::Text);
    EXPECT_EQ(text.per_threshold.at(0.9).fn, 1);
    EXPECT_EQ(text.per_threshold.at(0.9).tp, 0);
    const EvalReport both = evaluate(dets, gts, {0.9});
    EXPECT_EQ(both.per_threshold.at(0.9).fn, 1);
    EXPECT_EQ(both.per_threshold.at(0.9).tp, 1);
}

// F1 is non-increasing in the threshold for any fixed corpus.
TEST(Evaluate, F1MonotoneOverThresholdsOnRandomCorpora) {
    std::mt19937 rng(4242);
    const std::vector<double> thresholds{0.5, 0.6, 0.7, 0.8, 0.9};
    for (int trial = 0; trial < 40; ++trial) {
        DetectionCorpus dets;
        GroundTruthCorpus gts;
        for (int s = 0; s < 5; ++s) {
            const std::string id = "s" + std::to_string(s);
            dets[id] = {};
            gts[id] = {};
            for (int i = oracle::draw(rng, 0, 5); i > 0; --i)
                gts[id].push_back(gt(oracle::random_bbox(rng, 60, 60, 30, 30)));
            for (int i = oracle::draw(rng, 0, 5); i > 0; --i) {
                if (!gts[id].empty() && oracle::draw(rng, 0, 1)) {
                    BBox b = gts[id][std::size_t(oracle::draw(rng, 0, int(gts[id].size()) - 1))].bbox;
                    b.x0 += oracle::draw(rng, -2, 2);
                    b.y1 += oracle::draw(rng, -2, 2);
                    if (b.x0 >= b.x1) b.x0 = b.x1 - 1;
                    if (b.y0 >= b.y1) b.y1 = b.y0 + 1;
                    dets[id].push_back(det(b, oracle::draw(rng, 0, 100) / 100.0));
                } else {
                    dets[id].push_back(det(oracle::random_bbox(rng, 60, 60, 30, 30),
                                           oracle::draw(rng, 0, 100) / 100.0));
                }
            }
        }
        const EvalReport r = evaluate(dets, gts, thresholds);
        double prev = 2.0;
        for (double t : thresholds) {
            const double f1 = r.per_threshold.at(t).metrics.f1;
            EXPECT_LE(f1, prev + 1e-12) << "threshold " << t << " trial " << trial;
            prev = f1;
        }
    }
}

// ============================================================================
// classification_accuracy
// ============================================================================

TEST(ClassificationAccuracy, AllCorrectIsOne) {
    std::vector<Detection> dets{det({0, 0, 10, 10}, 1.0, "Button")};
    std::vector<GroundTruthElement> gts{gt({0, 0, 10, 10}, "Button")};
    const auto match = match_detections(dets, gts, 0.9);
    const auto acc = classification_accuracy(match, dets, gts);
    ASSERT_TRUE(acc.has_value());
    EXPECT_DOUBLE_EQ(*acc, 1.0);
}

TEST(ClassificationAccuracy, ThreeOfFour) {
    std::vector<Detection> dets;
    std::vector<GroundTruthElement> gts;
    for (int i = 0; i < 4; ++i) {
        const BBox b{i * 20, 0, i * 20 + 10, 10};
        dets.push_back(det(b, 1.0, i == 0 ? "Spinner" : "Button"));
        gts.push_back(gt(b, "Button"));
    }
    const auto match = match_detections(dets, gts, 0.9);
    const auto acc = classification_accuracy(match, dets, gts);
    ASSERT_TRUE(acc.has_value());
    EXPECT_DOUBLE_EQ(*acc, 0.75);
}

TEST(ClassificationAccuracy, NoMatchMeansAbsentNotZero) {
    std::vector<Detection> dets{det({0, 0, 10, 10})};
    std::vector<GroundTruthElement> gts{gt({50, 50, 60, 60})};
    const auto match = match_detections(dets, gts, 0.9);
    EXPECT_FALSE(classification_accuracy(match, dets, gts).has_value());
}

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    return RUN_ALL_TESTS();
}
