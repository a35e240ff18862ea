#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "uied/elements.hpp"
#include "uied/error.hpp"
#include "uied/geometry.hpp"

namespace uied {

// Ground-truth element as imported from screen metadata.
struct GroundTruthElement {
    BBox bbox;
    std::string label;
    Channel channel = Channel::NonText;
};

// ============================================================================
// One-to-one matching
// ============================================================================

struct MatchPair {
    int detection = 0;     // index into the detection list
    int ground_truth = 0;  // index into the ground-truth list
    double iou = 0.0;
};

struct MatchResult {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::vector<MatchPair> pairs;
};

// Greedy one-to-one matching: candidate pairs with IoU strictly above the
// threshold are visited in descending-IoU order (ties: higher detection
// confidence, lower ground-truth index, lower detection index) and accepted
// when both sides are still free. Each box matches at most once; leftovers
// are FPs and FNs.
inline MatchResult match_detections(const std::vector<Detection>& dets,
                                    const std::vector<GroundTruthElement>& gts,
                                    double iou_threshold) {
    if (iou_threshold <= 0.0 || iou_threshold > 1.0)
        throw Error("match_detections: iou_threshold must be in (0,1]");

    std::vector<MatchPair> candidates;
    for (int d = 0; d < int(dets.size()); ++d) {
        for (int g = 0; g < int(gts.size()); ++g) {
            const double overlap = iou(dets[d].bbox, gts[g].bbox);
            if (overlap > iou_threshold) candidates.push_back({d, g, overlap});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const MatchPair& a, const MatchPair& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        const double ca = dets[a.detection].confidence;
        const double cb = dets[b.detection].confidence;
        if (ca != cb) return ca > cb;
        if (a.ground_truth != b.ground_truth) return a.ground_truth < b.ground_truth;
        return a.detection < b.detection;
    });

    std::vector<char> det_used(dets.size(), 0);
    std::vector<char> gt_used(gts.size(), 0);
    MatchResult result;
    for (const MatchPair& cand : candidates) {
        if (det_used[cand.detection] || gt_used[cand.ground_truth]) continue;
        det_used[cand.detection] = 1;
        gt_used[cand.ground_truth] = 1;
        result.pairs.push_back(cand);
    }
    result.tp = int(result.pairs.size());
    result.fp = int(dets.size()) - result.tp;
    result.fn = int(gts.size()) - result.tp;
    return result;
}

// ============================================================================
// Precision / recall / F1
// ============================================================================

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Zero denominators yield 0 by convention.
inline Metrics metrics(long long tp, long long fp, long long fn) {
    if (tp < 0 || fp < 0 || fn < 0) throw Error("metrics: counts must be non-negative");
    Metrics m;
    if (tp + fp > 0) m.precision = double(tp) / double(tp + fp);
    if (tp + fn > 0) m.recall = double(tp) / double(tp + fn);
    if (m.precision + m.recall > 0.0)
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

// ============================================================================
// Corpus-level evaluation
// ============================================================================

struct ThresholdReport {
    Metrics metrics;
    long long tp = 0;
    long long fp = 0;
    long long fn = 0;
};

struct EvalReport {
    std::map<double, ThresholdReport> per_threshold;
    // Classification accuracy over matched (TP) regions at the highest
    // threshold; absent when there are no TPs of the given class.
    std::optional<double> overall_accuracy;
    std::map<std::string, double> per_class_accuracy;  // keyed by ground-truth label
    double accuracy_threshold = 0.0;
    long long detection_count = 0;
    long long ground_truth_count = 0;
};

// Fraction of matched pairs whose detection label equals the ground-truth
// label; absent (not 0) when nothing matched.
inline std::optional<double> classification_accuracy(const MatchResult& match,
                                                     const std::vector<Detection>& dets,
                                                     const std::vector<GroundTruthElement>& gts) {
    if (match.pairs.empty()) return std::nullopt;
    long long correct = 0;
    for (const MatchPair& p : match.pairs)
        if (dets[p.detection].label == gts[p.ground_truth].label) ++correct;
    return double(correct) / double(match.pairs.size());
}

// Detections/ground truths for one corpus, keyed by screen id.
using DetectionCorpus = std::map<std::string, std::vector<Detection>>;
using GroundTruthCorpus = std::map<std::string, std::vector<GroundTruthElement>>;

// Micro-averaged evaluation across screens at each requested threshold.
// The channel filter restricts both sides to one channel (nullopt = both).
// Detections for screens absent from the ground truth are an error; ground
// truth screens with no detections simply count as misses.
inline EvalReport evaluate(const DetectionCorpus& dets_by_screen,
                           const GroundTruthCorpus& gts_by_screen,
                           const std::vector<double>& thresholds,
                           std::optional<Channel> channel_filter = std::nullopt) {
    if (thresholds.empty()) throw Error("evaluate: need at least one IoU threshold");

    std::string unknown;
    for (const auto& [id, _] : dets_by_screen)
        if (!gts_by_screen.count(id)) unknown += (unknown.empty() ? "" : ", ") + id;
    if (!unknown.empty())
        throw Error("evaluate: detection screen ids missing from ground truth: " + unknown);

    const auto filtered_dets = [&](const std::vector<Detection>& in) {
        std::vector<Detection> out;
        for (const Detection& d : in)
            if (!channel_filter || d.channel == *channel_filter) out.push_back(d);
        return out;
    };
    const auto filtered_gts = [&](const std::vector<GroundTruthElement>& in) {
        std::vector<GroundTruthElement> out;
        for (const GroundTruthElement& g : in)
            if (!channel_filter || g.channel == *channel_filter) out.push_back(g);
        return out;
    };

    EvalReport report;
    report.accuracy_threshold = *std::max_element(thresholds.begin(), thresholds.end());

    std::map<std::string, std::pair<long long, long long>> class_counts;  // correct, total
    long long accuracy_correct = 0;
    long long accuracy_total = 0;

    for (double t : thresholds) report.per_threshold[t] = {};

    for (const auto& [id, gts_raw] : gts_by_screen) {
        const std::vector<GroundTruthElement> gts = filtered_gts(gts_raw);
        const auto it = dets_by_screen.find(id);
        const std::vector<Detection> dets =
            it == dets_by_screen.end() ? std::vector<Detection>{} : filtered_dets(it->second);
        report.detection_count += (long long)dets.size();
        report.ground_truth_count += (long long)gts.size();

        for (double t : thresholds) {
            const MatchResult match = match_detections(dets, gts, t);
            ThresholdReport& tr = report.per_threshold[t];
            tr.tp += match.tp;
            tr.fp += match.fp;
            tr.fn += match.fn;
            if (t == report.accuracy_threshold) {
                for (const MatchPair& p : match.pairs) {
                    const bool correct = dets[p.detection].label == gts[p.ground_truth].label;
                    auto& [ok, total] = class_counts[gts[p.ground_truth].label];
                    ok += correct ? 1 : 0;
                    total += 1;
                    accuracy_correct += correct ? 1 : 0;
                    accuracy_total += 1;
                }
            }
        }
    }

    for (auto& [t, tr] : report.per_threshold) tr.metrics = metrics(tr.tp, tr.fp, tr.fn);
    if (accuracy_total > 0)
        report.overall_accuracy = double(accuracy_correct) / double(accuracy_total);
    for (const auto& [label, counts] : class_counts)
        report.per_class_accuracy[label] = double(counts.first) / double(counts.second);
    return report;
}

}  // namespace uied
