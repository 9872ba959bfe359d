#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "xstereo/image.hpp"
#include "xstereo/matching.hpp"

namespace xs {

/// Which channel pairing a run evaluates: `rgb` matches same-channel views
/// (mono-modal), `cs` matches every ordered cross-channel combination.
enum class Mapping { rgb, cs };

const char* to_label(Mapping m);
std::optional<Mapping> mapping_from_label(const std::string& label);

/// One registration task: match the left view's `source` plane against the
/// right view's `target` plane. `pair_id` is empty in the generic task list
/// and filled in when a task is bound to a dataset pair.
struct MappingTask {
    SynthChannel source = SynthChannel::R;
    SynthChannel target = SynthChannel::R;
    std::string pair_id;
};

std::string task_label(const MappingTask& t); // "R->G"

/// Task lists in their fixed order: cs -> R->G, R->B, G->R, G->B, B->R,
/// B->G; rgb -> R->R, G->G, B->B.
std::vector<MappingTask> enumerate_tasks(
    Mapping mapping,
    const std::array<SynthChannel, 3>& channels = {SynthChannel::R, SynthChannel::G,
                                                   SynthChannel::B});

/// Per-pixel median of three equally shaped candidate maps.
DisparityMap fuse_median(const DisparityMap& a, const DisparityMap& b, const DisparityMap& c);

/// Mean absolute disparity error over the valid pixels.
double epe(const DisparityMap& est, const DisparityMap& gt, const ValidityMask& mask);

/// Fraction of valid pixels whose absolute error is strictly above tau.
double bmp(const DisparityMap& est, const DisparityMap& gt, const ValidityMask& mask,
           double tau);

/// Metrics for one task row, averaged uniformly over the dataset's images.
/// `valid_count` totals the scored pixels across those images.
struct TaskMetrics {
    MappingTask task;
    double epe = 0.0;
    double bmp3 = 0.0;
    double bmp5 = 0.0;
    long long valid_count = 0;
};

/// Dataset-level results. The headline numbers aggregate uniformly over
/// images and then over tasks; for the rgb mapping they score the
/// median-fused map (the per-task rows keep the unfused candidates for
/// diagnostics). The pooled_* variants weight every scored pixel equally
/// instead.
struct MetricsReport {
    Mapping mapping = Mapping::cs;
    double epe_mean = 0.0;
    double bmp3 = 0.0;
    double bmp5 = 0.0;
    long long valid_count = 0;
    double pooled_epe = 0.0;
    double pooled_bmp3 = 0.0;
    double pooled_bmp5 = 0.0;
    std::vector<TaskMetrics> per_task;
};

/// Produces the left-reference disparity estimate for one task on one pair.
using TaskMatcher = std::function<DisparityMap(const RgbStereoPair&, const MappingTask&)>;

/// Runs every task of the mapping on every dataset pair and aggregates:
/// cs scores each of the six tasks and averages their image means; rgb
/// fuses the three per-channel candidates per image before scoring.
/// Ground truth must be present (left view) on every pair.
MetricsReport evaluate_dataset(const StereoDataset& dataset, Mapping mapping,
                               const TaskMatcher& matcher);

/// Same protocol with the classical pipeline as the matcher: the task's
/// source plane of the left view against the target plane of the right.
/// Scoring always uses the pre-check disparity estimates, so a left-right
/// check cannot mask errors away.
MetricsReport evaluate_dataset(const StereoDataset& dataset, Mapping mapping,
                               const MatchParams& params);

/// Human-readable aligned table.
std::string format_report_table(const MetricsReport& report);

/// Line-oriented records, one row per task plus `all` (headline aggregate)
/// and `pooled` (pixel-weighted) rows. Columns, space-separated:
///   mapping task epe bmp3 bmp5 valid
std::string format_report_records(const MetricsReport& report);

} // namespace xs
