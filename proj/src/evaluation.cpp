#include "xstereo/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace xs {

const char* to_label(Mapping m) { return m == Mapping::rgb ? "rgb" : "cs"; }

std::optional<Mapping> mapping_from_label(const std::string& label)
{
    if (label == "rgb")
        return Mapping::rgb;
    if (label == "cs")
        return Mapping::cs;
    return std::nullopt;
}

std::string task_label(const MappingTask& t)
{
    return std::string(to_label(t.source)) + "->" + to_label(t.target);
}

std::vector<MappingTask> enumerate_tasks(Mapping mapping,
                                         const std::array<SynthChannel, 3>& channels)
{
    std::vector<MappingTask> tasks;
    if (mapping == Mapping::rgb) {
        for (SynthChannel c : channels)
            tasks.push_back({c, c, {}});
    } else {
        for (SynthChannel src : channels)
            for (SynthChannel dst : channels)
                if (src != dst)
                    tasks.push_back({src, dst, {}});
    }
    return tasks;
}

DisparityMap fuse_median(const DisparityMap& a, const DisparityMap& b, const DisparityMap& c)
{
    if (!a.same_shape(b) || !a.same_shape(c))
        throw DimensionMismatch("fuse_median: candidate shapes differ");

    DisparityMap out = a;
    for (size_t i = 0; i < out.values.size(); ++i) {
        const float x = a.values[i], y = b.values[i], z = c.values[i];
        out.values[i] = std::max(std::min(x, y), std::min(std::max(x, y), z));
    }
    return out;
}

namespace {

struct PixelScore {
    double abs_sum = 0.0;
    long long bad3 = 0;
    long long bad5 = 0;
    long long valid = 0;

    double epe() const { return abs_sum / double(valid); }
    double bmp3() const { return double(bad3) / double(valid); }
    double bmp5() const { return double(bad5) / double(valid); }

    PixelScore& operator+=(const PixelScore& o)
    {
        abs_sum += o.abs_sum;
        bad3 += o.bad3;
        bad5 += o.bad5;
        valid += o.valid;
        return *this;
    }
};

PixelScore score_pixels(const DisparityMap& est, const DisparityMap& gt,
                        const ValidityMask& mask)
{
    if (!est.same_shape(gt) || gt.width != mask.width || gt.height != mask.height)
        throw DimensionMismatch("metrics: estimate, ground truth, and mask shapes differ");

    PixelScore s;
    for (int m = 0; m < gt.height; ++m) {
        for (int n = 0; n < gt.width; ++n) {
            if (!mask.at(m, n))
                continue;
            const double err = std::abs(double(est.at(m, n)) - double(gt.at(m, n)));
            s.abs_sum += err;
            if (err > 3.0)
                ++s.bad3;
            if (err > 5.0)
                ++s.bad5;
            ++s.valid;
        }
    }
    if (s.valid == 0)
        throw EmptyMask("metrics: no valid ground-truth pixels");
    return s;
}

} // namespace

double epe(const DisparityMap& est, const DisparityMap& gt, const ValidityMask& mask)
{
    return score_pixels(est, gt, mask).epe();
}

double bmp(const DisparityMap& est, const DisparityMap& gt, const ValidityMask& mask,
           double tau)
{
    if (!est.same_shape(gt) || gt.width != mask.width || gt.height != mask.height)
        throw DimensionMismatch("metrics: estimate, ground truth, and mask shapes differ");

    long long bad = 0, valid = 0;
    for (int m = 0; m < gt.height; ++m) {
        for (int n = 0; n < gt.width; ++n) {
            if (!mask.at(m, n))
                continue;
            ++valid;
            if (std::abs(double(est.at(m, n)) - double(gt.at(m, n))) > tau)
                ++bad;
        }
    }
    if (valid == 0)
        throw EmptyMask("metrics: no valid ground-truth pixels");
    return double(bad) / double(valid);
}

namespace {

void check_ground_truth(const StereoDataset& dataset)
{
    if (dataset.pairs.empty())
        throw MissingGroundTruth("evaluate_dataset: dataset has no pairs");
    for (const auto& pair : dataset.pairs)
        if (!pair.gt_left)
            throw MissingGroundTruth("evaluate_dataset: pair '" + pair.id +
                                     "' has no left-view ground truth");
}

// Image-mean accumulator for one task row.
struct RowAccum {
    double epe_sum = 0.0, bmp3_sum = 0.0, bmp5_sum = 0.0;
    long long valid = 0;
    int images = 0;

    void add(const PixelScore& s)
    {
        epe_sum += s.epe();
        bmp3_sum += s.bmp3();
        bmp5_sum += s.bmp5();
        valid += s.valid;
        ++images;
    }

    TaskMetrics finish(const MappingTask& task) const
    {
        TaskMetrics t;
        t.task = task;
        t.epe = epe_sum / images;
        t.bmp3 = bmp3_sum / images;
        t.bmp5 = bmp5_sum / images;
        t.valid_count = valid;
        return t;
    }
};

} // namespace

MetricsReport evaluate_dataset(const StereoDataset& dataset, Mapping mapping,
                               const TaskMatcher& matcher)
{
    check_ground_truth(dataset);
    const auto tasks = enumerate_tasks(mapping);

    MetricsReport report;
    report.mapping = mapping;

    std::vector<RowAccum> rows(tasks.size());
    RowAccum headline;    // rgb: fused map per image; cs: unused
    PixelScore pooled;    // every pixel under the headline aggregate

    for (const auto& pair : dataset.pairs) {
        const GroundTruth& gt = *pair.gt_left;

        std::vector<DisparityMap> estimates(tasks.size());
        for (size_t t = 0; t < tasks.size(); ++t) {
            MappingTask bound = tasks[t];
            bound.pair_id = pair.id;
            estimates[t] = matcher(pair, bound);
            const PixelScore s = score_pixels(estimates[t], gt.disparity, gt.validity);
            rows[t].add(s);
            if (mapping == Mapping::cs)
                pooled += s;
        }

        if (mapping == Mapping::rgb) {
            const DisparityMap fused = fuse_median(estimates[0], estimates[1], estimates[2]);
            const PixelScore s = score_pixels(fused, gt.disparity, gt.validity);
            headline.add(s);
            pooled += s;
        }
    }

    for (size_t t = 0; t < tasks.size(); ++t)
        report.per_task.push_back(rows[t].finish(tasks[t]));

    if (mapping == Mapping::rgb) {
        report.epe_mean = headline.epe_sum / headline.images;
        report.bmp3 = headline.bmp3_sum / headline.images;
        report.bmp5 = headline.bmp5_sum / headline.images;
    } else {
        double e = 0, b3 = 0, b5 = 0;
        for (const TaskMetrics& t : report.per_task) {
            e += t.epe;
            b3 += t.bmp3;
            b5 += t.bmp5;
        }
        report.epe_mean = e / double(report.per_task.size());
        report.bmp3 = b3 / double(report.per_task.size());
        report.bmp5 = b5 / double(report.per_task.size());
    }

    report.valid_count = pooled.valid;
    report.pooled_epe = pooled.epe();
    report.pooled_bmp3 = pooled.bmp3();
    report.pooled_bmp5 = pooled.bmp5();
    return report;
}

MetricsReport evaluate_dataset(const StereoDataset& dataset, Mapping mapping,
                               const MatchParams& params)
{
    return evaluate_dataset(dataset, mapping,
                            [&params](const RgbStereoPair& pair, const MappingTask& task) {
                                const SpectralImage& l = pair.left[rgb_index(task.source)];
                                const SpectralImage& r = pair.right[rgb_index(task.target)];
                                return match_pair(l, r, params).disparity;
                            });
}

std::string format_report_table(const MetricsReport& report)
{
    std::ostringstream os;
    char line[160];

    os << "task        epe      bmp3     bmp5     valid\n";
    for (const TaskMetrics& t : report.per_task) {
        std::snprintf(line, sizeof line, "%-10s  %7.4f  %7.4f  %7.4f  %lld\n",
                      task_label(t.task).c_str(), t.epe, t.bmp3, t.bmp5, t.valid_count);
        os << line;
    }
    const char* agg = report.mapping == Mapping::rgb ? "fused" : "mean";
    std::snprintf(line, sizeof line, "%-10s  %7.4f  %7.4f  %7.4f  %lld\n", agg,
                  report.epe_mean, report.bmp3, report.bmp5, report.valid_count);
    os << line;
    std::snprintf(line, sizeof line, "%-10s  %7.4f  %7.4f  %7.4f  %lld\n", "pooled",
                  report.pooled_epe, report.pooled_bmp3, report.pooled_bmp5,
                  report.valid_count);
    os << line;
    return os.str();
}

std::string format_report_records(const MetricsReport& report)
{
    std::ostringstream os;
    char line[200];
    const char* mapping = to_label(report.mapping);

    os << "# mapping task epe bmp3 bmp5 valid\n";
    for (const TaskMetrics& t : report.per_task) {
        std::snprintf(line, sizeof line, "%s %s %.9g %.9g %.9g %lld\n", mapping,
                      task_label(t.task).c_str(), t.epe, t.bmp3, t.bmp5, t.valid_count);
        os << line;
    }
    std::snprintf(line, sizeof line, "%s all %.9g %.9g %.9g %lld\n", mapping,
                  report.epe_mean, report.bmp3, report.bmp5, report.valid_count);
    os << line;
    std::snprintf(line, sizeof line, "%s pooled %.9g %.9g %.9g %lld\n", mapping,
                  report.pooled_epe, report.pooled_bmp3, report.pooled_bmp5,
                  report.valid_count);
    os << line;
    return os.str();
}

} // namespace xs
