#include "xstereo/agnostic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xs {

namespace {

void check_window(WindowConfig cfg)
{
    if (cfg.s < 3 || cfg.s % 2 == 0)
        throw std::invalid_argument("window side must be odd and >= 3, got " +
                                    std::to_string(cfg.s));
}

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

} // namespace

std::vector<float> median_box(const std::vector<float>& values, int width, int height, int s)
{
    const int h = s / 2;
    std::vector<float> out(values.size());
    std::vector<float> window(size_t(s) * s);

    for (int m = 0; m < height; ++m) {
        for (int n = 0; n < width; ++n) {
            size_t k = 0;
            for (int i = -h; i <= h; ++i) {
                const int mi = clamp_index(m + i, height);
                for (int j = -h; j <= h; ++j)
                    window[k++] = values[size_t(mi) * width + clamp_index(n + j, width)];
            }
            auto mid = window.begin() + window.size() / 2;
            std::nth_element(window.begin(), mid, window.end());
            out[size_t(m) * width + n] = *mid;
        }
    }
    return out;
}

DenoisedImage median_filter(const SpectralImage& img, WindowConfig cfg)
{
    check_window(cfg);
    if (img.pixels.empty())
        throw ShapeMismatch("median_filter: empty image");

    DenoisedImage out = img;
    out.pixels = median_box(img.pixels, img.width, img.height, cfg.s);
    return out;
}

StructuralStats local_stats(const SpectralImage& img, WindowConfig cfg)
{
    check_window(cfg);
    const int h = cfg.half();
    const double n_window = double(cfg.s) * cfg.s;

    StructuralStats stats;
    stats.width = img.width;
    stats.height = img.height;
    stats.mean.resize(img.size());
    stats.variance.resize(img.size());

    for (int m = 0; m < img.height; ++m) {
        for (int n = 0; n < img.width; ++n) {
            double sum = 0.0;
            for (int i = -h; i <= h; ++i) {
                const int mi = clamp_index(m + i, img.height);
                for (int j = -h; j <= h; ++j)
                    sum += img.at(mi, clamp_index(n + j, img.width));
            }
            const double mean = sum / n_window;

            double dev2 = 0.0;
            for (int i = -h; i <= h; ++i) {
                const int mi = clamp_index(m + i, img.height);
                for (int j = -h; j <= h; ++j) {
                    const double d = img.at(mi, clamp_index(n + j, img.width)) - mean;
                    dev2 += d * d;
                }
            }
            stats.mean[size_t(m) * img.width + n] = mean;
            stats.variance[size_t(m) * img.width + n] = dev2 / (n_window - 1.0);
        }
    }
    return stats;
}

StructuralImage structural_transform(const DenoisedImage& denoised, const StructuralStats& stats)
{
    if (denoised.width != stats.width || denoised.height != stats.height)
        throw DimensionMismatch("structural_transform: stats shape does not match image");

    StructuralImage out;
    out.width = denoised.width;
    out.height = denoised.height;
    out.values.assign(denoised.size(), 0.0);
    out.defined.assign(denoised.size(), 0);

    for (size_t i = 0; i < denoised.size(); ++i) {
        const double sigma = std::sqrt(stats.variance[i]);
        if (sigma > kSigmaEps) {
            out.values[i] = (double(denoised.pixels[i]) - stats.mean[i]) / sigma;
            out.defined[i] = 1;
        }
    }
    return out;
}

AgnosticImage clip_shift(const StructuralImage& s)
{
    AgnosticImage out;
    out.width = s.width;
    out.height = s.height;
    out.pixels.resize(s.values.size());

    for (size_t i = 0; i < s.values.size(); ++i) {
        if (!s.defined[i]) {
            out.pixels[i] = 0.0f;
        } else {
            out.pixels[i] = float(std::clamp(0.5 + s.values[i] / 2.0, 0.0, 1.0));
        }
    }
    return out;
}

AgnosticImage color_agnostic(const SpectralImage& img, WindowConfig cfg)
{
    DenoisedImage denoised = median_filter(img, cfg);
    StructuralStats stats = local_stats(denoised, cfg);
    AgnosticImage out = clip_shift(structural_transform(denoised, stats));
    out.channel_tag = img.channel_tag;
    return out;
}

} // namespace xs
