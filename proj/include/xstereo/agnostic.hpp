#pragma once

#include <cstdint>
#include <vector>

#include "xstereo/image.hpp"

namespace xs {

/// Square analysis window of odd side length s >= 3.
struct WindowConfig {
    int s = 3;
    int half() const { return s / 2; }
};

/// Standard deviations at or below this are treated as zero when
/// normalizing (exact-zero tests are fragile in floating point).
inline constexpr double kSigmaEps = 1e-6;

using DenoisedImage = SpectralImage;
using AgnosticImage = SpectralImage;

/// Local window means and sample variances (denominator s^2 - 1), computed
/// with replicate padding. Kept in double precision so downstream
/// normalization is not limited by the raster storage width.
struct StructuralStats {
    int width = 0;
    int height = 0;
    std::vector<double> mean;
    std::vector<double> variance;
};

/// Per-pixel normalized deviations (I - mu) / sigma. Positions where sigma
/// is degenerate carry defined == 0 and value 0.
struct StructuralImage {
    int width = 0;
    int height = 0;
    std::vector<double> values;
    std::vector<uint8_t> defined;
};

/// s x s median with replicate padding at the borders.
DenoisedImage median_filter(const SpectralImage& img, WindowConfig cfg = {});

StructuralStats local_stats(const SpectralImage& img, WindowConfig cfg = {});

/// Normalizes the denoised image by its local statistics. `stats` must come
/// from `denoised` with the same window.
StructuralImage structural_transform(const DenoisedImage& denoised,
                                     const StructuralStats& stats);

/// Maps structural values into [0,1] via clamp(0.5 + v/2, 0, 1); degenerate
/// positions become exactly 0.
AgnosticImage clip_shift(const StructuralImage& s);

/// The full chain median -> local stats -> normalize -> clip. Used both on
/// synthesized training bands and on camera recordings at inference.
AgnosticImage color_agnostic(const SpectralImage& img, WindowConfig cfg = {});

/// s x s median on a raw raster (no range assumptions); shared by the
/// median filter above and the optional disparity post-filter.
std::vector<float> median_box(const std::vector<float>& values, int width, int height, int s);

} // namespace xs
