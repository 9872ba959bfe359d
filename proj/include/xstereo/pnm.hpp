#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xstereo/image.hpp"

namespace xs {

/// Decoded binary PNM (P5 gray / P6 color) with intensities normalized to
/// [0,1] by the header maxval. Color rasters are split into R,G,B planes.
struct PnmImage {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<SpectralImage> planes; // 1 for P5; 3 for P6, tagged R,G,B
};

/// Raw integer samples, interleaved for P6. Ground-truth loaders use this
/// to apply their own scale divisor without quantization detours.
struct PnmRaw {
    int width = 0;
    int height = 0;
    int channels = 0;
    int maxval = 0;
    std::vector<uint16_t> samples;
};

/// Only maxval 255 (one byte per sample) and 65535 (two bytes, big-endian)
/// are accepted; others raise UnsupportedMaxval. Non-P5/P6 magic raises
/// UnsupportedVariant.
PnmImage read_pnm(const std::string& path);
PnmRaw read_pnm_raw(const std::string& path);

/// Writers quantize [0,1] intensities with round-to-nearest at the chosen
/// depth (8 -> maxval 255, 16 -> maxval 65535). depth 16 keeps the [0,1]
/// range within 1/65535 of the source.
void write_pnm(const SpectralImage& gray, const std::string& path, int depth);
void write_pnm(const SpectralImage& r, const SpectralImage& g, const SpectralImage& b,
               const std::string& path, int depth);

/// P6 writer over packed 8-bit RGB bytes (used by the disparity renderer).
void write_ppm_rgb8(const std::vector<uint8_t>& rgb, int width, int height,
                    const std::string& path);

} // namespace xs
