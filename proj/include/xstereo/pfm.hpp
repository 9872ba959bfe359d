#pragma once

#include <string>
#include <vector>

#include "xstereo/image.hpp"

namespace xs {

/// Decoded portable float map. Planes are row-major top-down (the file
/// stores rows bottom-up); sample bits are preserved exactly, including
/// non-finite values, and the header scale magnitude is kept as metadata
/// rather than applied.
struct PfmImage {
    int width = 0;
    int height = 0;
    std::vector<std::vector<float>> planes; // 1 for Pf, 3 for PF
    double scale = 1.0;                     // magnitude from the header

    int channels() const { return int(planes.size()); }
};

/// Reads `Pf` (grayscale) or `PF` (color, split into planes) files; any
/// other magic raises UnsupportedVariant. A negative header scale marks
/// little-endian payload, positive big-endian.
PfmImage read_pfm(const std::string& path);

/// Single-plane convenience readers. `plane` selects a PF channel.
DisparityMap read_pfm_disparity(const std::string& path);
SpectralImage read_pfm_image(const std::string& path, PixelMode mode = PixelMode::strict);

/// Writes grayscale `Pf` with scale -1.0 (little-endian), rows bottom-up.
/// read(write(x)) is bitwise identical to x.
void write_pfm(const DisparityMap& map, const std::string& path);
void write_pfm(const SpectralImage& img, const std::string& path);

} // namespace xs
