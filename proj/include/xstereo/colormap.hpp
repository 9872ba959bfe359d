#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "xstereo/image.hpp"

namespace xs {

/// Packed 8-bit RGB raster, row-major.
struct ColorRaster {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> rgb;
};

/// Palette sample at t in [0,1]: piecewise-linear interpolation through the
/// five anchors navy (0,0,128) - azure (0,128,255) - spring green
/// (0,255,128) - yellow (255,255,0) - red (255,0,0) at t = 0, 1/4, 1/2,
/// 3/4, 1, with round-half-away quantization per channel.
std::array<uint8_t, 3> palette_color(double t);

/// False-color rendering of a disparity map: t = clamp(d / d_max, 0, 1)
/// (d_max = 0 renders the ramp minimum), invalid pixels black.
ColorRaster render_disparity(const DisparityMap& map, const ValidityMask& mask, int d_max);

} // namespace xs
