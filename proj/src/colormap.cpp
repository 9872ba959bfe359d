#include "xstereo/colormap.hpp"

#include <algorithm>
#include <cmath>

namespace xs {

std::array<uint8_t, 3> palette_color(double t)
{
    static const double kAnchors[5][3] = {
        {0, 0, 128}, {0, 128, 255}, {0, 255, 128}, {255, 255, 0}, {255, 0, 0},
    };

    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * 4.0;
    const int seg = std::min(int(pos), 3);
    const double f = pos - seg;

    std::array<uint8_t, 3> out{};
    for (int c = 0; c < 3; ++c) {
        const double v = kAnchors[seg][c] + f * (kAnchors[seg + 1][c] - kAnchors[seg][c]);
        out[c] = uint8_t(std::lround(v));
    }
    return out;
}

ColorRaster render_disparity(const DisparityMap& map, const ValidityMask& mask, int d_max)
{
    if (map.width != mask.width || map.height != mask.height)
        throw DimensionMismatch("render_disparity: map and mask shapes differ");

    ColorRaster out;
    out.width = map.width;
    out.height = map.height;
    out.rgb.assign(size_t(map.width) * map.height * 3, 0);

    for (int m = 0; m < map.height; ++m) {
        for (int n = 0; n < map.width; ++n) {
            if (!mask.at(m, n))
                continue; // stays black
            const float d = map.at(m, n);
            const double t = d_max > 0 ? double(d) / d_max : 0.0;
            const auto color = palette_color(std::isfinite(d) ? t : 0.0);
            uint8_t* px = &out.rgb[(size_t(m) * map.width + n) * 3];
            px[0] = color[0];
            px[1] = color[1];
            px[2] = color[2];
        }
    }
    return out;
}

} // namespace xs
