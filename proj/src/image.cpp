#include "xstereo/image.hpp"

#include <algorithm>
#include <cmath>

namespace xs {

SpectralImage make_image(int width, int height, std::vector<float> pixels,
                         PixelMode mode, std::string channel_tag)
{
    if (width <= 0 || height <= 0)
        throw ShapeMismatch("make_image: dimensions must be positive, got " +
                            std::to_string(width) + "x" + std::to_string(height));
    if (pixels.size() != size_t(width) * size_t(height))
        throw ShapeMismatch("make_image: " + std::to_string(pixels.size()) +
                            " pixels for " + std::to_string(width) + "x" + std::to_string(height));

    for (float& v : pixels) {
        if (!std::isfinite(v))
            throw NonFiniteValue("make_image: non-finite pixel value");
        if (mode == PixelMode::strict) {
            if (v < 0.0f || v > 1.0f)
                throw ValueOutOfRange("make_image: pixel value " + std::to_string(v) +
                                      " outside [0,1]");
        } else {
            v = std::clamp(v, 0.0f, 1.0f);
        }
    }

    SpectralImage img;
    img.width = width;
    img.height = height;
    img.pixels = std::move(pixels);
    img.channel_tag = std::move(channel_tag);
    return img;
}

ValidityMask make_mask(int width, int height, bool initial)
{
    ValidityMask mask;
    mask.width = width;
    mask.height = height;
    mask.flags.assign(size_t(width) * size_t(height), initial ? 1 : 0);
    return mask;
}

const std::array<SynthChannel, kSynthChannelCount> kSynthChannels = {
    SynthChannel::R,   SynthChannel::G,   SynthChannel::B,
    SynthChannel::BG,  SynthChannel::BR,  SynthChannel::GR, SynthChannel::BGR,
    SynthChannel::BnG, SynthChannel::GnR, SynthChannel::BuG, SynthChannel::GuR,
};

const char* to_label(SynthChannel c)
{
    switch (c) {
    case SynthChannel::R:   return "R";
    case SynthChannel::G:   return "G";
    case SynthChannel::B:   return "B";
    case SynthChannel::BG:  return "BG";
    case SynthChannel::BR:  return "BR";
    case SynthChannel::GR:  return "GR";
    case SynthChannel::BGR: return "BGR";
    case SynthChannel::BnG: return "BnG";
    case SynthChannel::GnR: return "GnR";
    case SynthChannel::BuG: return "BuG";
    case SynthChannel::GuR: return "GuR";
    }
    return "?";
}

std::optional<SynthChannel> channel_from_label(const std::string& label)
{
    for (SynthChannel c : kSynthChannels)
        if (label == to_label(c))
            return c;
    return std::nullopt;
}

bool is_rgb_channel(SynthChannel c)
{
    return c == SynthChannel::R || c == SynthChannel::G || c == SynthChannel::B;
}

const char* to_label(Viewpoint v)
{
    return v == Viewpoint::left ? "left" : "right";
}

StereoPair validate_pair(SpectralImage left, SpectralImage right, std::string id)
{
    if (!left.same_shape(right))
        throw DimensionMismatch("validate_pair: left " + std::to_string(left.width) + "x" +
                                std::to_string(left.height) + " vs right " +
                                std::to_string(right.width) + "x" + std::to_string(right.height));
    return StereoPair{std::move(left), std::move(right), std::move(id)};
}

int rgb_index(SynthChannel c)
{
    switch (c) {
    case SynthChannel::R: return 0;
    case SynthChannel::G: return 1;
    case SynthChannel::B: return 2;
    default:
        throw MissingChannel(std::string("channel ") + to_label(c) + " is not an RGB source plane");
    }
}

GroundTruth ingest_ground_truth(DisparityMap disparity)
{
    ValidityMask mask = make_mask(disparity.width, disparity.height, true);
    for (size_t i = 0; i < disparity.values.size(); ++i) {
        float v = disparity.values[i];
        if (!std::isfinite(v) || v == 0.0f)
            mask.flags[i] = 0;
    }
    return GroundTruth{std::move(disparity), std::move(mask)};
}

} // namespace xs
