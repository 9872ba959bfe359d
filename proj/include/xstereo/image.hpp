#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xstereo/errors.hpp"

namespace xs {

/// Single-channel raster of normalized intensities in [0,1], row-major.
/// Index convention: (m,n) = (row, column).
struct SpectralImage {
    int width = 0;
    int height = 0;
    std::vector<float> pixels;
    std::string channel_tag; // "R", "BnG", a band label like "BP400", or empty

    float at(int m, int n) const { return pixels[size_t(m) * width + n]; }
    float& at(int m, int n) { return pixels[size_t(m) * width + n]; }
    size_t size() const { return pixels.size(); }
    bool same_shape(const SpectralImage& o) const { return width == o.width && height == o.height; }
};

enum class PixelMode { strict, clamp };

/// Validating constructor. `strict` rejects values outside [0,1]; `clamp`
/// clips into [0,1]. Non-finite values are rejected in both modes.
SpectralImage make_image(int width, int height, std::vector<float> pixels,
                         PixelMode mode, std::string channel_tag = {});

/// Left-reference disparity map: the right-image correspondent of left
/// pixel (m,n) is (m, n - d). Non-finite values mark invalid ground truth.
struct DisparityMap {
    int width = 0;
    int height = 0;
    std::vector<float> values;

    float at(int m, int n) const { return values[size_t(m) * width + n]; }
    float& at(int m, int n) { return values[size_t(m) * width + n]; }
    bool same_shape(const DisparityMap& o) const { return width == o.width && height == o.height; }
};

struct ValidityMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> flags;

    bool at(int m, int n) const { return flags[size_t(m) * width + n] != 0; }
    void set(int m, int n, bool v) { flags[size_t(m) * width + n] = v ? 1 : 0; }
};

ValidityMask make_mask(int width, int height, bool initial = true);

/// The eleven synthesized band labels. BnG/GnR are the pixel-wise minimum
/// ("intersection") bands, BuG/GuR the maximum ("union") bands.
enum class SynthChannel : int {
    R = 0, G, B, BG, BR, GR, BGR, BnG, GnR, BuG, GuR,
};

inline constexpr int kSynthChannelCount = 11;
extern const std::array<SynthChannel, kSynthChannelCount> kSynthChannels;

const char* to_label(SynthChannel c);
std::optional<SynthChannel> channel_from_label(const std::string& label);
bool is_rgb_channel(SynthChannel c);

enum class Viewpoint { left, right };
const char* to_label(Viewpoint v);

/// One rectified single-channel stereo pair.
struct StereoPair {
    SpectralImage left;
    SpectralImage right;
    std::string id;
};

/// Returns the pair iff both views have identical dimensions.
StereoPair validate_pair(SpectralImage left, SpectralImage right, std::string id = {});

struct GroundTruth {
    DisparityMap disparity;
    ValidityMask validity;
};

/// Rectified stereo pair with per-view R,G,B planes, plus optional ground
/// truth per viewpoint. Planes are indexed by rgb_index().
struct RgbStereoPair {
    std::string id;
    std::array<SpectralImage, 3> left;  // R, G, B
    std::array<SpectralImage, 3> right; // R, G, B
    std::optional<GroundTruth> gt_left;
    std::optional<GroundTruth> gt_right;

    int width() const { return left[0].width; }
    int height() const { return left[0].height; }
};

/// Plane index for the pass-through channels; throws MissingChannel for
/// any synthesized (non-RGB) channel id.
int rgb_index(SynthChannel c);

struct StereoDataset {
    std::vector<RgbStereoPair> pairs;

    size_t pair_count() const { return pairs.size(); }
};

/// Marks non-finite and exactly-zero ground-truth disparities invalid
/// (the convention used by the evaluation datasets for unknown pixels).
GroundTruth ingest_ground_truth(DisparityMap disparity);

} // namespace xs
