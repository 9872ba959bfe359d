#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "xstereo/agnostic.hpp"
#include "xstereo/image.hpp"
#include "xstereo/rng.hpp"

namespace xs {

inline constexpr double kWeightMin = 0.1;
inline constexpr double kWeightMax = 1.0;

/// The 17 random band weights r0..r16, each in [kWeightMin, kWeightMax].
/// r0..r8 drive the weighted compositions, r9..r16 the min/max bands.
struct SynthesisParams {
    std::array<double, 17> r{};
};

/// Draws r0..r16 in order from `rng`, uniform in [kWeightMin, kWeightMax].
SynthesisParams sample_params(SplitMix64& rng);

/// Weights that a given channel consumes, in the order they enter its
/// synthesis rule. Empty for the pass-through channels R, G, B.
std::vector<double> weights_for(SynthChannel c, const SynthesisParams& p);

/// Pass-through band: the source plane unaltered, retagged. `c` must be one
/// of R, G, B.
SpectralImage synth_passthrough(const SpectralImage& src, SynthChannel c);

/// out = (w_a*I_a + w_b*I_b) / (w_a + w_b), pixel-wise.
SpectralImage synth_weighted_pair(const SpectralImage& a, const SpectralImage& b,
                                  double w_a, double w_b);

/// out = (w_b*I_b + w_g*I_g + w_r*I_r) / (w_b + w_g + w_r), pixel-wise.
SpectralImage synth_weighted_triple(const SpectralImage& b, const SpectralImage& g,
                                    const SpectralImage& r,
                                    double w_b, double w_g, double w_r);

/// out = min(w_a*I_a, w_b*I_b), pixel-wise.
SpectralImage synth_min_pair(const SpectralImage& a, const SpectralImage& b,
                             double w_a, double w_b);

/// out = max(w_a*I_a, w_b*I_b), pixel-wise.
SpectralImage synth_max_pair(const SpectralImage& a, const SpectralImage& b,
                             double w_a, double w_b);

struct ChannelPair {
    SpectralImage left;
    SpectralImage right;
};

/// Derives all eleven band pairs from an RGB stereo pair. The same weights
/// are applied to both viewpoints of a channel so the two views see the
/// same simulated filter.
std::map<SynthChannel, ChannelPair> synthesize_all(const RgbStereoPair& pair,
                                                   const SynthesisParams& params);

struct TrainingEntry {
    std::string pair_id;
    Viewpoint view;
    SynthChannel channel;
    AgnosticImage image;
};

struct ManifestRecord {
    std::string pair_id;
    SynthChannel channel;
    std::vector<double> weights;
};

struct TrainingSet {
    uint64_t seed = 0;
    std::vector<TrainingEntry> entries;   // pairs x {left,right} x 11 channels
    std::vector<ManifestRecord> manifest; // pairs x 11 channels
};

/// Full training-corpus assembly: per pair, draw fresh weights from the
/// stream derive_stream(seed, pair_index), synthesize the eleven bands for
/// both views, and push every band through the color-agnostic transform.
/// Reruns with equal seeds are bit-identical.
TrainingSet build_training_set(const StereoDataset& dataset, uint64_t seed,
                               WindowConfig agnostic_cfg = {});

} // namespace xs
