#include "xstereo/synthesis.hpp"

#include <algorithm>
#include <cmath>

namespace xs {

namespace {

void check_same_shape(const SpectralImage& a, const SpectralImage& b, const char* op)
{
    if (!a.same_shape(b))
        throw DimensionMismatch(std::string(op) + ": operand shapes differ");
}

SpectralImage blank_like(const SpectralImage& src, SynthChannel tag)
{
    SpectralImage out;
    out.width = src.width;
    out.height = src.height;
    out.pixels.resize(src.size());
    out.channel_tag = to_label(tag);
    return out;
}

} // namespace

SynthesisParams sample_params(SplitMix64& rng)
{
    SynthesisParams p;
    for (double& w : p.r)
        w = rng.uniform(kWeightMin, kWeightMax);
    return p;
}

std::vector<double> weights_for(SynthChannel c, const SynthesisParams& p)
{
    switch (c) {
    case SynthChannel::R:
    case SynthChannel::G:
    case SynthChannel::B:   return {};
    case SynthChannel::BG:  return {p.r[0], p.r[1]};
    case SynthChannel::BR:  return {p.r[2], p.r[3]};
    case SynthChannel::GR:  return {p.r[4], p.r[5]};
    case SynthChannel::BGR: return {p.r[6], p.r[7], p.r[8]};
    case SynthChannel::BnG: return {p.r[9], p.r[10]};
    case SynthChannel::GnR: return {p.r[11], p.r[12]};
    case SynthChannel::BuG: return {p.r[13], p.r[14]};
    case SynthChannel::GuR: return {p.r[15], p.r[16]};
    }
    return {};
}

SpectralImage synth_passthrough(const SpectralImage& src, SynthChannel c)
{
    if (!is_rgb_channel(c))
        throw MissingChannel(std::string("synth_passthrough: ") + to_label(c) +
                             " is not a source RGB channel");
    SpectralImage out = src;
    out.channel_tag = to_label(c);
    return out;
}

SpectralImage synth_weighted_pair(const SpectralImage& a, const SpectralImage& b,
                                  double w_a, double w_b)
{
    check_same_shape(a, b, "synth_weighted_pair");
    const double den = w_a + w_b;
    if (den <= 0.0)
        throw DegenerateWeights("synth_weighted_pair: w_a + w_b <= 0");

    SpectralImage out = blank_like(a, SynthChannel::BG);
    out.channel_tag.clear();
    for (size_t i = 0; i < a.size(); ++i)
        out.pixels[i] = float((w_a * a.pixels[i] + w_b * b.pixels[i]) / den);
    return out;
}

SpectralImage synth_weighted_triple(const SpectralImage& b, const SpectralImage& g,
                                    const SpectralImage& r,
                                    double w_b, double w_g, double w_r)
{
    check_same_shape(b, g, "synth_weighted_triple");
    check_same_shape(b, r, "synth_weighted_triple");
    const double den = w_b + w_g + w_r;
    if (den <= 0.0)
        throw DegenerateWeights("synth_weighted_triple: weight sum <= 0");

    SpectralImage out = blank_like(b, SynthChannel::BGR);
    out.channel_tag.clear();
    for (size_t i = 0; i < b.size(); ++i)
        out.pixels[i] = float((w_b * b.pixels[i] + w_g * g.pixels[i] + w_r * r.pixels[i]) / den);
    return out;
}

SpectralImage synth_min_pair(const SpectralImage& a, const SpectralImage& b,
                             double w_a, double w_b)
{
    check_same_shape(a, b, "synth_min_pair");
    SpectralImage out = blank_like(a, SynthChannel::BnG);
    out.channel_tag.clear();
    for (size_t i = 0; i < a.size(); ++i)
        out.pixels[i] = float(std::min(w_a * a.pixels[i], w_b * b.pixels[i]));
    return out;
}

SpectralImage synth_max_pair(const SpectralImage& a, const SpectralImage& b,
                             double w_a, double w_b)
{
    check_same_shape(a, b, "synth_max_pair");
    SpectralImage out = blank_like(a, SynthChannel::BuG);
    out.channel_tag.clear();
    for (size_t i = 0; i < a.size(); ++i)
        out.pixels[i] = float(std::max(w_a * a.pixels[i], w_b * b.pixels[i]));
    return out;
}

namespace {

SpectralImage synth_one(const std::array<SpectralImage, 3>& planes, SynthChannel c,
                        const SynthesisParams& p)
{
    const SpectralImage& r = planes[0];
    const SpectralImage& g = planes[1];
    const SpectralImage& b = planes[2];

    SpectralImage out;
    switch (c) {
    case SynthChannel::R:
    case SynthChannel::G:
    case SynthChannel::B:
        return synth_passthrough(planes[rgb_index(c)], c);
    case SynthChannel::BG:  out = synth_weighted_pair(b, g, p.r[0], p.r[1]); break;
    case SynthChannel::BR:  out = synth_weighted_pair(b, r, p.r[2], p.r[3]); break;
    case SynthChannel::GR:  out = synth_weighted_pair(g, r, p.r[4], p.r[5]); break;
    case SynthChannel::BGR: out = synth_weighted_triple(b, g, r, p.r[6], p.r[7], p.r[8]); break;
    case SynthChannel::BnG: out = synth_min_pair(b, g, p.r[9], p.r[10]); break;
    case SynthChannel::GnR: out = synth_min_pair(g, r, p.r[11], p.r[12]); break;
    case SynthChannel::BuG: out = synth_max_pair(b, g, p.r[13], p.r[14]); break;
    case SynthChannel::GuR: out = synth_max_pair(g, r, p.r[15], p.r[16]); break;
    }
    out.channel_tag = to_label(c);
    return out;
}

} // namespace

std::map<SynthChannel, ChannelPair> synthesize_all(const RgbStereoPair& pair,
                                                   const SynthesisParams& params)
{
    for (int i = 0; i < 3; ++i) {
        if (pair.left[i].pixels.empty() || pair.right[i].pixels.empty())
            throw MissingChannel("synthesize_all: pair " + pair.id + " lacks an RGB plane");
    }

    std::map<SynthChannel, ChannelPair> out;
    for (SynthChannel c : kSynthChannels) {
        ChannelPair cp;
        cp.left = synth_one(pair.left, c, params);
        cp.right = synth_one(pair.right, c, params);
        out.emplace(c, std::move(cp));
    }
    return out;
}

TrainingSet build_training_set(const StereoDataset& dataset, uint64_t seed,
                               WindowConfig agnostic_cfg)
{
    TrainingSet set;
    set.seed = seed;
    set.entries.reserve(dataset.pairs.size() * 2 * kSynthChannelCount);

    for (size_t k = 0; k < dataset.pairs.size(); ++k) {
        const RgbStereoPair& pair = dataset.pairs[k];
        SplitMix64 rng = derive_stream(seed, k);
        const SynthesisParams params = sample_params(rng);

        auto bands = synthesize_all(pair, params);
        for (SynthChannel c : kSynthChannels)
            set.manifest.push_back({pair.id, c, weights_for(c, params)});

        for (Viewpoint v : {Viewpoint::left, Viewpoint::right}) {
            for (SynthChannel c : kSynthChannels) {
                const SpectralImage& band =
                    (v == Viewpoint::left) ? bands.at(c).left : bands.at(c).right;
                set.entries.push_back({pair.id, v, c, color_agnostic(band, agnostic_cfg)});
            }
        }
    }
    return set;
}

} // namespace xs
