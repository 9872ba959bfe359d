#include "doctest.h"

#include <cmath>
#include <cstring>

#include "testutil.hpp"
#include "xstereo/agnostic.hpp"

using namespace xs;

namespace {

SpectralImage constant_image(int w, int h, float v)
{
    return make_image(w, h, std::vector<float>(size_t(w) * h, v), PixelMode::strict);
}

bool all_bits_zero(const std::vector<float>& pixels)
{
    for (float v : pixels) {
        uint32_t bits;
        std::memcpy(&bits, &v, 4);
        if (bits != 0)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("median filter: constants, impulses, and a brute-force oracle")
{
    const SpectralImage flat = constant_image(6, 5, 0.37f);
    const DenoisedImage med = median_filter(flat);
    for (float v : med.pixels)
        CHECK(v == 0.37f);

    // single impulse in a zero field vanishes
    SpectralImage impulse = constant_image(7, 7, 0.0f);
    impulse.at(3, 3) = 1.0f;
    const DenoisedImage cleaned = median_filter(impulse);
    CHECK(cleaned.at(3, 3) == 0.0f);

    SplitMix64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const int w = 3 + int(rng.below(14));
        const int h = 3 + int(rng.below(14));
        const SpectralImage img = xstest::random_image(rng, w, h);
        for (int s : {3, 5}) {
            const DenoisedImage out = median_filter(img, WindowConfig{s});
            const auto expect = xstest::oracle_median(img, s);
            for (size_t i = 0; i < expect.size(); ++i)
                CHECK(out.pixels[i] == expect[i]);
        }
    }
}

TEST_CASE("median filter commutes with monotone affine remaps")
{
    SplitMix64 rng(17);
    const SpectralImage img = xstest::random_image(rng, 11, 9);
    const double a = 0.6, b = 0.2;
    std::vector<float> remapped(img.size());
    for (size_t i = 0; i < img.size(); ++i)
        remapped[i] = float(a * img.pixels[i] + b);
    const SpectralImage scaled = make_image(11, 9, std::move(remapped), PixelMode::strict);

    const DenoisedImage m1 = median_filter(img);
    const DenoisedImage m2 = median_filter(scaled);
    for (size_t i = 0; i < img.size(); ++i)
        CHECK(m2.pixels[i] == doctest::Approx(a * m1.pixels[i] + b).epsilon(1e-6));
}

TEST_CASE("local_stats: hand case and scaling laws")
{
    // 3x3 patch {0.0, 0.1, ..., 0.8}: mu = 0.4, sigma^2 = 0.6/8 = 0.075
    std::vector<float> ramp(9);
    for (int i = 0; i < 9; ++i)
        ramp[i] = float(i) * 0.1f;
    const SpectralImage patch = make_image(3, 3, ramp, PixelMode::strict);
    const StructuralStats stats = local_stats(patch);
    // the 0.1 grid is not exact in float, so the derived decimals hold to
    // the input quantization (~1e-8), not to double precision
    CHECK(stats.mean[4] == doctest::Approx(0.4).epsilon(1e-7));
    CHECK(stats.variance[4] == doctest::Approx(0.075).epsilon(1e-7));

    const SpectralImage flat = constant_image(5, 4, 0.6f);
    const StructuralStats fstats = local_stats(flat);
    for (size_t i = 0; i < fstats.mean.size(); ++i) {
        CHECK(fstats.mean[i] == double(0.6f)); // mean of a constant is that constant
        CHECK(fstats.variance[i] == 0.0);
    }

    // mu scales by a, sigma^2 by a^2
    SplitMix64 rng(23);
    const SpectralImage img = xstest::random_image(rng, 8, 7);
    std::vector<float> half(img.size());
    for (size_t i = 0; i < img.size(); ++i)
        half[i] = 0.5f * img.pixels[i];
    const SpectralImage scaled = make_image(8, 7, std::move(half), PixelMode::strict);
    const StructuralStats s1 = local_stats(img);
    const StructuralStats s2 = local_stats(scaled);
    for (size_t i = 0; i < s1.mean.size(); ++i) {
        CHECK(s2.mean[i] == doctest::Approx(0.5 * s1.mean[i]).epsilon(1e-9));
        CHECK(s2.variance[i] == doctest::Approx(0.25 * s1.variance[i]).epsilon(1e-9));
    }
}

TEST_CASE("local_stats matches the brute-force oracle to 1e-12")
{
    SplitMix64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        const int w = 1 + int(rng.below(32));
        const int h = 1 + int(rng.below(32));
        const SpectralImage img = xstest::random_image(rng, w, h);
        const StructuralStats stats = local_stats(img);
        const auto [mean, var] = xstest::oracle_stats(img, 3);
        for (size_t i = 0; i < mean.size(); ++i) {
            CHECK(std::abs(stats.mean[i] - mean[i]) <= 1e-12);
            CHECK(std::abs(stats.variance[i] - var[i]) <= 1e-12);
        }
    }
}

TEST_CASE("structural transform: normalization and degeneracy flags")
{
    const SpectralImage flat = constant_image(6, 6, 0.5f);
    const DenoisedImage med = median_filter(flat);
    const StructuralImage s = structural_transform(med, local_stats(med));
    for (uint8_t d : s.defined)
        CHECK(d == 0);

    // center of the 0.0..0.8 ramp normalizes to 0
    std::vector<float> ramp(9);
    for (int i = 0; i < 9; ++i)
        ramp[i] = float(i) * 0.1f;
    const SpectralImage patch = make_image(3, 3, ramp, PixelMode::strict);
    const StructuralImage sp = structural_transform(patch, local_stats(patch));
    CHECK(sp.defined[4] == 1);
    CHECK(std::abs(sp.values[4]) <= 1e-7); // 0.1-grid quantization leaves ~1e-9

    // gain cancels exactly where defined
    SplitMix64 rng(31);
    const SpectralImage img = xstest::random_image(rng, 10, 10);
    std::vector<float> gained(img.size());
    for (size_t i = 0; i < img.size(); ++i)
        gained[i] = 0.5f * img.pixels[i];
    const SpectralImage scaled = make_image(10, 10, std::move(gained), PixelMode::strict);
    const StructuralImage s1 = structural_transform(img, local_stats(img));
    const StructuralImage s2 = structural_transform(scaled, local_stats(scaled));
    for (size_t i = 0; i < s1.values.size(); ++i)
        if (s1.defined[i] && s2.defined[i])
            CHECK(s2.values[i] == doctest::Approx(s1.values[i]).epsilon(1e-9));
}

TEST_CASE("clip_shift maps structural values into [0,1]")
{
    StructuralImage s;
    s.width = 5;
    s.height = 1;
    s.values = {0.0, 3.0, -3.0, 0.5, -0.25};
    s.defined = {1, 1, 1, 1, 0};

    const AgnosticImage out = clip_shift(s);
    CHECK(out.at(0, 0) == 0.5f);
    CHECK(out.at(0, 1) == 1.0f);  // clamp saturation high
    CHECK(out.at(0, 2) == 0.0f);  // clamp saturation low
    CHECK(out.at(0, 3) == doctest::Approx(0.75).epsilon(1e-7));
    CHECK(out.at(0, 4) == 0.0f);  // undefined -> exactly 0
}

TEST_CASE("color_agnostic: constant input is exactly zero, bit for bit")
{
    for (float c : {0.0f, 0.25f, 0.5f, 1.0f}) {
        const AgnosticImage out = color_agnostic(constant_image(9, 6, c));
        CHECK(all_bits_zero(out.pixels));
    }
}

TEST_CASE("color_agnostic: range, tag, and affine invariance")
{
    SplitMix64 rng(37);
    const SpectralImage img = xstest::random_image(rng, 16, 12, "GR");
    const AgnosticImage out = color_agnostic(img);
    CHECK(out.channel_tag == "GR");
    for (float v : out.pixels) {
        CHECK(v >= 0.0f);
        CHECK(v <= 1.0f);
    }

    // a*I + b matches I wherever both runs are defined
    const double a = 0.45, b = 0.3;
    std::vector<float> mapped(img.size());
    for (size_t i = 0; i < img.size(); ++i)
        mapped[i] = float(a * img.pixels[i] + b);
    const SpectralImage remap = make_image(16, 12, std::move(mapped), PixelMode::strict);

    const DenoisedImage m1 = median_filter(img);
    const DenoisedImage m2 = median_filter(remap);
    const StructuralImage s1 = structural_transform(m1, local_stats(m1));
    const StructuralImage s2 = structural_transform(m2, local_stats(m2));
    const AgnosticImage a1 = clip_shift(s1);
    const AgnosticImage a2 = clip_shift(s2);
    // the offset term costs a little float headroom beyond the pure-gain
    // bound of 1e-6 (mu and sigma absorb b through separate roundings)
    for (size_t i = 0; i < a1.pixels.size(); ++i)
        if (s1.defined[i] && s2.defined[i])
            CHECK(std::abs(a1.pixels[i] - a2.pixels[i]) <= 2e-6f);
}

TEST_CASE("color_agnostic: 0/1 checkerboard binarizes deep-interior pixels")
{
    const int w = 10, h = 10;
    std::vector<float> board(size_t(w) * h);
    for (int m = 0; m < h; ++m)
        for (int n = 0; n < w; ++n)
            board[size_t(m) * w + n] = float((m + n) % 2);
    const SpectralImage img = make_image(w, h, std::move(board), PixelMode::strict);
    const AgnosticImage out = color_agnostic(img);

    // Hand oracle: the 3x3 median keeps the checkerboard (5-of-9 majority),
    // so an interior window holds five center-colored and four opposite
    // samples: mu = (v+4)/9, sigma^2 = 5/18, and the normalized deviation
    // is -(4/9)/sqrt(5/18) = -0.8433 for v=0 (mirrored for v=1).
    const double swing = (4.0 / 9.0) / std::sqrt(5.0 / 18.0) / 2.0;
    for (int m = 2; m < h - 2; ++m)
        for (int n = 2; n < w - 2; ++n) {
            const double expect = (m + n) % 2 ? 0.5 + swing : 0.5 - swing;
            CHECK(out.at(m, n) == doctest::Approx(expect).epsilon(1e-5));
        }
}

TEST_CASE("window config validation")
{
    SplitMix64 rng(41);
    const SpectralImage img = xstest::random_image(rng, 6, 6);
    CHECK_THROWS_AS(median_filter(img, WindowConfig{2}), std::invalid_argument);
    CHECK_THROWS_AS(median_filter(img, WindowConfig{1}), std::invalid_argument);
    CHECK_THROWS_AS(local_stats(img, WindowConfig{4}), std::invalid_argument);
    CHECK_NOTHROW(color_agnostic(img, WindowConfig{5}));
}
