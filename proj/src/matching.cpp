#include "xstereo/matching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace xs {

namespace {

void check_volume_inputs(const SpectralImage& left, const SpectralImage& right,
                         int window, int d_max)
{
    if (!left.same_shape(right))
        throw DimensionMismatch("cost volume: view shapes differ");
    if (window < 3 || window % 2 == 0)
        throw std::invalid_argument("cost volume: window must be odd and >= 3");
    if (d_max < 0 || d_max >= left.width)
        throw DisparityRangeTooLarge("cost volume: d_max " + std::to_string(d_max) +
                                     " not in [0, width)");
}

CostVolume blank_volume(int width, int height, int d_max)
{
    CostVolume v;
    v.width = width;
    v.height = height;
    v.d_max = d_max;
    v.costs.assign(size_t(width) * height * (d_max + 1), 0.0f);
    return v;
}

// Fills hypotheses whose correspondent column n - d is out of frame with the
// per-pixel maximum over the in-frame ones (d = 0 is always in frame).
void fill_out_of_frame(CostVolume& vol)
{
    const int D = vol.hypotheses();
    for (int m = 0; m < vol.height; ++m) {
        for (int n = 0; n < vol.width; ++n) {
            float* c = &vol.at(m, n, 0);
            const int in_frame = std::min(n + 1, D);
            float worst = c[0];
            for (int d = 1; d < in_frame; ++d)
                worst = std::max(worst, c[d]);
            for (int d = in_frame; d < D; ++d)
                c[d] = worst;
        }
    }
}

inline int clamp_index(int i, int n) { return std::clamp(i, 0, n - 1); }

// Image replicated into an (h + H + h) x (h + W + h) double buffer.
std::vector<double> pad_replicate(const SpectralImage& img, int h)
{
    const int pw = img.width + 2 * h;
    const int ph = img.height + 2 * h;
    std::vector<double> out(size_t(pw) * ph);
    for (int m = 0; m < ph; ++m) {
        const int sm = clamp_index(m - h, img.height);
        for (int n = 0; n < pw; ++n)
            out[size_t(m) * pw + n] = img.at(sm, clamp_index(n - h, img.width));
    }
    return out;
}

// Summed-area table with a zero top row and left column.
struct Integral {
    int width = 0;
    int height = 0;
    std::vector<double> table;

    void build(const std::vector<double>& img, int w, int h)
    {
        width = w;
        height = h;
        table.assign(size_t(w + 1) * (h + 1), 0.0);
        for (int m = 0; m < h; ++m) {
            double row = 0.0;
            for (int n = 0; n < w; ++n) {
                row += img[size_t(m) * w + n];
                table[size_t(m + 1) * (w + 1) + (n + 1)] =
                    table[size_t(m) * (w + 1) + (n + 1)] + row;
            }
        }
    }

    // Inclusive box [r0..r1] x [c0..c1].
    double box(int r0, int c0, int r1, int c1) const
    {
        const int w1 = width + 1;
        return table[size_t(r1 + 1) * w1 + (c1 + 1)] - table[size_t(r0) * w1 + (c1 + 1)] -
               table[size_t(r1 + 1) * w1 + c0] + table[size_t(r0) * w1 + c0];
    }
};

} // namespace

// ---------------------------------------------------------------------------
// census

namespace {

// Descriptor words per pixel for a w x w comparison window.
int census_words(int window) { return (window * window - 1 + 63) / 64; }

std::vector<uint64_t> census_descriptors(const SpectralImage& img, int window)
{
    const int h = window / 2;
    const int words = census_words(window);
    std::vector<uint64_t> desc(size_t(img.width) * img.height * words, 0);

    for (int m = 0; m < img.height; ++m) {
        for (int n = 0; n < img.width; ++n) {
            uint64_t* d = desc.data() + (size_t(m) * img.width + n) * words;
            const float center = img.at(m, n);
            int bit = 0;
            for (int i = -h; i <= h; ++i) {
                const int mi = clamp_index(m + i, img.height);
                for (int j = -h; j <= h; ++j) {
                    if (i == 0 && j == 0)
                        continue;
                    const float neighbor = img.at(mi, clamp_index(n + j, img.width));
                    if (neighbor < center)
                        d[bit >> 6] |= uint64_t(1) << (bit & 63);
                    ++bit;
                }
            }
        }
    }
    return desc;
}

} // namespace

CostVolume census_cost_volume(const SpectralImage& left, const SpectralImage& right,
                              int window, int d_max)
{
    check_volume_inputs(left, right, window, d_max);
    const int words = census_words(window);
    const auto dl = census_descriptors(left, window);
    const auto dr = census_descriptors(right, window);

    CostVolume vol = blank_volume(left.width, left.height, d_max);
    for (int m = 0; m < vol.height; ++m) {
        for (int n = 0; n < vol.width; ++n) {
            const uint64_t* a = dl.data() + (size_t(m) * vol.width + n) * words;
            float* c = &vol.at(m, n, 0);
            const int in_frame = std::min(n + 1, vol.hypotheses());
            for (int d = 0; d < in_frame; ++d) {
                const uint64_t* b = dr.data() + (size_t(m) * vol.width + (n - d)) * words;
                int hamming = 0;
                for (int w = 0; w < words; ++w)
                    hamming += std::popcount(a[w] ^ b[w]);
                c[d] = float(hamming);
            }
        }
    }
    fill_out_of_frame(vol);
    return vol;
}

CostVolume zncc_cost_volume(const SpectralImage& left, const SpectralImage& right,
                            int window, int d_max)
{
    check_volume_inputs(left, right, window, d_max);
    const int h = window / 2;
    const int W = left.width, H = left.height;
    const int pw = W + 2 * h, ph = H + 2 * h;
    const double n_win = double(window) * window;

    const auto lp = pad_replicate(left, h);
    const auto rp = pad_replicate(right, h);

    std::vector<double> sq(lp.size());
    Integral il, il2, ir, ir2, iq;
    il.build(lp, pw, ph);
    for (size_t i = 0; i < lp.size(); ++i) sq[i] = lp[i] * lp[i];
    il2.build(sq, pw, ph);
    ir.build(rp, pw, ph);
    for (size_t i = 0; i < rp.size(); ++i) sq[i] = rp[i] * rp[i];
    ir2.build(sq, pw, ph);

    // Per-center patch sums; the padded window of center (m,n) spans
    // rows [m, m+2h], cols [n, n+2h].
    auto patch_sum = [&](const Integral& ii, int m, int n) {
        return ii.box(m, n, m + 2 * h, n + 2 * h);
    };
    auto patch_sigma = [&](double s, double s2) {
        const double var = (s2 - s * s / n_win) / (n_win - 1.0);
        return std::sqrt(std::max(var, 0.0));
    };

    CostVolume vol = blank_volume(W, H, d_max);
    std::vector<double> prod(lp.size());

    for (int d = 0; d <= d_max; ++d) {
        for (int m = 0; m < ph; ++m)
            for (int n = 0; n < pw; ++n)
                prod[size_t(m) * pw + n] =
                    lp[size_t(m) * pw + n] * rp[size_t(m) * pw + clamp_index(n - d, pw)];
        iq.build(prod, pw, ph);

        for (int m = 0; m < H; ++m) {
            for (int n = d; n < W; ++n) {
                const double sx = patch_sum(il, m, n);
                const double sx2 = patch_sum(il2, m, n);
                const double sy = patch_sum(ir, m, n - d);
                const double sy2 = patch_sum(ir2, m, n - d);
                const double sigx = patch_sigma(sx, sx2);
                const double sigy = patch_sigma(sy, sy2);

                float cost;
                if (sigx <= 1e-6 || sigy <= 1e-6) {
                    cost = 1.0f; // flat patch, no structure to correlate
                } else {
                    const double sxy = patch_sum(iq, m, n);
                    const double cov = sxy - sx * sy / n_win;
                    double z = cov / (sigx * sigy * (n_win - 1.0));
                    z = std::clamp(z, -1.0, 1.0);
                    cost = float(1.0 - z);
                }
                vol.at(m, n, d) = cost;
            }
        }
    }
    fill_out_of_frame(vol);
    return vol;
}

CostVolume sad_cost_volume(const SpectralImage& left, const SpectralImage& right,
                           int window, int d_max)
{
    check_volume_inputs(left, right, window, d_max);
    const int h = window / 2;
    const int W = left.width, H = left.height;
    const int pw = W + 2 * h, ph = H + 2 * h;

    const auto lp = pad_replicate(left, h);
    const auto rp = pad_replicate(right, h);

    CostVolume vol = blank_volume(W, H, d_max);
    std::vector<double> diff(lp.size());
    Integral ii;

    for (int d = 0; d <= d_max; ++d) {
        for (int m = 0; m < ph; ++m)
            for (int n = 0; n < pw; ++n)
                diff[size_t(m) * pw + n] = std::abs(
                    lp[size_t(m) * pw + n] - rp[size_t(m) * pw + clamp_index(n - d, pw)]);
        ii.build(diff, pw, ph);

        for (int m = 0; m < H; ++m)
            for (int n = d; n < W; ++n)
                vol.at(m, n, d) = float(ii.box(m, n, m + 2 * h, n + 2 * h));
    }
    fill_out_of_frame(vol);
    return vol;
}

// ---------------------------------------------------------------------------
// aggregation and extraction

namespace {

void check_sgm_params(const SgmParams& p)
{
    if (p.p1 < 0.0f || p.p2 < p.p1)
        throw std::invalid_argument("sgm: penalties must satisfy 0 <= p1 <= p2");
    if (p.paths != 4 && p.paths != 8)
        throw std::invalid_argument("sgm: path count must be 4 or 8");
}

} // namespace

CostVolume sgm_single_path(const CostVolume& volume, const SgmParams& params, int dm, int dn)
{
    check_sgm_params(params);
    if ((dm == 0 && dn == 0) || dm < -1 || dm > 1 || dn < -1 || dn > 1)
        throw std::invalid_argument("sgm: path direction must be a unit step");

    const int W = volume.width, H = volume.height, D = volume.hypotheses();
    CostVolume out = blank_volume(W, H, volume.d_max);

    const int m0 = dm >= 0 ? 0 : H - 1, m1 = dm >= 0 ? H : -1, ms = dm >= 0 ? 1 : -1;
    const int n0 = dn >= 0 ? 0 : W - 1, n1 = dn >= 0 ? W : -1, ns = dn >= 0 ? 1 : -1;

    for (int m = m0; m != m1; m += ms) {
        for (int n = n0; n != n1; n += ns) {
            const float* c = volume.slice(m, n);
            float* l = &out.at(m, n, 0);
            const int pm = m - dm, pn = n - dn;

            if (pm < 0 || pm >= H || pn < 0 || pn >= W) {
                for (int d = 0; d < D; ++d)
                    l[d] = c[d];
                continue;
            }

            const float* prev = out.slice(pm, pn);
            float min_prev = prev[0];
            for (int d = 1; d < D; ++d)
                min_prev = std::min(min_prev, prev[d]);

            // delta = best transition - min_prev stays in [0, p2], which
            // keeps the path totals bounded regardless of path length.
            for (int d = 0; d < D; ++d) {
                float best = std::min(prev[d], min_prev + params.p2);
                if (d > 0)
                    best = std::min(best, prev[d - 1] + params.p1);
                if (d + 1 < D)
                    best = std::min(best, prev[d + 1] + params.p1);
                l[d] = c[d] + (best - min_prev);
            }
        }
    }
    return out;
}

CostVolume sgm_aggregate(const CostVolume& volume, const SgmParams& params)
{
    check_sgm_params(params);
    static const int kDirections[8][2] = {
        {0, 1}, {0, -1}, {1, 0}, {-1, 0}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1},
    };

    CostVolume sum = blank_volume(volume.width, volume.height, volume.d_max);
    for (int p = 0; p < params.paths; ++p) {
        const CostVolume path = sgm_single_path(volume, params, kDirections[p][0], kDirections[p][1]);
        for (size_t i = 0; i < sum.costs.size(); ++i)
            sum.costs[i] += path.costs[i];
    }
    return sum;
}

DisparityMap wta_disparity(const CostVolume& volume, bool subpixel)
{
    DisparityMap map;
    map.width = volume.width;
    map.height = volume.height;
    map.values.resize(size_t(volume.width) * volume.height);

    const int D = volume.hypotheses();
    for (int m = 0; m < volume.height; ++m) {
        for (int n = 0; n < volume.width; ++n) {
            const float* c = volume.slice(m, n);
            int best = 0;
            for (int d = 1; d < D; ++d)
                if (c[d] < c[best])
                    best = d;

            float value = float(best);
            if (subpixel && best > 0 && best + 1 < D) {
                const float cm = c[best - 1], c0 = c[best], cp = c[best + 1];
                const float denom = cm - 2.0f * c0 + cp;
                if (denom > 0.0f) {
                    const float offset = std::clamp((cm - cp) / (2.0f * denom), -0.5f, 0.5f);
                    value += offset;
                }
            }
            map.at(m, n) = value;
        }
    }
    return map;
}

ValidityMask left_right_check(const DisparityMap& left_disp, const DisparityMap& right_disp,
                              float tolerance)
{
    if (!left_disp.same_shape(right_disp))
        throw DimensionMismatch("left_right_check: map shapes differ");

    ValidityMask mask = make_mask(left_disp.width, left_disp.height, false);
    for (int m = 0; m < left_disp.height; ++m) {
        for (int n = 0; n < left_disp.width; ++n) {
            const float d = left_disp.at(m, n);
            const int j = n - int(std::lround(d));
            if (j < 0 || j >= left_disp.width)
                continue;
            if (std::abs(d - right_disp.at(m, j)) <= tolerance)
                mask.set(m, n, true);
        }
    }
    return mask;
}

const char* to_label(CostKind c)
{
    switch (c) {
    case CostKind::census: return "census";
    case CostKind::zncc:   return "zncc";
    case CostKind::sad:    return "sad";
    }
    return "?";
}

const char* to_label(Preprocess p)
{
    return p == Preprocess::none ? "none" : "agnostic";
}

std::optional<CostKind> cost_from_label(const std::string& label)
{
    if (label == "census")
        return CostKind::census;
    if (label == "zncc")
        return CostKind::zncc;
    if (label == "sad")
        return CostKind::sad;
    return std::nullopt;
}

std::optional<Preprocess> preprocess_from_label(const std::string& label)
{
    if (label == "none")
        return Preprocess::none;
    if (label == "agnostic")
        return Preprocess::agnostic;
    return std::nullopt;
}

namespace {

SpectralImage mirror_horizontal(const SpectralImage& img)
{
    SpectralImage out = img;
    for (int m = 0; m < img.height; ++m)
        std::reverse(out.pixels.begin() + size_t(m) * img.width,
                     out.pixels.begin() + size_t(m + 1) * img.width);
    return out;
}

DisparityMap mirror_horizontal(const DisparityMap& map)
{
    DisparityMap out = map;
    for (int m = 0; m < map.height; ++m)
        std::reverse(out.values.begin() + size_t(m) * map.width,
                     out.values.begin() + size_t(m + 1) * map.width);
    return out;
}

// One reference view of the pipeline; the left-right check reuses it on the
// mirrored pair to obtain the right-reference map.
DisparityMap match_one_view(const SpectralImage& ref, const SpectralImage& other,
                            const MatchParams& p)
{
    const SpectralImage* a = &ref;
    const SpectralImage* b = &other;
    SpectralImage pa, pb;
    if (p.preprocess == Preprocess::agnostic) {
        pa = color_agnostic(ref, p.agnostic_window);
        pb = color_agnostic(other, p.agnostic_window);
        a = &pa;
        b = &pb;
    }

    CostVolume vol;
    double scale = 1.0;
    switch (p.cost) {
    case CostKind::census:
        vol = census_cost_volume(*a, *b, p.census_window, p.d_max);
        break;
    case CostKind::zncc:
        vol = zncc_cost_volume(*a, *b, p.patch_window, p.d_max);
        scale = kZnccCostScale;
        break;
    case CostKind::sad:
        vol = sad_cost_volume(*a, *b, p.patch_window, p.d_max);
        scale = sad_cost_scale(p.patch_window);
        break;
    }
    if (scale != 1.0)
        for (float& c : vol.costs)
            c = float(c * scale);

    DisparityMap disp = wta_disparity(sgm_aggregate(vol, p.sgm), p.subpixel);
    if (p.median_post)
        disp.values = median_box(disp.values, disp.width, disp.height, 3);
    return disp;
}

} // namespace

MatchResult match_pair(const SpectralImage& left, const SpectralImage& right,
                       const MatchParams& params)
{
    if (!left.same_shape(right))
        throw DimensionMismatch("match_pair: view shapes differ");

    MatchResult result;
    result.disparity = match_one_view(left, right, params);

    if (params.lr_check) {
        const DisparityMap right_disp = mirror_horizontal(
            match_one_view(mirror_horizontal(right), mirror_horizontal(left), params));
        result.validity = left_right_check(result.disparity, right_disp, params.lr_tolerance);
    } else {
        result.validity = make_mask(left.width, left.height, true);
    }
    return result;
}

} // namespace xs
