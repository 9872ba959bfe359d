#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xstereo/agnostic.hpp"
#include "xstereo/image.hpp"

namespace xs {

/// Per-pixel, per-disparity matching costs, indexed [m][n][d] with
/// d in 0..d_max. Costs are finite and non-negative; hypotheses whose
/// right-image correspondent falls out of frame carry the per-pixel
/// maximum of the in-frame costs, so border disparities are neither
/// favored nor excluded.
struct CostVolume {
    int width = 0;
    int height = 0;
    int d_max = 0;

    std::vector<float> costs;

    int hypotheses() const { return d_max + 1; }
    float at(int m, int n, int d) const
    {
        return costs[(size_t(m) * width + n) * hypotheses() + d];
    }
    float& at(int m, int n, int d)
    {
        return costs[(size_t(m) * width + n) * hypotheses() + d];
    }
    const float* slice(int m, int n) const
    {
        return costs.data() + (size_t(m) * width + n) * hypotheses();
    }
};

/// Semi-global aggregation penalties: p1 for one-pixel disparity jumps,
/// p2 for larger jumps, along 4 or 8 scanline paths.
struct SgmParams {
    float p1 = 10.0f;
    float p2 = 120.0f;
    int paths = 8;
};

/// Hamming-distance costs between census descriptors (bit k set iff the
/// k-th window neighbor is strictly darker than the center pixel).
CostVolume census_cost_volume(const SpectralImage& left, const SpectralImage& right,
                              int window, int d_max);

/// 1 - ZNCC patch correlation, in [0,2]. Patches with a standard deviation
/// at or below 1e-6 on either side get the no-information cost 1.
CostVolume zncc_cost_volume(const SpectralImage& left, const SpectralImage& right,
                            int window, int d_max);

/// Windowed sum of absolute intensity differences (intensity baseline).
CostVolume sad_cost_volume(const SpectralImage& left, const SpectralImage& right,
                           int window, int d_max);

/// One directional pass of the SGM recurrence
///   L(p,d) = C(p,d) + min(L(q,d), L(q,d+-1)+P1, min_k L(q,k)+P2) - min_k L(q,k)
/// with q = p - (dm,dn); paths restart with L = C at the image border.
CostVolume sgm_single_path(const CostVolume& volume, const SgmParams& params,
                           int dm, int dn);

/// Sum of the directional passes, in a fixed path order (left-to-right,
/// right-to-left, top-down, bottom-up, then the four diagonals).
CostVolume sgm_aggregate(const CostVolume& volume, const SgmParams& params);

/// Winner-take-all extraction: argmin cost per pixel, ties broken toward
/// the smallest disparity. With `subpixel`, a parabola is fitted through
/// the minimum and its neighbors where the curvature allows.
DisparityMap wta_disparity(const CostVolume& volume, bool subpixel = false);

/// Pixel valid iff the right-view estimate projected through the left
/// disparity agrees within `tolerance` pixels and stays in frame.
ValidityMask left_right_check(const DisparityMap& left_disp, const DisparityMap& right_disp,
                              float tolerance);

enum class CostKind { census, zncc, sad };
enum class Preprocess { none, agnostic };

const char* to_label(CostKind c);
const char* to_label(Preprocess p);
std::optional<CostKind> cost_from_label(const std::string& label);
std::optional<Preprocess> preprocess_from_label(const std::string& label);

struct MatchParams {
    CostKind cost = CostKind::census;
    Preprocess preprocess = Preprocess::agnostic;
    SgmParams sgm;
    int d_max = 64;
    int census_window = 5;
    int patch_window = 9; // zncc / sad
    WindowConfig agnostic_window{};
    bool subpixel = false;
    bool lr_check = false;
    float lr_tolerance = 1.0f;
    bool median_post = false;

    int cost_window() const { return cost == CostKind::census ? census_window : patch_window; }
};

struct MatchResult {
    DisparityMap disparity;      // pre-check estimates, kept even where invalid
    ValidityMask validity;       // all-valid unless the left-right check ran
};

/// Full classical pipeline: optional color-agnostic preprocessing, cost
/// volume, SGM aggregation, WTA extraction, optional median post-filter,
/// optional left-right consistency check via the mirrored pair.
MatchResult match_pair(const SpectralImage& left, const SpectralImage& right,
                       const MatchParams& params);

/// ZNCC and SAD costs are rescaled by these factors inside match_pair so
/// one P1/P2 setting covers all three cost kinds (census Hamming counts
/// for the default 5x5 window span 0..24).
inline constexpr double kZnccCostScale = 24.0 / 2.0;
inline double sad_cost_scale(int window) { return 24.0 / (double(window) * window); }

} // namespace xs
