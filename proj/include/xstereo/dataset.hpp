#pragma once

#include <string>
#include <vector>

#include "xstereo/image.hpp"
#include "xstereo/synthesis.hpp"

namespace xs {

/// On-disk convention of an evaluation dataset: one subdirectory per stereo
/// pair under `root`, each holding the two color views and (optionally) a
/// left-view ground-truth disparity file. Ground truth may be a float map
/// (.pfm) or an integer raster (.pgm) whose samples are divided by
/// `gt_divisor` (Middlebury 2005/2006 store scaled integer disparities;
/// zero marks unknown).
struct DatasetLayout {
    std::string root;
    std::string left_name = "left.ppm";
    std::string right_name = "right.ppm";
    std::string gt_left_name = "disp_left.pfm"; // empty -> no ground truth
    double gt_divisor = 1.0;
};

/// Loads one pair directory according to the layout's file names.
RgbStereoPair load_pair_dir(const std::string& dir, const DatasetLayout& layout);

/// Scans the immediate subdirectories of layout.root in name order, checks
/// that every referenced file exists before parsing anything (one error
/// message lists all missing files), then loads every pair.
StereoDataset load_dataset(const DatasetLayout& layout);

/// Reads a single-channel raster by content sniffing: Pf float maps and P5
/// grayscale directly; P6 color requires `channel` (R, G, or B) to select
/// the plane.
SpectralImage load_raster(const std::string& path, const std::string& channel = "");

/// Writes the corpus under `dir`: one 16-bit PGM per entry, named
/// `<pair>_<view>_<channel>.pgm`, plus `manifest.txt` listing the drawn
/// weights per pair and channel. Output bytes depend only on the inputs.
void export_training_set(const TrainingSet& set, const std::string& dir);

} // namespace xs
