#include "xstereo/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "xstereo/pfm.hpp"
#include "xstereo/pnm.hpp"

namespace fs = std::filesystem;

namespace xs {

namespace {

std::string sniff_magic(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    return std::string(magic, 2);
}

DisparityMap load_ground_truth(const std::string& path, double divisor)
{
    if (divisor <= 0.0)
        throw ConfigError("gt_divisor must be > 0");

    const std::string magic = sniff_magic(path);
    if (magic == "Pf" || magic == "PF") {
        DisparityMap map = read_pfm_disparity(path);
        if (divisor != 1.0)
            for (float& v : map.values)
                v = float(v / divisor);
        return map;
    }

    const PnmRaw raw = read_pnm_raw(path);
    if (raw.channels != 1)
        throw UnsupportedVariant("ground truth '" + path + "' must be grayscale");
    DisparityMap map;
    map.width = raw.width;
    map.height = raw.height;
    map.values.resize(raw.samples.size());
    for (size_t i = 0; i < raw.samples.size(); ++i)
        map.values[i] = float(double(raw.samples[i]) / divisor);
    return map;
}

} // namespace

RgbStereoPair load_pair_dir(const std::string& dir, const DatasetLayout& layout)
{
    auto load_rgb = [&](const std::string& name) {
        const std::string path = (fs::path(dir) / name).string();
        PnmImage img = read_pnm(path);
        if (img.planes.size() != 3)
            throw UnsupportedVariant("'" + path + "' is grayscale, expected a color raster");
        return std::array<SpectralImage, 3>{std::move(img.planes[0]), std::move(img.planes[1]),
                                            std::move(img.planes[2])};
    };

    RgbStereoPair pair;
    pair.id = fs::path(dir).filename().string();
    pair.left = load_rgb(layout.left_name);
    pair.right = load_rgb(layout.right_name);

    for (int c = 0; c < 3; ++c)
        if (!pair.left[c].same_shape(pair.right[0]))
            throw DimensionMismatch("pair '" + pair.id + "': view shapes differ");

    if (!layout.gt_left_name.empty()) {
        const std::string gt_path = (fs::path(dir) / layout.gt_left_name).string();
        DisparityMap disp = load_ground_truth(gt_path, layout.gt_divisor);
        if (disp.width != pair.width() || disp.height != pair.height())
            throw DimensionMismatch("pair '" + pair.id + "': ground-truth shape differs");
        pair.gt_left = ingest_ground_truth(std::move(disp));
    }
    return pair;
}

StereoDataset load_dataset(const DatasetLayout& layout)
{
    if (!fs::is_directory(layout.root))
        throw Error("dataset root '" + layout.root + "' is not a directory");

    std::vector<std::string> dirs;
    for (const auto& entry : fs::directory_iterator(layout.root))
        if (entry.is_directory())
            dirs.push_back(entry.path().string());
    std::sort(dirs.begin(), dirs.end());
    if (dirs.empty())
        throw Error("dataset root '" + layout.root + "' has no pair directories");

    // Fail-fast manifest check: every referenced file must exist before any
    // parsing starts, and the error names all of them at once.
    std::string missing;
    for (const std::string& dir : dirs) {
        for (const std::string& name :
             {layout.left_name, layout.right_name, layout.gt_left_name}) {
            if (name.empty())
                continue;
            const fs::path p = fs::path(dir) / name;
            if (!fs::is_regular_file(p))
                missing += "\n  " + p.string();
        }
    }
    if (!missing.empty())
        throw Error("dataset is missing files:" + missing);

    StereoDataset dataset;
    for (const std::string& dir : dirs)
        dataset.pairs.push_back(load_pair_dir(dir, layout));
    return dataset;
}

SpectralImage load_raster(const std::string& path, const std::string& channel)
{
    const std::string magic = sniff_magic(path);
    if (magic == "Pf" || magic == "PF")
        return read_pfm_image(path);

    PnmImage img = read_pnm(path);
    if (img.planes.size() == 1)
        return std::move(img.planes[0]);

    for (SpectralImage& plane : img.planes)
        if (plane.channel_tag == channel)
            return std::move(plane);
    throw MissingChannel("'" + path + "' is a color raster; select a channel (R, G, or B)");
}

void export_training_set(const TrainingSet& set, const std::string& dir)
{
    fs::create_directories(dir);

    for (const TrainingEntry& entry : set.entries) {
        const std::string name = entry.pair_id + "_" + to_label(entry.view) + "_" +
                                 to_label(entry.channel) + ".pgm";
        write_pnm(entry.image, (fs::path(dir) / name).string(), 16);
    }

    std::string manifest = "# training corpus manifest\n";
    manifest += "# seed " + std::to_string(set.seed) + "\n";
    manifest += "# columns: pair channel weights...\n";
    char num[64];
    for (const ManifestRecord& rec : set.manifest) {
        manifest += rec.pair_id;
        manifest += ' ';
        manifest += to_label(rec.channel);
        for (double w : rec.weights) {
            std::snprintf(num, sizeof num, " %.17g", w);
            manifest += num;
        }
        manifest += '\n';
    }

    std::ofstream out(fs::path(dir) / "manifest.txt", std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write manifest under '" + dir + "'");
    out.write(manifest.data(), std::streamsize(manifest.size()));
}

} // namespace xs
