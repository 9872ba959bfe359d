#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "xstereo/colormap.hpp"
#include "xstereo/config.hpp"
#include "xstereo/dataset.hpp"
#include "xstereo/evaluation.hpp"
#include "xstereo/matching.hpp"
#include "xstereo/pfm.hpp"
#include "xstereo/pnm.hpp"
#include "xstereo/synthesis.hpp"

namespace fs = std::filesystem;

namespace {

using InputList = std::vector<std::pair<std::string, std::string>>;

// The config file is applied before flag parsing so that any flag passed on
// the command line overrides its file value.
xs::RunConfig preload_config(int argc, char** argv)
{
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc)
            return xs::load_config(argv[i + 1]);
        if (a.rfind("--config=", 0) == 0)
            return xs::load_config(a.substr(9));
    }
    return {};
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw xs::Error("cannot write '" + path + "'");
    out.write(text.data(), std::streamsize(text.size()));
}

// Every run records its effective configuration and inputs, enough to
// reproduce the run from scratch.
void write_run_manifest(const std::string& command, const xs::RunConfig& cfg,
                        const InputList& inputs)
{
    std::string text = "# run manifest\ncommand = " + command + "\n";
    for (const auto& [key, value] : inputs)
        text += "input." + key + " = " + value + "\n";
    text += serialize_config(cfg);
    write_text((fs::path(cfg.out_dir) / "run-manifest.txt").string(), text);
}

struct DatasetOpts {
    std::string root;
    std::string left_name = "left.ppm";
    std::string right_name = "right.ppm";
    std::string gt_name;
    double gt_divisor = 1.0;

    xs::DatasetLayout layout() const { return {root, left_name, right_name, gt_name, gt_divisor}; }
    InputList inputs() const
    {
        InputList list{{"dataset", root}};
        if (!gt_name.empty())
            list.push_back({"gt_divisor", std::to_string(gt_divisor)});
        return list;
    }
};

void add_dataset_options(CLI::App* cmd, DatasetOpts& opts, const char* default_gt)
{
    opts.gt_name = default_gt;
    cmd->add_option("root", opts.root, "dataset root (one directory per pair)")->required();
    cmd->add_option("--left-name", opts.left_name, "left view file name inside each pair dir");
    cmd->add_option("--right-name", opts.right_name, "right view file name");
    cmd->add_option("--gt-name", opts.gt_name, "ground-truth file name (.pfm or .pgm; empty = none)");
    cmd->add_option("--gt-divisor", opts.gt_divisor, "divisor applied to integer ground truth");
}

int run_synth(const xs::RunConfig& cfg, const DatasetOpts& data)
{
    const xs::StereoDataset dataset = xs::load_dataset(data.layout());
    const xs::TrainingSet set =
        xs::build_training_set(dataset, cfg.seed, xs::WindowConfig{cfg.agnostic_window});
    xs::export_training_set(set, cfg.out_dir);
    write_run_manifest("synth", cfg, data.inputs());
    std::printf("synth: %zu pairs -> %zu corpus rasters in %s\n", dataset.pairs.size(),
                set.entries.size(), cfg.out_dir.c_str());
    return 0;
}

int run_transform(const xs::RunConfig& cfg, const std::string& input, const std::string& channel)
{
    const xs::SpectralImage img = xs::load_raster(input, channel);
    const xs::AgnosticImage out = xs::color_agnostic(img, xs::WindowConfig{cfg.agnostic_window});

    fs::create_directories(cfg.out_dir);
    const std::string name = fs::path(input).stem().string() + "_agnostic.pgm";
    const std::string path = (fs::path(cfg.out_dir) / name).string();
    xs::write_pnm(out, path, 16);

    InputList inputs{{"raster", input}};
    if (!channel.empty())
        inputs.push_back({"channel", channel});
    write_run_manifest("transform", cfg, inputs);
    std::printf("transform: wrote %s\n", path.c_str());
    return 0;
}

int run_match(const xs::RunConfig& cfg, const std::string& left, const std::string& right,
              const std::string& left_channel, const std::string& right_channel)
{
    const xs::SpectralImage l = xs::load_raster(left, left_channel);
    const xs::SpectralImage r = xs::load_raster(right, right_channel);
    const xs::MatchResult result = xs::match_pair(l, r, cfg.match_params());

    fs::create_directories(cfg.out_dir);
    const fs::path out(cfg.out_dir);
    xs::write_pfm(result.disparity, (out / "disparity.pfm").string());

    const xs::ColorRaster render =
        xs::render_disparity(result.disparity, result.validity, cfg.d_max);
    xs::write_ppm_rgb8(render.rgb, render.width, render.height, (out / "disparity.ppm").string());

    if (cfg.lr_check) {
        xs::SpectralImage mask;
        mask.width = result.validity.width;
        mask.height = result.validity.height;
        mask.pixels.resize(size_t(mask.width) * mask.height);
        for (int m = 0; m < mask.height; ++m)
            for (int n = 0; n < mask.width; ++n)
                mask.at(m, n) = result.validity.at(m, n) ? 1.0f : 0.0f;
        xs::write_pnm(mask, (out / "validity.pgm").string(), 8);
    }

    write_run_manifest("match", cfg, {{"left", left}, {"right", right}});

    const auto [lo, hi] =
        std::minmax_element(result.disparity.values.begin(), result.disparity.values.end());
    std::printf("match: %dx%d disparity in [%g, %g] written to %s\n", result.disparity.width,
                result.disparity.height, double(*lo), double(*hi), cfg.out_dir.c_str());
    return 0;
}

int run_eval(const xs::RunConfig& cfg, const DatasetOpts& data)
{
    const xs::StereoDataset dataset = xs::load_dataset(data.layout());
    const xs::MetricsReport report =
        xs::evaluate_dataset(dataset, cfg.mapping, cfg.match_params());

    const std::string table = xs::format_report_table(report);
    fs::create_directories(cfg.out_dir);
    write_text((fs::path(cfg.out_dir) / "report.txt").string(), table);
    write_text((fs::path(cfg.out_dir) / "report-records.txt").string(),
               xs::format_report_records(report));
    write_run_manifest("eval", cfg, data.inputs());

    std::printf("eval: mapping %s, cost %s, preprocess %s, %zu pairs\n%s",
                to_label(cfg.mapping), to_label(cfg.cost), to_label(cfg.preprocess),
                dataset.pairs.size(), table.c_str());
    return 0;
}

int run_bench(const xs::RunConfig& cfg, const DatasetOpts& data)
{
    const xs::StereoDataset dataset = xs::load_dataset(data.layout());

    std::string table = "cost     preprocess  epe      bmp3     bmp5\n";
    char line[160];
    for (xs::CostKind cost : {xs::CostKind::census, xs::CostKind::zncc, xs::CostKind::sad}) {
        for (xs::Preprocess pre : {xs::Preprocess::none, xs::Preprocess::agnostic}) {
            xs::MatchParams params = cfg.match_params();
            params.cost = cost;
            params.preprocess = pre;
            const xs::MetricsReport report =
                xs::evaluate_dataset(dataset, cfg.mapping, params);
            std::snprintf(line, sizeof line, "%-8s %-10s  %7.4f  %7.4f  %7.4f\n",
                          to_label(cost), to_label(pre), report.epe_mean, report.bmp3,
                          report.bmp5);
            table += line;
        }
    }

    fs::create_directories(cfg.out_dir);
    write_text((fs::path(cfg.out_dir) / "bench.txt").string(), table);
    write_run_manifest("bench", cfg, data.inputs());
    std::printf("bench: mapping %s, %zu pairs\n%s", to_label(cfg.mapping),
                dataset.pairs.size(), table.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    xs::RunConfig cfg;
    std::string config_path;
    try {
        cfg = preload_config(argc, argv);
    } catch (const xs::Error& e) {
        std::fprintf(stderr, "xstereo: error: %s\n", e.what());
        return 1;
    }

    CLI::App app{"cross-spectral stereo toolkit"};
    app.require_subcommand(1);

    std::string mapping_label, cost_label, preprocess_label;
    int window = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (flags override file values)");
        cmd->add_option("--seed", cfg.seed, "RNG seed");
        cmd->add_option("--out", cfg.out_dir, "output directory");
        cmd->add_option("--agnostic-window", cfg.agnostic_window,
                        "window side for the agnostic transform (odd, >= 3)");
    };
    auto add_matcher = [&](CLI::App* cmd) {
        cmd->add_option("--mapping", mapping_label, "task mapping: rgb or cs");
        cmd->add_option("--cost", cost_label, "matching cost: census, zncc, or sad");
        cmd->add_option("--preprocess", preprocess_label, "per-view preprocessing: none or agnostic");
        cmd->add_option("--dmax", cfg.d_max, "largest disparity hypothesis");
        cmd->add_option("--p1", cfg.p1, "penalty for one-pixel disparity jumps");
        cmd->add_option("--p2", cfg.p2, "penalty for larger jumps");
        cmd->add_option("--paths", cfg.paths, "number of aggregation paths (4 or 8)");
        cmd->add_option("--window", window,
                        "matching window side for the active cost (odd, >= 3)");
        cmd->add_flag("--subpixel", cfg.subpixel, "parabola subpixel refinement");
        cmd->add_flag("--lr-check", cfg.lr_check, "left-right consistency check");
        cmd->add_option("--lr-tol", cfg.lr_tolerance, "left-right agreement tolerance (pixels)");
        cmd->add_flag("--median-post", cfg.median_post, "3x3 median post-filter");
    };

    CLI::App* synth = app.add_subcommand("synth", "synthesize a spectral training corpus");
    DatasetOpts synth_data;
    add_dataset_options(synth, synth_data, "");
    add_common(synth);

    CLI::App* transform = app.add_subcommand("transform", "apply the color-agnostic transform");
    std::string transform_input, transform_channel;
    transform->add_option("raster", transform_input, "input raster (.pgm/.ppm/.pfm)")->required();
    transform->add_option("--channel", transform_channel, "plane of a color raster (R, G, or B)");
    add_common(transform);

    CLI::App* match = app.add_subcommand("match", "estimate disparity for one pair");
    std::string match_left, match_right, left_channel, right_channel;
    match->add_option("left", match_left, "left view raster")->required();
    match->add_option("right", match_right, "right view raster")->required();
    match->add_option("--left-channel", left_channel, "plane of a color left raster");
    match->add_option("--right-channel", right_channel, "plane of a color right raster");
    add_common(match);
    add_matcher(match);

    CLI::App* eval = app.add_subcommand("eval", "score a matcher on a ground-truth dataset");
    DatasetOpts eval_data;
    add_dataset_options(eval, eval_data, "disp_left.pfm");
    add_common(eval);
    add_matcher(eval);

    CLI::App* bench = app.add_subcommand("bench", "compare matcher configs on one dataset");
    DatasetOpts bench_data;
    add_dataset_options(bench, bench_data, "disp_left.pfm");
    add_common(bench);
    add_matcher(bench);

    try {
        app.parse(argc, argv);

        if (!mapping_label.empty()) {
            const auto m = xs::mapping_from_label(mapping_label);
            if (!m)
                throw xs::ConfigError("mapping: expected rgb or cs, got '" + mapping_label + "'");
            cfg.mapping = *m;
        }
        if (!cost_label.empty()) {
            const auto c = xs::cost_from_label(cost_label);
            if (!c)
                throw xs::ConfigError("cost: expected census, zncc, or sad, got '" + cost_label + "'");
            cfg.cost = *c;
        }
        if (!preprocess_label.empty()) {
            const auto p = xs::preprocess_from_label(preprocess_label);
            if (!p)
                throw xs::ConfigError("preprocess: expected none or agnostic, got '" +
                                      preprocess_label + "'");
            cfg.preprocess = *p;
        }
        if (window != 0) {
            if (cfg.cost == xs::CostKind::census)
                cfg.census_window = window;
            else
                cfg.patch_window = window;
        }
        validate(cfg);

        if (app.got_subcommand(synth))
            return run_synth(cfg, synth_data);
        if (app.got_subcommand(transform))
            return run_transform(cfg, transform_input, transform_channel);
        if (app.got_subcommand(match))
            return run_match(cfg, match_left, match_right, left_channel, right_channel);
        if (app.got_subcommand(eval))
            return run_eval(cfg, eval_data);
        return run_bench(cfg, bench_data);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help and friends
        std::fprintf(stderr, "xstereo: error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "xstereo: error: %s\n", e.what());
        return 1;
    }
}
