#pragma once

#include <cstdint>
#include <string>

#include "xstereo/evaluation.hpp"
#include "xstereo/matching.hpp"

namespace xs {

/// Effective run parameters shared by all CLI subcommands. Serializes to a
/// line-oriented `key = value` file; parse(serialize(c)) == c.
struct RunConfig {
    uint64_t seed = 42;
    Mapping mapping = Mapping::cs;
    CostKind cost = CostKind::census;
    Preprocess preprocess = Preprocess::agnostic;
    int d_max = 64;
    float p1 = 10.0f;
    float p2 = 120.0f;
    int paths = 8;
    int census_window = 5;
    int patch_window = 9;
    int agnostic_window = 3;
    bool subpixel = false;
    bool lr_check = false;
    float lr_tolerance = 1.0f;
    bool median_post = false;
    std::string out_dir = "out";

    MatchParams match_params() const;
    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError when a value is outside its documented range
/// (penalties ordered, paths in {4,8}, windows odd and >= 3, ...).
void validate(const RunConfig& config);

/// Parses config text: one `key = value` per line, `#` comments, blank
/// lines ignored. Unknown keys and malformed values raise ConfigError.
/// Keys not present keep their defaults.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Emits every key in a fixed order, floats at full precision.
std::string serialize_config(const RunConfig& config);

} // namespace xs
