#include "xstereo/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace xs {

MatchParams RunConfig::match_params() const
{
    MatchParams p;
    p.cost = cost;
    p.preprocess = preprocess;
    p.sgm.p1 = p1;
    p.sgm.p2 = p2;
    p.sgm.paths = paths;
    p.d_max = d_max;
    p.census_window = census_window;
    p.patch_window = patch_window;
    p.agnostic_window.s = agnostic_window;
    p.subpixel = subpixel;
    p.lr_check = lr_check;
    p.lr_tolerance = lr_tolerance;
    p.median_post = median_post;
    return p;
}

void validate(const RunConfig& c)
{
    auto odd_window = [](int s, const char* key) {
        if (s < 3 || s % 2 == 0)
            throw ConfigError(std::string(key) + " must be odd and >= 3, got " +
                              std::to_string(s));
    };
    if (c.d_max < 0)
        throw ConfigError("dmax must be >= 0, got " + std::to_string(c.d_max));
    if (c.p1 < 0.0f)
        throw ConfigError("p1 must be >= 0");
    if (c.p2 < c.p1)
        throw ConfigError("p2 must be >= p1");
    if (c.paths != 4 && c.paths != 8)
        throw ConfigError("paths must be 4 or 8, got " + std::to_string(c.paths));
    odd_window(c.census_window, "census_window");
    odd_window(c.patch_window, "patch_window");
    odd_window(c.agnostic_window, "agnostic_window");
    if (c.lr_tolerance < 0.0f)
        throw ConfigError("lr_tolerance must be >= 0");
    if (c.out_dir.empty())
        throw ConfigError("out must not be empty");
}

namespace {

std::string trim(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

uint64_t parse_u64(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    // strtoull silently wraps a leading minus; reject it explicitly.
    if (end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
        throw ConfigError(key + ": bad unsigned integer '" + v + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(key + ": bad integer '" + v + "'");
    return int(x);
}

float parse_float(const std::string& key, const std::string& v)
{
    char* end = nullptr;
    const float x = std::strtof(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(key + ": bad number '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v)
{
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw ConfigError(key + ": bad boolean '" + v + "' (use true/false)");
}

void assign(RunConfig& c, const std::string& key, const std::string& v)
{
    if (key == "seed") {
        c.seed = parse_u64(key, v);
    } else if (key == "mapping") {
        auto m = mapping_from_label(v);
        if (!m)
            throw ConfigError("mapping: expected rgb or cs, got '" + v + "'");
        c.mapping = *m;
    } else if (key == "cost") {
        if (v == "census")
            c.cost = CostKind::census;
        else if (v == "zncc")
            c.cost = CostKind::zncc;
        else if (v == "sad")
            c.cost = CostKind::sad;
        else
            throw ConfigError("cost: expected census, zncc, or sad, got '" + v + "'");
    } else if (key == "preprocess") {
        if (v == "none")
            c.preprocess = Preprocess::none;
        else if (v == "agnostic")
            c.preprocess = Preprocess::agnostic;
        else
            throw ConfigError("preprocess: expected none or agnostic, got '" + v + "'");
    } else if (key == "dmax") {
        c.d_max = parse_int(key, v);
    } else if (key == "p1") {
        c.p1 = parse_float(key, v);
    } else if (key == "p2") {
        c.p2 = parse_float(key, v);
    } else if (key == "paths") {
        c.paths = parse_int(key, v);
    } else if (key == "census_window") {
        c.census_window = parse_int(key, v);
    } else if (key == "patch_window") {
        c.patch_window = parse_int(key, v);
    } else if (key == "agnostic_window") {
        c.agnostic_window = parse_int(key, v);
    } else if (key == "subpixel") {
        c.subpixel = parse_bool(key, v);
    } else if (key == "lr_check") {
        c.lr_check = parse_bool(key, v);
    } else if (key == "lr_tolerance") {
        c.lr_tolerance = parse_float(key, v);
    } else if (key == "median_post") {
        c.median_post = parse_bool(key, v);
    } else if (key == "out") {
        c.out_dir = v;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const size_t hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        assign(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

std::string serialize_config(const RunConfig& c)
{
    char num[64];
    std::ostringstream os;
    auto put_float = [&](const char* key, float v) {
        std::snprintf(num, sizeof num, "%.17g", double(v));
        os << key << " = " << num << "\n";
    };

    os << "seed = " << c.seed << "\n";
    os << "mapping = " << to_label(c.mapping) << "\n";
    os << "cost = " << to_label(c.cost) << "\n";
    os << "preprocess = " << to_label(c.preprocess) << "\n";
    os << "dmax = " << c.d_max << "\n";
    put_float("p1", c.p1);
    put_float("p2", c.p2);
    os << "paths = " << c.paths << "\n";
    os << "census_window = " << c.census_window << "\n";
    os << "patch_window = " << c.patch_window << "\n";
    os << "agnostic_window = " << c.agnostic_window << "\n";
    os << "subpixel = " << (c.subpixel ? "true" : "false") << "\n";
    os << "lr_check = " << (c.lr_check ? "true" : "false") << "\n";
    put_float("lr_tolerance", c.lr_tolerance);
    os << "median_post = " << (c.median_post ? "true" : "false") << "\n";
    os << "out = " << c.out_dir << "\n";
    return os.str();
}

} // namespace xs
