#include "xstereo/pnm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

namespace xs {

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open '" + path + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

// PNM header token, skipping whitespace and '#' comments to end of line.
std::string next_token(const std::string& data, size_t& pos)
{
    for (;;) {
        while (pos < data.size() && is_space(data[pos]))
            ++pos;
        if (pos < data.size() && data[pos] == '#') {
            while (pos < data.size() && data[pos] != '\n')
                ++pos;
            continue;
        }
        break;
    }
    const size_t start = pos;
    while (pos < data.size() && !is_space(data[pos]))
        ++pos;
    if (start == pos)
        throw MalformedHeader("pnm: truncated header");
    return data.substr(start, pos - start);
}

long parse_long(const std::string& tok)
{
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
        throw MalformedHeader("pnm: bad integer '" + tok + "'");
    return v;
}

} // namespace

PnmRaw read_pnm_raw(const std::string& path)
{
    const std::string data = slurp(path);
    size_t pos = 0;

    const std::string magic = next_token(data, pos);
    int channels;
    if (magic == "P5")
        channels = 1;
    else if (magic == "P6")
        channels = 3;
    else
        throw UnsupportedVariant("pnm: magic '" + magic + "' is not P5 or P6");

    const long w = parse_long(next_token(data, pos));
    const long h = parse_long(next_token(data, pos));
    const long maxval = parse_long(next_token(data, pos));
    if (w <= 0 || h <= 0)
        throw MalformedHeader("pnm: non-positive dimensions");
    if (maxval != 255 && maxval != 65535)
        throw UnsupportedMaxval("pnm: maxval " + std::to_string(maxval) +
                                " (only 255 and 65535 are supported)");

    if (pos >= data.size() || !is_space(data[pos]))
        throw MalformedHeader("pnm: missing header terminator");
    ++pos;

    const int bytes_per = maxval == 255 ? 1 : 2;
    const size_t samples = size_t(w) * size_t(h) * channels;
    if (data.size() - pos < samples * bytes_per)
        throw TruncatedPayload("pnm: payload has " + std::to_string(data.size() - pos) +
                               " bytes, needs " + std::to_string(samples * bytes_per));

    PnmRaw raw;
    raw.width = int(w);
    raw.height = int(h);
    raw.channels = channels;
    raw.maxval = int(maxval);
    raw.samples.resize(samples);

    const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data()) + pos;
    if (bytes_per == 1) {
        for (size_t i = 0; i < samples; ++i)
            raw.samples[i] = p[i];
    } else {
        for (size_t i = 0; i < samples; ++i)
            raw.samples[i] = uint16_t((unsigned(p[2 * i]) << 8) | p[2 * i + 1]);
    }
    return raw;
}

PnmImage read_pnm(const std::string& path)
{
    const PnmRaw raw = read_pnm_raw(path);

    PnmImage img;
    img.width = raw.width;
    img.height = raw.height;
    img.maxval = raw.maxval;

    static const char* kRgbTags[3] = {"R", "G", "B"};
    const size_t n = size_t(raw.width) * raw.height;
    for (int c = 0; c < raw.channels; ++c) {
        std::vector<float> pixels(n);
        for (size_t i = 0; i < n; ++i)
            pixels[i] = float(double(raw.samples[i * raw.channels + c]) / raw.maxval);
        img.planes.push_back(make_image(raw.width, raw.height, std::move(pixels),
                                        PixelMode::strict,
                                        raw.channels == 3 ? kRgbTags[c] : ""));
    }
    return img;
}

namespace {

int check_depth(int depth)
{
    if (depth != 8 && depth != 16)
        throw UnsupportedMaxval("pnm: write depth must be 8 or 16");
    return depth == 8 ? 255 : 65535;
}

uint16_t quantize(float v, int maxval)
{
    const double q = std::lround(std::clamp(double(v), 0.0, 1.0) * maxval);
    return uint16_t(q);
}

void put_sample(std::string& out, uint16_t v, int maxval)
{
    if (maxval == 255) {
        out.push_back(char(v));
    } else {
        out.push_back(char(v >> 8));
        out.push_back(char(v & 0xFF));
    }
}

void write_file(const std::string& path, const std::string& data)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out.write(data.data(), std::streamsize(data.size()));
    if (!out)
        throw Error("write failed for '" + path + "'");
}

} // namespace

void write_pnm(const SpectralImage& gray, const std::string& path, int depth)
{
    const int maxval = check_depth(depth);
    std::string out = "P5\n" + std::to_string(gray.width) + " " + std::to_string(gray.height) +
                      "\n" + std::to_string(maxval) + "\n";
    out.reserve(out.size() + gray.size() * (maxval == 255 ? 1 : 2));
    for (float v : gray.pixels)
        put_sample(out, quantize(v, maxval), maxval);
    write_file(path, out);
}

void write_pnm(const SpectralImage& r, const SpectralImage& g, const SpectralImage& b,
               const std::string& path, int depth)
{
    if (!r.same_shape(g) || !r.same_shape(b))
        throw DimensionMismatch("pnm: plane shapes differ");
    const int maxval = check_depth(depth);
    std::string out = "P6\n" + std::to_string(r.width) + " " + std::to_string(r.height) +
                      "\n" + std::to_string(maxval) + "\n";
    for (size_t i = 0; i < r.size(); ++i) {
        put_sample(out, quantize(r.pixels[i], maxval), maxval);
        put_sample(out, quantize(g.pixels[i], maxval), maxval);
        put_sample(out, quantize(b.pixels[i], maxval), maxval);
    }
    write_file(path, out);
}

void write_ppm_rgb8(const std::vector<uint8_t>& rgb, int width, int height,
                    const std::string& path)
{
    if (rgb.size() != size_t(width) * height * 3)
        throw DimensionMismatch("pnm: rgb byte count does not match dimensions");
    std::string out = "P6\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    write_file(path, out);
}

} // namespace xs
