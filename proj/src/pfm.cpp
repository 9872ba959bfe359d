#include "xstereo/pfm.hpp"

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <cstring>
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

// Whitespace-delimited header token; PFM headers carry no comments.
std::string next_token(const std::string& data, size_t& pos)
{
    while (pos < data.size() && is_space(data[pos]))
        ++pos;
    const size_t start = pos;
    while (pos < data.size() && !is_space(data[pos]))
        ++pos;
    if (start == pos)
        throw MalformedHeader("pfm: truncated header");
    return data.substr(start, pos - start);
}

long parse_long(const std::string& tok)
{
    char* end = nullptr;
    const long v = std::strtol(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0')
        throw MalformedHeader("pfm: bad integer '" + tok + "'");
    return v;
}

uint32_t bswap32(uint32_t v)
{
    return (v >> 24) | ((v >> 8) & 0x0000FF00u) | ((v << 8) & 0x00FF0000u) | (v << 24);
}

} // namespace

PfmImage read_pfm(const std::string& path)
{
    const std::string data = slurp(path);
    size_t pos = 0;

    const std::string magic = next_token(data, pos);
    int channels;
    if (magic == "Pf")
        channels = 1;
    else if (magic == "PF")
        channels = 3;
    else
        throw UnsupportedVariant("pfm: magic '" + magic + "' is not Pf or PF");

    const long w = parse_long(next_token(data, pos));
    const long h = parse_long(next_token(data, pos));
    if (w <= 0 || h <= 0)
        throw MalformedHeader("pfm: non-positive dimensions");

    const std::string scale_tok = next_token(data, pos);
    char* end = nullptr;
    const double scale = std::strtod(scale_tok.c_str(), &end);
    if (end == scale_tok.c_str() || *end != '\0' || scale == 0.0)
        throw MalformedHeader("pfm: bad scale '" + scale_tok + "'");

    // Exactly one whitespace byte separates the header from the payload.
    if (pos >= data.size() || !is_space(data[pos]))
        throw MalformedHeader("pfm: missing header terminator");
    ++pos;

    const size_t samples = size_t(w) * size_t(h) * channels;
    if (data.size() - pos < samples * 4)
        throw TruncatedPayload("pfm: payload has " + std::to_string(data.size() - pos) +
                               " bytes, needs " + std::to_string(samples * 4));

    const bool file_le = scale < 0.0;
    const bool host_le = std::endian::native == std::endian::little;
    const bool swap = file_le != host_le;

    PfmImage img;
    img.width = int(w);
    img.height = int(h);
    img.scale = std::abs(scale);
    img.planes.assign(channels, std::vector<float>(size_t(w) * h));

    const char* payload = data.data() + pos;
    for (long fr = 0; fr < h; ++fr) {
        const long m = h - 1 - fr; // file rows run bottom-up
        for (long n = 0; n < w; ++n) {
            for (int c = 0; c < channels; ++c) {
                uint32_t bits;
                std::memcpy(&bits, payload + ((size_t(fr) * w + n) * channels + c) * 4, 4);
                if (swap)
                    bits = bswap32(bits);
                std::memcpy(&img.planes[c][size_t(m) * w + n], &bits, 4);
            }
        }
    }
    return img;
}

DisparityMap read_pfm_disparity(const std::string& path)
{
    const PfmImage img = read_pfm(path);
    if (img.channels() != 1)
        throw UnsupportedVariant("pfm: '" + path + "' is color, expected grayscale disparity");
    DisparityMap map;
    map.width = img.width;
    map.height = img.height;
    map.values = img.planes[0];
    return map;
}

SpectralImage read_pfm_image(const std::string& path, PixelMode mode)
{
    const PfmImage img = read_pfm(path);
    if (img.channels() != 1)
        throw UnsupportedVariant("pfm: '" + path + "' is color, expected grayscale");
    return make_image(img.width, img.height, img.planes[0], mode);
}

namespace {

void write_pfm_raw(const float* values, int width, int height, const std::string& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << "Pf\n" << width << " " << height << "\n-1.0\n";

    const bool host_le = std::endian::native == std::endian::little;
    for (int fr = 0; fr < height; ++fr) {
        const int m = height - 1 - fr;
        for (int n = 0; n < width; ++n) {
            uint32_t bits;
            std::memcpy(&bits, &values[size_t(m) * width + n], 4);
            if (!host_le)
                bits = bswap32(bits);
            out.write(reinterpret_cast<const char*>(&bits), 4);
        }
    }
    if (!out)
        throw Error("write failed for '" + path + "'");
}

} // namespace

void write_pfm(const DisparityMap& map, const std::string& path)
{
    write_pfm_raw(map.values.data(), map.width, map.height, path);
}

void write_pfm(const SpectralImage& img, const std::string& path)
{
    write_pfm_raw(img.pixels.data(), img.width, img.height, path);
}

} // namespace xs
