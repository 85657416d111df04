#include "navspace/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace navspace::io {

using navspace::geometry::SegMask;
using navspace::field::DistanceField;

namespace {

[[noreturn]] void parse_fail(size_t offset, const std::string& what) {
    throw std::runtime_error("PGM parse error at byte " + std::to_string(offset) + ": " + what);
}

// Skips whitespace and '#' comment lines, returning the next token start.
size_t skip_separators(const std::string& bytes, size_t pos) {
    while (pos < bytes.size()) {
        const unsigned char c = bytes[pos];
        if (c == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else if (std::isspace(c)) {
            ++pos;
        } else {
            break;
        }
    }
    return pos;
}

int parse_int(const std::string& bytes, size_t& pos, const char* name) {
    pos = skip_separators(bytes, pos);
    if (pos >= bytes.size()) parse_fail(pos, std::string("missing ") + name);
    if (!std::isdigit(static_cast<unsigned char>(bytes[pos])))
        parse_fail(pos, std::string("invalid ") + name);
    long value = 0;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
        value = value * 10 + (bytes[pos] - '0');
        if (value > 1 << 24) parse_fail(pos, std::string(name) + " out of range");
        ++pos;
    }
    return static_cast<int>(value);
}

}  // namespace

SegMask read_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        parse_fail(0, "expected P5 magic");
    size_t pos = 2;
    const int width = parse_int(bytes, pos, "width");
    const int height = parse_int(bytes, pos, "height");
    const int maxval = parse_int(bytes, pos, "maxval");
    if (width < 2 || height < 2) parse_fail(pos, "mask dimensions must be at least 2x2");
    if (maxval < 1 || maxval > 255) parse_fail(pos, "maxval must be in [1, 255]");
    if (pos >= bytes.size()) parse_fail(pos, "missing pixel data");
    ++pos;  // single whitespace byte after maxval

    const size_t expected = static_cast<size_t>(width) * height;
    if (bytes.size() - pos < expected)
        parse_fail(bytes.size(), "truncated pixel data, expected " + std::to_string(expected) +
                                     " bytes, got " + std::to_string(bytes.size() - pos));
    SegMask mask(width, height);
    for (size_t i = 0; i < expected; ++i)
        mask.cells[i] = static_cast<unsigned char>(bytes[pos + i]) > 0 ? 1 : 0;
    return mask;
}

std::string write_pgm(const SegMask& mask) {
    navspace::geometry::validate(mask);
    std::string out = "P5\n" + std::to_string(mask.width) + " " + std::to_string(mask.height) +
                      "\n255\n";
    out.reserve(out.size() + mask.cells.size());
    for (uint8_t c : mask.cells) out.push_back(c ? static_cast<char>(255) : 0);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

SegMask load_pgm(const std::string& path) { return read_pgm(read_file(path)); }

void save_pgm(const SegMask& mask, const std::string& path) {
    write_file(path, write_pgm(mask));
}

namespace {

// Piecewise-linear stops at t = 0, 0.25, 0.5, 0.75, 1: blue, cyan, green,
// yellow, red.
void heat_color(double t, unsigned char rgb[3]) {
    static const double stops[5][3] = {{0, 0, 255}, {0, 255, 255}, {0, 255, 0},
                                       {255, 255, 0}, {255, 0, 0}};
    t = std::clamp(t, 0.0, 1.0);
    const double x = t * 4.0;
    const int k = std::min(static_cast<int>(x), 3);
    const double f = x - k;
    for (int c = 0; c < 3; ++c) {
        const double val = stops[k][c] + f * (stops[k + 1][c] - stops[k][c]);
        rgb[c] = static_cast<unsigned char>(std::lround(val));
    }
}

}  // namespace

std::string write_ppm_heatmap(const DistanceField& field) {
    const double max = navspace::field::field_max(field);
    std::string out = "P6\n" + std::to_string(field.width) + " " +
                      std::to_string(field.height) + "\n255\n";
    out.reserve(out.size() + field.values.size() * 3);
    unsigned char rgb[3];
    for (double v : field.values) {
        heat_color(max > 0.0 ? v / max : 0.0, rgb);
        out.push_back(static_cast<char>(rgb[0]));
        out.push_back(static_cast<char>(rgb[1]));
        out.push_back(static_cast<char>(rgb[2]));
    }
    return out;
}

void save_ppm_heatmap(const DistanceField& field, const std::string& path) {
    write_file(path, write_ppm_heatmap(field));
}

std::string write_text_matrix(const DistanceField& field) {
    std::ostringstream out;
    out << field.width << " " << field.height << "\n";
    char buf[32];
    for (int v = 0; v < field.height; ++v) {
        for (int u = 0; u < field.width; ++u) {
            std::snprintf(buf, sizeof(buf), "%.6g", field.at(u, v));
            if (u) out << ' ';
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace navspace::io
