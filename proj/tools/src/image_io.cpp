#include "qhardy_cli/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace qhardy::cli {

namespace {

std::string lower_extension(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
    throw ImageError(path + ": " + reason);
}

std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(const std::vector<unsigned char>& bytes, std::size_t& pos, const std::string& path) {
    for (;;) {
        while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
        if (pos < bytes.size() && bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            continue;
        }
        break;
    }
    std::string token;
    while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') {
        token.push_back(static_cast<char>(bytes[pos++]));
    }
    if (token.empty()) fail(path, "truncated PGM header");
    return token;
}

int parse_header_int(const std::string& token, const std::string& path, const char* what) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); })) {
        fail(path, std::string("invalid PGM ") + what + " '" + token + "'");
    }
    try {
        return std::stoi(token);
    } catch (const std::exception&) {
        fail(path, std::string("invalid PGM ") + what + " '" + token + "'");
    }
}

ScalarField load_pgm(const std::vector<unsigned char>& bytes, const std::string& path) {
    std::size_t pos = 0;
    if (pgm_token(bytes, pos, path) != "P5") fail(path, "not a binary (P5) PGM file");
    const int width = parse_header_int(pgm_token(bytes, pos, path), path, "width");
    const int height = parse_header_int(pgm_token(bytes, pos, path), path, "height");
    const int maxval = parse_header_int(pgm_token(bytes, pos, path), path, "maxval");
    if (width <= 0 || height <= 0) fail(path, "PGM dimensions must be positive");
    if (maxval <= 0 || maxval > 65535) fail(path, "PGM maxval must lie in [1, 65535]");
    if (pos >= bytes.size()) fail(path, "truncated PGM header");
    ++pos;  // single whitespace byte after maxval
    const std::size_t bps = maxval < 256 ? 1 : 2;
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (bytes.size() - pos < n * bps) {
        fail(path, "truncated PGM data: expected " + std::to_string(n * bps) + " bytes, found " +
                       std::to_string(bytes.size() - pos));
    }
    ScalarField out(height, width);
    const double scale = 255.0 / maxval;
    for (std::size_t i = 0; i < n; ++i) {
        const unsigned v = bps == 1 ? bytes[pos + i]
                                    : (static_cast<unsigned>(bytes[pos + 2 * i]) << 8) | bytes[pos + 2 * i + 1];
        out.values()[i] = maxval == 255 ? static_cast<double>(v) : v * scale;
    }
    return out;
}

ScalarField load_png(const std::vector<unsigned char>& bytes, const std::string& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        fail(path, std::string("invalid PNG: ") + image.message);
    }
    const bool colour = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
    image.format = colour ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<unsigned char> pixels(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        fail(path, "cannot decode PNG: " + msg);
    }
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    ScalarField out(h, w);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (colour) {
            out.values()[i] = 0.299 * pixels[3 * i] + 0.587 * pixels[3 * i + 1] + 0.114 * pixels[3 * i + 2];
        } else {
            out.values()[i] = pixels[i];
        }
    }
    return out;
}

}  // namespace

unsigned char to_byte(double v) {
    if (std::isnan(v)) return 0;
    // default rounding mode is round-half-to-even
    return static_cast<unsigned char>(std::nearbyint(std::clamp(v, 0.0, 255.0)));
}

ScalarField load_image(const std::string& path) {
    const std::vector<unsigned char> bytes = read_file(path);
    static constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() >= 8 && std::equal(kPngMagic, kPngMagic + 8, bytes.begin())) {
        return load_png(bytes, path);
    }
    if (bytes.size() >= 2 && bytes[0] == 'P') return load_pgm(bytes, path);
    fail(path, "unsupported image format (expected binary PGM or PNG)");
}

void save_image(const ScalarField& field, const std::string& path) {
    if (field.empty()) fail(path, "cannot save an empty image");
    std::vector<unsigned char> pixels(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) pixels[i] = to_byte(field.values()[i]);
    const std::string ext = lower_extension(path);
    if (ext == "png") {
        png_image image;
        std::memset(&image, 0, sizeof image);
        image.version = PNG_IMAGE_VERSION;
        image.width = static_cast<png_uint_32>(field.width());
        image.height = static_cast<png_uint_32>(field.height());
        image.format = PNG_FORMAT_GRAY;
        if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr)) {
            fail(path, std::string("cannot write PNG: ") + image.message);
        }
        return;
    }
    if (ext != "pgm") fail(path, "unsupported output extension (expected .pgm or .png)");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");
    out << "P5\n" << field.width() << ' ' << field.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (!out) fail(path, "write failed");
}

}  // namespace qhardy::cli
