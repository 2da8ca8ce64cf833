#pragma once

#include <fstream>
#include <string>

#include "pihash/image.hpp"

namespace pihash {

namespace detail {

// Reads the next header token, skipping whitespace and '#' comments.
inline std::string pnm_token(std::istream& in) {
    std::string tok;
    int c = in.get();
    while (c != EOF && (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    while (c != EOF && c > ' ') {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    // The byte just consumed is the single whitespace terminating the token.
    return tok;
}

inline int pnm_int(std::istream& in, const std::string& path) {
    std::string tok = pnm_token(in);
    if (tok.empty()) throw IoError("malformed header (missing field): " + path);
    for (char ch : tok) {
        if (ch < '0' || ch > '9')
            throw IoError("malformed header (non-numeric field '" + tok + "'): " + path);
    }
    if (tok.size() > 9) throw IoError("malformed header (field too large): " + path);
    return std::stoi(tok);
}

} // namespace detail

// Binary PGM (P5) or PPM (P6), 8-bit, maxval 255.
inline RasterImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);

    char magic[2] = {0, 0};
    in.read(magic, 2);
    int channels;
    if (in.gcount() == 2 && magic[0] == 'P' && magic[1] == '5') channels = 1;
    else if (in.gcount() == 2 && magic[0] == 'P' && magic[1] == '6') channels = 3;
    else throw IoError("malformed header (expected P5 or P6 magic): " + path);

    const int width = detail::pnm_int(in, path);
    const int height = detail::pnm_int(in, path);
    const int maxval = detail::pnm_int(in, path);
    if (width < 1 || height < 1)
        throw IoError("malformed header (bad dimensions): " + path);
    if (maxval != 255)
        throw IoError("unsupported bit depth (maxval " + std::to_string(maxval) + "): " + path);

    RasterImage img(width, height, channels);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.pixels.size()))
        throw IoError("truncated pixel data: " + path);
    return img;
}

// Writes with a single whitespace after each header token so that
// save -> load round-trips bit-exactly.
inline void save_image(const RasterImage& img, const std::string& path) {
    detail::require_valid(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << (img.channels == 1 ? "P5" : "P6") << '\n'
        << img.width << ' ' << img.height << '\n'
        << "255" << '\n';
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out) throw IoError("write failed: " + path);
}

} // namespace pihash
