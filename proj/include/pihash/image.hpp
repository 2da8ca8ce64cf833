#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pihash {

// File/parse problems, distinct from contract violations (std::invalid_argument).
class IoError : public std::runtime_error {
  public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// 8-bit raster, row-major, channel-interleaved. channels is 1 (gray) or 3 (sRGB).
struct RasterImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> pixels;

    RasterImage() = default;
    RasterImage(int w, int h, int c, std::uint8_t fill = 0)
        : width(w), height(h), channels(c),
          pixels(static_cast<std::size_t>(w) * h * c, fill) {}

    std::uint8_t at(int x, int y, int c = 0) const {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c = 0) {
        return pixels[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::size_t sample_count() const { return pixels.size(); }

    bool valid() const {
        return width >= 1 && height >= 1 && (channels == 1 || channels == 3) &&
               pixels.size() == static_cast<std::size_t>(width) * height * channels;
    }
};

// Row-major working buffer for transforms and Lab planes.
struct FloatPlane {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    FloatPlane() = default;
    FloatPlane(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    double& at(int x, int y) {
        return values[static_cast<std::size_t>(y) * width + x];
    }
};

// CIE L*a*b*, D65. L in [0,100].
struct LabImage {
    int width = 0;
    int height = 0;
    FloatPlane L, a, b;
};

namespace detail {

inline void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

inline void require_valid(const RasterImage& img) {
    require(img.valid(), "invalid RasterImage");
}

} // namespace detail

// Exact 90-degree rotation as a pixel permutation; output dims are swapped.
// out(x, y) = in(y, H-1-x), matching the rotation attack at theta = +90 on
// square inputs.
inline RasterImage rot90(const RasterImage& img) {
    detail::require_valid(img);
    RasterImage out(img.height, img.width, img.channels);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            for (int c = 0; c < img.channels; ++c) {
                out.at(x, y, c) = img.at(y, img.height - 1 - x, c);
            }
        }
    }
    return out;
}

} // namespace pihash
