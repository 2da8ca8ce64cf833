#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "pihash/image.hpp"

namespace pihash {

// BT.601 luma. Grayscale input is returned unchanged.
inline RasterImage to_grayscale(const RasterImage& img) {
    detail::require_valid(img);
    if (img.channels == 1) return img;
    RasterImage out(img.width, img.height, 1);
    const std::uint8_t* src = img.pixels.data();
    for (std::size_t i = 0; i < out.pixels.size(); ++i, src += 3) {
        double y = 0.299 * src[0] + 0.587 * src[1] + 0.114 * src[2];
        long v = std::lround(y);
        out.pixels[i] = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
    }
    return out;
}

inline RasterImage replicate_to_rgb(const RasterImage& img) {
    detail::require_valid(img);
    if (img.channels == 3) return img;
    RasterImage out(img.width, img.height, 3);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        out.pixels[3 * i] = out.pixels[3 * i + 1] = out.pixels[3 * i + 2] = img.pixels[i];
    }
    return out;
}

namespace detail {

// One bilinear axis tap. Sample position for destination index d is
// (d + 0.5) * src/dst - 0.5 = ((2d+1)*src - dst) / (2*dst), kept as an exact
// rational so weights are integers. This makes resizing commute bit-exactly
// with flips, transposes and 90-degree rotations.
struct AxisTap {
    int i0, i1;
    std::int64_t w0, w1; // w0 + w1 == den
};

inline AxisTap axis_tap(int dst_index, int src_size, int dst_size) {
    const std::int64_t den = 2 * static_cast<std::int64_t>(dst_size);
    const std::int64_t num =
        (2 * static_cast<std::int64_t>(dst_index) + 1) * src_size - dst_size;
    if (num <= 0) return {0, 0, den, 0};
    const std::int64_t q = num / den;
    const std::int64_t r = num % den;
    if (q >= src_size - 1) return {src_size - 1, src_size - 1, den, 0};
    return {static_cast<int>(q), static_cast<int>(q) + 1, den - r, r};
}

} // namespace detail

// Pixel-center aligned bilinear resampling, edges clamped, rounded to nearest
// (halves up). Channels are resampled independently.
inline RasterImage resize_bilinear(const RasterImage& img, int w, int h) {
    detail::require_valid(img);
    detail::require(w >= 1 && h >= 1, "resize_bilinear: target dimensions must be >= 1");
    if (w == img.width && h == img.height) return img;

    std::vector<detail::AxisTap> xt(w);
    for (int x = 0; x < w; ++x) xt[x] = detail::axis_tap(x, img.width, w);

    RasterImage out(w, h, img.channels);
    const int C = img.channels;
    const std::int64_t D = 4 * static_cast<std::int64_t>(w) * h; // den_x * den_y
    for (int y = 0; y < h; ++y) {
        const detail::AxisTap ty = detail::axis_tap(y, img.height, h);
        for (int x = 0; x < w; ++x) {
            const detail::AxisTap& tx = xt[x];
            for (int c = 0; c < C; ++c) {
                const std::int64_t row0 =
                    tx.w0 * img.at(tx.i0, ty.i0, c) + tx.w1 * img.at(tx.i1, ty.i0, c);
                const std::int64_t row1 =
                    tx.w0 * img.at(tx.i0, ty.i1, c) + tx.w1 * img.at(tx.i1, ty.i1, c);
                const std::int64_t S = ty.w0 * row0 + ty.w1 * row1;
                out.at(x, y, c) = static_cast<std::uint8_t>((2 * S + D) / (2 * D));
            }
        }
    }
    return out;
}

namespace detail {

inline const std::array<double, 256>& srgb_linear_lut() {
    static const std::array<double, 256> lut = [] {
        std::array<double, 256> t{};
        for (int i = 0; i < 256; ++i) {
            const double c = i / 255.0;
            t[i] = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
        }
        return t;
    }();
    return lut;
}

inline double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    constexpr double delta3 = delta * delta * delta;
    return t > delta3 ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

} // namespace detail

// sRGB -> linear -> XYZ (D65) -> CIE L*a*b*. The white point is taken as the
// matrix image of (1,1,1) so pure white lands exactly on L=100, a=b=0.
inline LabImage rgb_to_lab(const RasterImage& img) {
    detail::require_valid(img);
    detail::require(img.channels == 3, "rgb_to_lab: 3-channel input required");

    constexpr double m[9] = {0.4124564, 0.3575761, 0.1804375,
                             0.2126729, 0.7151522, 0.0721750,
                             0.0193339, 0.1191920, 0.9503041};
    const double xn = m[0] + m[1] + m[2];
    const double yn = m[3] + m[4] + m[5];
    const double zn = m[6] + m[7] + m[8];
    const auto& lut = detail::srgb_linear_lut();

    LabImage lab;
    lab.width = img.width;
    lab.height = img.height;
    lab.L = FloatPlane(img.width, img.height);
    lab.a = FloatPlane(img.width, img.height);
    lab.b = FloatPlane(img.width, img.height);

    const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = lut[img.pixels[3 * i]];
        const double g = lut[img.pixels[3 * i + 1]];
        const double b = lut[img.pixels[3 * i + 2]];
        const double fx = detail::lab_f((m[0] * r + m[1] * g + m[2] * b) / xn);
        const double fy = detail::lab_f((m[3] * r + m[4] * g + m[5] * b) / yn);
        const double fz = detail::lab_f((m[6] * r + m[7] * g + m[8] * b) / zn);
        double L = 116.0 * fy - 16.0;
        if (L < 0.0) L = 0.0;
        if (L > 100.0) L = 100.0;
        lab.L.values[i] = L;
        lab.a.values[i] = 500.0 * (fx - fy);
        lab.b.values[i] = 200.0 * (fy - fz);
    }
    return lab;
}

// 3x3 cross-correlation with replicated borders; kernel is row-major with
// k[4] the center weight. Result rounded and clamped per channel.
inline RasterImage convolve3x3(const RasterImage& img, const std::array<double, 9>& kernel) {
    detail::require_valid(img);
    for (double k : kernel) detail::require(std::isfinite(k), "convolve3x3: non-finite kernel");

    RasterImage out(img.width, img.height, img.channels);
    const int W = img.width, H = img.height, C = img.channels;
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            for (int c = 0; c < C; ++c) {
                double acc = 0.0;
                for (int dy = -1; dy <= 1; ++dy) {
                    int sy = y + dy;
                    sy = sy < 0 ? 0 : (sy >= H ? H - 1 : sy);
                    for (int dx = -1; dx <= 1; ++dx) {
                        int sx = x + dx;
                        sx = sx < 0 ? 0 : (sx >= W ? W - 1 : sx);
                        acc += kernel[(dy + 1) * 3 + (dx + 1)] * img.at(sx, sy, c);
                    }
                }
                long v = std::lround(acc);
                out.at(x, y, c) = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
            }
        }
    }
    return out;
}

// Peak signal-to-noise ratio over all samples; +inf for identical images.
inline double psnr(const RasterImage& a, const RasterImage& b) {
    detail::require(a.width == b.width && a.height == b.height && a.channels == b.channels,
                    "psnr: dimension mismatch");
    double sq = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
        sq += d * d;
    }
    if (sq == 0.0) return std::numeric_limits<double>::infinity();
    const double mse = sq / static_cast<double>(a.pixels.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

} // namespace pihash
