#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "pihash/image.hpp"

namespace pihash {

namespace detail {

// cos(pi * (2n+1) * k / (2N)) for k,n in [0,N), row-major by k.
inline std::vector<double> dct_cos_table(int n) {
    std::vector<double> table(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            table[static_cast<std::size_t>(k) * n + j] =
                std::cos(std::numbers::pi * (2 * j + 1) * k / (2.0 * n));
        }
    }
    return table;
}

inline double dct_scale(int k, int n) {
    return k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
}

} // namespace detail

namespace detail {

// 1D orthonormal DCT-II. AC terms are evaluated on mean-centered data:
// mathematically identical (cosine rows are orthogonal to constants) but
// constant inputs then produce exactly zero AC output, which downstream
// binarization relies on.
inline void dct_1d(const double* in, double* out, int n,
                   const std::vector<double>& cos_table) {
    bool constant = true;
    for (int i = 1; i < n && constant; ++i) constant = in[i] == in[0];
    if (constant) { // exactly DC-only
        out[0] = in[0] * n * dct_scale(0, n);
        for (int k = 1; k < n; ++k) out[k] = 0.0;
        return;
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += in[i];
    out[0] = sum * dct_scale(0, n);
    const double mean = sum / n;
    for (int k = 1; k < n; ++k) {
        double acc = 0.0;
        const double* row = cos_table.data() + static_cast<std::size_t>(k) * n;
        for (int i = 0; i < n; ++i) acc += (in[i] - mean) * row[i];
        out[k] = acc * dct_scale(k, n);
    }
}

} // namespace detail

// Orthonormal 2D DCT-II (rows, then columns). Coefficient (0,0) is the DC
// term; Parseval holds under this scaling.
inline FloatPlane dct2(const FloatPlane& plane) {
    const int W = plane.width, H = plane.height;
    detail::require(W >= 1 && H >= 1, "dct2: empty plane");
    const std::vector<double> cw = detail::dct_cos_table(W);
    const std::vector<double> ch = detail::dct_cos_table(H);

    FloatPlane tmp(W, H);
    for (int y = 0; y < H; ++y)
        detail::dct_1d(plane.values.data() + static_cast<std::size_t>(y) * W,
                       tmp.values.data() + static_cast<std::size_t>(y) * W, W, cw);

    FloatPlane out(W, H);
    std::vector<double> col_in(H), col_out(H);
    for (int x = 0; x < W; ++x) {
        for (int y = 0; y < H; ++y) col_in[y] = tmp.at(x, y);
        detail::dct_1d(col_in.data(), col_out.data(), H, ch);
        for (int y = 0; y < H; ++y) out.at(x, y) = col_out[y];
    }
    return out;
}

// Inverse of dct2 (orthonormal DCT-III per axis).
inline FloatPlane idct2(const FloatPlane& plane) {
    const int W = plane.width, H = plane.height;
    detail::require(W >= 1 && H >= 1, "idct2: empty plane");
    const std::vector<double> cw = detail::dct_cos_table(W);
    const std::vector<double> ch = detail::dct_cos_table(H);

    FloatPlane tmp(W, H);
    for (int x = 0; x < W; ++x) {
        for (int y = 0; y < H; ++y) {
            double acc = 0.0;
            for (int k = 0; k < H; ++k)
                acc += detail::dct_scale(k, H) * plane.at(x, k) * ch[static_cast<std::size_t>(k) * H + y];
            tmp.at(x, y) = acc;
        }
    }
    FloatPlane out(W, H);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            double acc = 0.0;
            for (int k = 0; k < W; ++k)
                acc += detail::dct_scale(k, W) * tmp.at(k, y) * cw[static_cast<std::size_t>(k) * W + x];
            out.at(x, y) = acc;
        }
    }
    return out;
}

} // namespace pihash
