#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pihash/dct.hpp"
#include "pihash/image.hpp"
#include "pihash/raster.hpp"

namespace pihash {

enum class Algorithm { phash, ring, block, cslbp };

inline constexpr const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::phash: return "phash";
        case Algorithm::ring: return "ring";
        case Algorithm::block: return "block";
        case Algorithm::cslbp: return "cslbp";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view name) {
    if (name == "phash") return Algorithm::phash;
    if (name == "ring") return Algorithm::ring;
    if (name == "block") return Algorithm::block;
    if (name == "cslbp") return Algorithm::cslbp;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

inline constexpr std::size_t hash_length(Algorithm a) {
    switch (a) {
        case Algorithm::phash: return 63;
        case Algorithm::ring: return 32;
        case Algorithm::block: return 80;
        case Algorithm::cslbp: return 256;
    }
    return 0;
}

constexpr Algorithm kAllAlgorithms[] = {Algorithm::phash, Algorithm::ring,
                                        Algorithm::block, Algorithm::cslbp};

// Fixed-length hash; binary is true iff every component is exactly 0 or 1.
struct HashVector {
    Algorithm algorithm;
    std::vector<double> values;
    bool binary = false;

    bool valid() const {
        if (values.size() != hash_length(algorithm)) return false;
        bool all01 = true;
        for (double v : values) {
            if (!std::isfinite(v)) return false;
            if (v != 0.0 && v != 1.0) all01 = false;
        }
        return binary == all01;
    }
};

// Equal-area ring partition of a disc: r_k = r_max * sqrt(k / rings).
struct RingPartition {
    int ring_count = 0;
    double r_max = 0.0;
    std::vector<double> radii; // r_0 = 0 < r_1 < ... < r_R = r_max

    static RingPartition equal_area(int rings, double r_max) {
        detail::require(rings >= 1 && r_max > 0.0, "RingPartition: bad parameters");
        RingPartition p;
        p.ring_count = rings;
        p.r_max = r_max;
        p.radii.resize(rings + 1);
        for (int k = 0; k <= rings; ++k)
            p.radii[k] = r_max * std::sqrt(static_cast<double>(k) / rings);
        return p;
    }

    // Ring index in [0, rings) from squared center distance, or -1 when the
    // point falls outside the disc. Equal-area boundaries make this a single
    // division: r_k^2 = r_max^2 * k / rings.
    int ring_index_sq(double d2) const {
        if (d2 >= r_max * r_max) return -1;
        int k = static_cast<int>(d2 * ring_count / (r_max * r_max));
        return k >= ring_count ? ring_count - 1 : k;
    }
};

namespace detail {

inline FloatPlane to_float_plane(const RasterImage& gray) {
    FloatPlane p(gray.width, gray.height);
    for (std::size_t i = 0; i < p.values.size(); ++i)
        p.values[i] = static_cast<double>(gray.pixels[i]);
    return p;
}

// The binary flag is derived state: true iff every component is 0 or 1.
inline HashVector finalize(HashVector h) {
    h.binary = true;
    for (double v : h.values) {
        if (v != 0.0 && v != 1.0) {
            h.binary = false;
            break;
        }
    }
    return h;
}

// Compensated accumulation; ring sums must agree to ~1e-12 across pixel
// permutations for the rotation-invariance guarantee.
struct KahanSum {
    long double sum = 0.0L;
    long double comp = 0.0L;
    void add(double x) {
        const long double y = static_cast<long double>(x) - comp;
        const long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    double value() const { return static_cast<double>(sum); }
};

// (row, col) pairs of the zigzag traversal of an n x n block, DC first.
inline std::vector<std::pair<int, int>> zigzag_order(int n) {
    std::vector<std::pair<int, int>> order;
    order.reserve(static_cast<std::size_t>(n) * n);
    for (int d = 0; d <= 2 * (n - 1); ++d) {
        const int lo = std::max(0, d - n + 1);
        const int hi = std::min(d, n - 1);
        if (d % 2 == 0) {
            for (int row = hi; row >= lo; --row) order.emplace_back(row, d - row);
        } else {
            for (int row = lo; row <= hi; ++row) order.emplace_back(row, d - row);
        }
    }
    return order;
}

} // namespace detail

// 32x32 DCT hash: top-left 8x8 coefficients minus DC, binarized against
// their median. 63 bits.
inline HashVector phash(const RasterImage& img) {
    detail::require_valid(img);
    const RasterImage small = resize_bilinear(to_grayscale(img), 32, 32);
    const FloatPlane coeffs = dct2(detail::to_float_plane(small));

    std::vector<double> ac;
    ac.reserve(63);
    for (int v = 0; v < 8; ++v)
        for (int u = 0; u < 8; ++u)
            if (u != 0 || v != 0) ac.push_back(coeffs.at(u, v));

    std::vector<double> sorted = ac;
    std::nth_element(sorted.begin(), sorted.begin() + 31, sorted.end());
    const double median = sorted[31];

    HashVector h{Algorithm::phash, {}, true};
    h.values.reserve(63);
    for (double v : ac) h.values.push_back(v > median ? 1.0 : 0.0);
    return detail::finalize(std::move(h));
}

// Ring statistics hash in Lab space: 32 equal-area rings of the inscribed
// disc of the 512x512 working image, feature vector (mean L, std L, mean a,
// mean b) per ring, hash component = Euclidean distance to the feature
// centroid. Invariant under 90/180/270-degree rotation.
inline HashVector ring_hash(const RasterImage& img) {
    detail::require_valid(img);
    constexpr int kSide = 512;
    constexpr int kRings = 32;
    const LabImage lab = rgb_to_lab(resize_bilinear(replicate_to_rgb(img), kSide, kSide));

    // Ring index per pixel is a constant of the 512x512 grid. d2 is exact in
    // doubles ((x - 255.5)^2 has fractional part .25), so membership never
    // lands on a boundary and survives pixel permutations exactly.
    static const std::vector<std::int8_t> ring_map = [] {
        const RingPartition part = RingPartition::equal_area(kRings, kSide / 2.0);
        std::vector<std::int8_t> map(static_cast<std::size_t>(kSide) * kSide);
        const double c = (kSide - 1) / 2.0;
        for (int y = 0; y < kSide; ++y) {
            for (int x = 0; x < kSide; ++x) {
                const double dx = x - c, dy = y - c;
                map[static_cast<std::size_t>(y) * kSide + x] =
                    static_cast<std::int8_t>(part.ring_index_sq(dx * dx + dy * dy));
            }
        }
        return map;
    }();

    detail::KahanSum sum_l[kRings], sum_a[kRings], sum_b[kRings];
    std::size_t count[kRings] = {};
    const std::size_t n = static_cast<std::size_t>(kSide) * kSide;
    for (std::size_t i = 0; i < n; ++i) {
        const int k = ring_map[i];
        if (k < 0) continue;
        sum_l[k].add(lab.L.values[i]);
        sum_a[k].add(lab.a.values[i]);
        sum_b[k].add(lab.b.values[i]);
        ++count[k];
    }

    double mean_l[kRings];
    for (int k = 0; k < kRings; ++k) mean_l[k] = sum_l[k].value() / count[k];

    detail::KahanSum sq_l[kRings];
    for (std::size_t i = 0; i < n; ++i) {
        const int k = ring_map[i];
        if (k < 0) continue;
        const double d = lab.L.values[i] - mean_l[k];
        sq_l[k].add(d * d);
    }

    double feat[kRings][4];
    for (int k = 0; k < kRings; ++k) {
        feat[k][0] = mean_l[k];
        feat[k][1] = std::sqrt(sq_l[k].value() / count[k]);
        feat[k][2] = sum_a[k].value() / count[k];
        feat[k][3] = sum_b[k].value() / count[k];
    }
    double centroid[4] = {};
    for (int f = 0; f < 4; ++f) {
        for (int k = 0; k < kRings; ++k) centroid[f] += feat[k][f];
        centroid[f] /= kRings;
    }

    HashVector h{Algorithm::ring, std::vector<double>(kRings), false};
    for (int k = 0; k < kRings; ++k) {
        double d2 = 0.0;
        for (int f = 0; f < 4; ++f) {
            const double d = feat[k][f] - centroid[f];
            d2 += d * d;
        }
        h.values[k] = std::sqrt(d2);
    }
    return detail::finalize(std::move(h));
}

// Salient-block hash: Sobel edge density picks the 16 most structured 16x16
// blocks of the 256x256 working image; each contributes its normalized index
// and the first 4 zigzag AC coefficients of its DCT. 80 values.
inline HashVector block_structure_hash(const RasterImage& img) {
    detail::require_valid(img);
    constexpr int kSide = 256, kBlock = 16, kGrid = kSide / kBlock;
    constexpr int kSelect = 16;
    const RasterImage gray = resize_bilinear(to_grayscale(img), kSide, kSide);

    // Sobel magnitude with replicated borders, kept in doubles.
    std::vector<double> mag(static_cast<std::size_t>(kSide) * kSide);
    double mean = 0.0;
    for (int y = 0; y < kSide; ++y) {
        const int ym = y > 0 ? y - 1 : 0, yp = y < kSide - 1 ? y + 1 : kSide - 1;
        for (int x = 0; x < kSide; ++x) {
            const int xm = x > 0 ? x - 1 : 0, xp = x < kSide - 1 ? x + 1 : kSide - 1;
            const double gx = -gray.at(xm, ym) + gray.at(xp, ym)
                              - 2.0 * gray.at(xm, y) + 2.0 * gray.at(xp, y)
                              - gray.at(xm, yp) + gray.at(xp, yp);
            const double gy = -gray.at(xm, ym) - 2.0 * gray.at(x, ym) - gray.at(xp, ym)
                              + gray.at(xm, yp) + 2.0 * gray.at(x, yp) + gray.at(xp, yp);
            const double m = std::sqrt(gx * gx + gy * gy);
            mag[static_cast<std::size_t>(y) * kSide + x] = m;
            mean += m;
        }
    }
    mean /= static_cast<double>(mag.size());
    double var = 0.0;
    for (double m : mag) var += (m - mean) * (m - mean);
    const double threshold = mean + std::sqrt(var / static_cast<double>(mag.size()));

    // Edge-pixel count per block; rank descending, ties by ascending index.
    int edge_count[kGrid * kGrid] = {};
    for (int y = 0; y < kSide; ++y)
        for (int x = 0; x < kSide; ++x)
            if (mag[static_cast<std::size_t>(y) * kSide + x] > threshold)
                ++edge_count[(y / kBlock) * kGrid + (x / kBlock)];

    std::array<int, kGrid * kGrid> order;
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return edge_count[a] != edge_count[b] ? edge_count[a] > edge_count[b] : a < b;
    });

    static const auto zz = detail::zigzag_order(kBlock);
    HashVector h{Algorithm::block, {}, false};
    h.values.reserve(kSelect * 5);
    for (int rank = 0; rank < kSelect; ++rank) {
        const int bi = order[rank];
        const int bx = (bi % kGrid) * kBlock, by = (bi / kGrid) * kBlock;
        FloatPlane block(kBlock, kBlock);
        for (int y = 0; y < kBlock; ++y)
            for (int x = 0; x < kBlock; ++x)
                block.at(x, y) = gray.at(bx + x, by + y);
        const FloatPlane coeffs = dct2(block);
        h.values.push_back(bi / 255.0);
        for (int i = 1; i <= 4; ++i)
            h.values.push_back(coeffs.at(zz[i].second, zz[i].first));
    }
    return detail::finalize(std::move(h));
}

// Center-symmetric LBP histogram hash: 4-bit codes over the 64x64 working
// image (threshold 3 on opposing-neighbor differences), 16-bin histograms on
// a 4x4 block grid, each L1-normalized. 256 values in [0,1].
inline HashVector cslbp_hash(const RasterImage& img) {
    detail::require_valid(img);
    constexpr int kSide = 64, kBlock = 16, kGrid = kSide / kBlock;
    constexpr int kThreshold = 3;
    const RasterImage gray = resize_bilinear(to_grayscale(img), kSide, kSide);

    double hist[kGrid * kGrid][16] = {};
    std::size_t total[kGrid * kGrid] = {};
    for (int y = 1; y < kSide - 1; ++y) {
        for (int x = 1; x < kSide - 1; ++x) {
            const int e = gray.at(x + 1, y), w = gray.at(x - 1, y);
            const int ne = gray.at(x + 1, y - 1), sw = gray.at(x - 1, y + 1);
            const int n = gray.at(x, y - 1), s = gray.at(x, y + 1);
            const int nw = gray.at(x - 1, y - 1), se = gray.at(x + 1, y + 1);
            int code = 0;
            if (e - w > kThreshold) code |= 1;
            if (ne - sw > kThreshold) code |= 2;
            if (n - s > kThreshold) code |= 4;
            if (nw - se > kThreshold) code |= 8;
            const int bi = (y / kBlock) * kGrid + (x / kBlock);
            hist[bi][code] += 1.0;
            ++total[bi];
        }
    }

    HashVector h{Algorithm::cslbp, {}, false};
    h.values.reserve(256);
    for (int bi = 0; bi < kGrid * kGrid; ++bi)
        for (int code = 0; code < 16; ++code)
            h.values.push_back(hist[bi][code] / static_cast<double>(total[bi]));
    return detail::finalize(std::move(h));
}

inline HashVector compute_hash(const RasterImage& img, Algorithm algo) {
    switch (algo) {
        case Algorithm::phash: return phash(img);
        case Algorithm::ring: return ring_hash(img);
        case Algorithm::block: return block_structure_hash(img);
        case Algorithm::cslbp: return cslbp_hash(img);
    }
    throw std::invalid_argument("compute_hash: bad algorithm");
}

namespace detail {

inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace detail

// One-line form `algorithm:length:v1,v2,...,vl`, shortest round-trip decimals.
inline std::string serialize_hash(const HashVector& h) {
    detail::require(h.valid(), "serialize_hash: invalid HashVector");
    std::string line = algorithm_name(h.algorithm);
    line += ':';
    line += std::to_string(h.values.size());
    line += ':';
    for (std::size_t i = 0; i < h.values.size(); ++i) {
        if (i) line += ',';
        line += detail::format_double(h.values[i]);
    }
    return line;
}

inline HashVector parse_hash(std::string_view line) {
    const auto p1 = line.find(':');
    const auto p2 = p1 == std::string_view::npos ? p1 : line.find(':', p1 + 1);
    if (p2 == std::string_view::npos) throw std::invalid_argument("parse_hash: bad format");

    HashVector h;
    h.algorithm = parse_algorithm(line.substr(0, p1));
    std::size_t declared = 0;
    {
        const auto field = line.substr(p1 + 1, p2 - p1 - 1);
        auto res = std::from_chars(field.data(), field.data() + field.size(), declared);
        if (res.ec != std::errc() || res.ptr != field.data() + field.size())
            throw std::invalid_argument("parse_hash: bad length field");
    }

    std::string_view rest = line.substr(p2 + 1);
    bool all01 = true;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto field = rest.substr(0, comma);
        double v = 0.0;
        auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc() || res.ptr != field.data() + field.size() || !std::isfinite(v))
            throw std::invalid_argument("parse_hash: bad value");
        h.values.push_back(v);
        if (v != 0.0 && v != 1.0) all01 = false;
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    h.binary = all01;
    if (h.values.size() != declared || !h.valid())
        throw std::invalid_argument("parse_hash: length mismatch");
    return h;
}

// Binary hashes as big-endian hex: first component is the most significant
// bit; the tail is zero-padded to a whole byte.
inline std::string hash_to_hex(const HashVector& h) {
    detail::require(h.binary, "hash_to_hex: binary hash required");
    static const char* digits = "0123456789abcdef";
    std::string hex;
    int acc = 0, bits = 0;
    auto flush_nibble = [&] {
        hex += digits[acc];
        acc = 0;
        bits = 0;
    };
    for (double v : h.values) {
        acc = (acc << 1) | (v == 1.0 ? 1 : 0);
        if (++bits == 4) flush_nibble();
    }
    if (bits > 0) {
        acc <<= (4 - bits);
        flush_nibble();
    }
    if (hex.size() % 2 == 1) hex += '0';
    return hex;
}

} // namespace pihash
