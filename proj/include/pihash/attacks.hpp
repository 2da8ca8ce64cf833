#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pihash/dct.hpp"
#include "pihash/hashes.hpp"
#include "pihash/image.hpp"
#include "pihash/raster.hpp"
#include "pihash/rng.hpp"

namespace pihash {

enum class AttackKind {
    brightness,
    contrast,
    gamma,
    gaussian3x3,
    salt_pepper,
    multiplicative,
    jpeg,
    rotation,
    scaling,
    watermark,
};

enum class Corner { BottomRight, TopLeft };

inline constexpr const char* attack_kind_name(AttackKind k) {
    switch (k) {
        case AttackKind::brightness: return "brightness";
        case AttackKind::contrast: return "contrast";
        case AttackKind::gamma: return "gamma";
        case AttackKind::gaussian3x3: return "gaussian3x3";
        case AttackKind::salt_pepper: return "salt_pepper";
        case AttackKind::multiplicative: return "multiplicative";
        case AttackKind::jpeg: return "jpeg";
        case AttackKind::rotation: return "rotation";
        case AttackKind::scaling: return "scaling";
        case AttackKind::watermark: return "watermark";
    }
    return "?";
}

inline AttackKind parse_attack_kind(std::string_view name) {
    for (AttackKind k : {AttackKind::brightness, AttackKind::contrast, AttackKind::gamma,
                         AttackKind::gaussian3x3, AttackKind::salt_pepper,
                         AttackKind::multiplicative, AttackKind::jpeg, AttackKind::rotation,
                         AttackKind::scaling, AttackKind::watermark}) {
        if (name == attack_kind_name(k)) return k;
    }
    throw std::invalid_argument("unknown attack kind: " + std::string(name));
}

// One content-preserving operation. `value` is the kind's single numeric
// parameter (b, c, gamma, sigma, d, v, q, theta, s or alpha); `corner` is
// only meaningful for watermark.
struct AttackSpec {
    AttackKind kind;
    double value = 0.0;
    Corner corner = Corner::BottomRight;
    std::string label;
};

// Parameter key used in the one-line manifest form `kind key=value ...`.
inline constexpr const char* attack_param_key(AttackKind k) {
    switch (k) {
        case AttackKind::brightness: return "b";
        case AttackKind::contrast: return "c";
        case AttackKind::gamma: return "gamma";
        case AttackKind::gaussian3x3: return "sigma";
        case AttackKind::salt_pepper: return "d";
        case AttackKind::multiplicative: return "v";
        case AttackKind::jpeg: return "q";
        case AttackKind::rotation: return "theta";
        case AttackKind::scaling: return "s";
        case AttackKind::watermark: return "alpha";
    }
    return "?";
}

inline void validate_attack_spec(const AttackSpec& spec) {
    const double v = spec.value;
    bool ok = false;
    switch (spec.kind) {
        case AttackKind::brightness: ok = v >= -64.0 && v <= 64.0; break;
        case AttackKind::contrast: ok = v >= 0.25 && v <= 4.0; break;
        case AttackKind::gamma: ok = v >= 0.3 && v <= 3.0; break;
        case AttackKind::gaussian3x3: ok = v > 0.0 && v <= 3.0; break;
        case AttackKind::salt_pepper: ok = v > 0.0 && v <= 0.1; break;
        case AttackKind::multiplicative: ok = v > 0.0 && v <= 0.1; break;
        case AttackKind::jpeg: ok = v >= 1.0 && v <= 100.0; break;
        case AttackKind::rotation: ok = v >= -180.0 && v <= 180.0; break;
        case AttackKind::scaling: ok = v >= 0.25 && v <= 4.0; break;
        case AttackKind::watermark: ok = v > 0.0 && v <= 1.0; break;
    }
    if (!ok || !std::isfinite(v))
        throw std::invalid_argument(std::string("attack parameter out of range: ") +
                                    attack_kind_name(spec.kind) + " " +
                                    attack_param_key(spec.kind) + "=" +
                                    detail::format_double(v));
}

inline std::string make_attack_label(AttackKind kind, double value, Corner corner) {
    std::string label = attack_kind_name(kind);
    label += ':';
    if ((kind == AttackKind::brightness || kind == AttackKind::rotation) && value >= 0.0)
        label += '+';
    label += detail::format_double(value);
    if (kind == AttackKind::watermark) {
        label += corner == Corner::BottomRight ? ":BR" : ":TL";
    }
    return label;
}

inline AttackSpec make_attack_spec(AttackKind kind, double value,
                                   Corner corner = Corner::BottomRight) {
    AttackSpec spec{kind, value, corner, make_attack_label(kind, value, corner)};
    validate_attack_spec(spec);
    return spec;
}

namespace detail {

inline std::uint8_t clamp_round(double v) {
    const long r = std::lround(v);
    return static_cast<std::uint8_t>(r < 0 ? 0 : (r > 255 ? 255 : r));
}

inline RasterImage map_samples(const RasterImage& img, double (*f)(double, double), double p) {
    RasterImage out(img.width, img.height, img.channels);
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out.pixels[i] = clamp_round(f(static_cast<double>(img.pixels[i]), p));
    return out;
}

// Standard JPEG luminance quantization table (Annex K), row-major.
inline constexpr int kJpegLumaTable[64] = {
    16, 11, 10, 16, 24,  40,  51,  61,  //
    12, 12, 14, 19, 26,  58,  60,  55,  //
    14, 13, 16, 24, 40,  57,  69,  56,  //
    14, 17, 22, 29, 51,  87,  80,  62,  //
    18, 22, 37, 56, 68,  109, 103, 77,  //
    24, 35, 55, 64, 81,  104, 113, 92,  //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99};

inline std::array<double, 64> jpeg_quant_table(double quality) {
    const double scale = quality < 50.0 ? 5000.0 / quality : 200.0 - 2.0 * quality;
    std::array<double, 64> q{};
    for (int i = 0; i < 64; ++i) {
        double e = std::floor((kJpegLumaTable[i] * scale + 50.0) / 100.0);
        if (e < 1.0) e = 1.0;
        if (e > 255.0) e = 255.0;
        q[i] = e;
    }
    return q;
}

// Block DCT quantization round-trip; reproduces JPEG's pixel-domain loss
// without entropy coding. Each channel is treated with the luminance table.
inline RasterImage jpeg_roundtrip(const RasterImage& img, double quality) {
    const auto q = jpeg_quant_table(quality);
    const int W8 = (img.width + 7) / 8 * 8;
    const int H8 = (img.height + 7) / 8 * 8;

    RasterImage out(img.width, img.height, img.channels);
    FloatPlane block(8, 8);
    for (int c = 0; c < img.channels; ++c) {
        for (int by = 0; by < H8; by += 8) {
            for (int bx = 0; bx < W8; bx += 8) {
                for (int y = 0; y < 8; ++y) {
                    const int sy = std::min(by + y, img.height - 1);
                    for (int x = 0; x < 8; ++x) {
                        const int sx = std::min(bx + x, img.width - 1);
                        block.at(x, y) = img.at(sx, sy, c);
                    }
                }
                FloatPlane coeffs = dct2(block);
                for (int i = 0; i < 64; ++i)
                    coeffs.values[i] = std::round(coeffs.values[i] / q[i]) * q[i];
                const FloatPlane restored = idct2(coeffs);
                for (int y = 0; y < 8 && by + y < img.height; ++y)
                    for (int x = 0; x < 8 && bx + x < img.width; ++x)
                        out.at(bx + x, by + y, c) = clamp_round(restored.at(x, y));
            }
        }
    }
    return out;
}

inline RasterImage rotate_bilinear(const RasterImage& img, double theta_deg) {
    double ct, st;
    if (std::fmod(theta_deg, 90.0) == 0.0) {
        // Exact quarter turns so grid-coincident sampling degenerates to a
        // pixel permutation.
        const int k = ((static_cast<int>(theta_deg) / 90) % 4 + 4) % 4;
        constexpr double cs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        ct = cs[k][0];
        st = cs[k][1];
    } else {
        const double rad = theta_deg * std::numbers::pi / 180.0;
        ct = std::cos(rad);
        st = std::sin(rad);
    }

    const int W = img.width, H = img.height, C = img.channels;
    const double cx = (W - 1) / 2.0, cy = (H - 1) / 2.0;
    RasterImage out(W, H, C);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const double dx = x - cx, dy = y - cy;
            const double sx = cx + ct * dx + st * dy;
            const double sy = cy - st * dx + ct * dy;
            if (sx < 0.0 || sx > W - 1 || sy < 0.0 || sy > H - 1) continue; // black fill
            const int x0 = static_cast<int>(sx), y0 = static_cast<int>(sy);
            const int x1 = x0 < W - 1 ? x0 + 1 : x0;
            const int y1 = y0 < H - 1 ? y0 + 1 : y0;
            const double fx = sx - x0, fy = sy - y0;
            for (int c = 0; c < C; ++c) {
                const double top = (1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
                const double bot = (1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
                out.at(x, y, c) = clamp_round((1.0 - fy) * top + fy * bot);
            }
        }
    }
    return out;
}

} // namespace detail

// Built-in watermark: 32x32 checkerboard of 8x8-pixel checks, top-left check
// white.
inline const RasterImage& watermark_logo() {
    static const RasterImage logo = [] {
        RasterImage l(32, 32, 1);
        for (int y = 0; y < 32; ++y)
            for (int x = 0; x < 32; ++x)
                l.at(x, y) = ((x / 8 + y / 8) % 2 == 0) ? 255 : 0;
        return l;
    }();
    return logo;
}

// Applies one content-preserving operation. Deterministic attacks ignore the
// seed; the noise attacks derive their stream from (seed, dims, label).
inline RasterImage apply_attack(const RasterImage& img, const AttackSpec& spec,
                                std::uint64_t seed) {
    detail::require_valid(img);
    validate_attack_spec(spec);
    const double v = spec.value;

    switch (spec.kind) {
        case AttackKind::brightness:
            return detail::map_samples(img, [](double p, double b) { return p + b; }, v);
        case AttackKind::contrast:
            return detail::map_samples(
                img, [](double p, double c) { return (p - 128.0) * c + 128.0; }, v);
        case AttackKind::gamma:
            return detail::map_samples(
                img, [](double p, double g) { return 255.0 * std::pow(p / 255.0, g); }, v);

        case AttackKind::gaussian3x3: {
            std::array<double, 9> kernel{};
            double sum = 0.0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const double w = std::exp(-(dx * dx + dy * dy) / (2.0 * v * v));
                    kernel[(dy + 1) * 3 + (dx + 1)] = w;
                    sum += w;
                }
            for (double& w : kernel) w /= sum;
            return convolve3x3(img, kernel);
        }

        case AttackKind::salt_pepper: {
            SeededRng rng(derive_seed(seed, spec.label, static_cast<std::uint64_t>(img.width),
                                      static_cast<std::uint64_t>(img.height)));
            RasterImage out = img;
            const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
            for (std::size_t i = 0; i < n; ++i) {
                if (rng.uniform01() >= v) continue;
                const std::uint8_t val = rng.uniform01() < 0.5 ? 0 : 255;
                for (int c = 0; c < img.channels; ++c) out.pixels[i * img.channels + c] = val;
            }
            return out;
        }

        case AttackKind::multiplicative: {
            SeededRng rng(derive_seed(seed, spec.label, static_cast<std::uint64_t>(img.width),
                                      static_cast<std::uint64_t>(img.height)));
            const double sigma = std::sqrt(v);
            RasterImage out(img.width, img.height, img.channels);
            for (std::size_t i = 0; i < img.pixels.size(); ++i) {
                const double n = sigma * rng.normal();
                out.pixels[i] = detail::clamp_round(img.pixels[i] * (1.0 + n));
            }
            return out;
        }

        case AttackKind::jpeg:
            return detail::jpeg_roundtrip(img, v);
        case AttackKind::rotation:
            return detail::rotate_bilinear(img, v);

        case AttackKind::scaling: {
            const int w = static_cast<int>(std::lround(v * img.width));
            const int h = static_cast<int>(std::lround(v * img.height));
            return resize_bilinear(img, w < 1 ? 1 : w, h < 1 ? 1 : h);
        }

        case AttackKind::watermark: {
            const RasterImage& logo = watermark_logo();
            RasterImage out = img;
            const int ox = spec.corner == Corner::BottomRight ? img.width - logo.width : 0;
            const int oy = spec.corner == Corner::BottomRight ? img.height - logo.height : 0;
            for (int ly = 0; ly < logo.height; ++ly) {
                const int ty = oy + ly;
                if (ty < 0 || ty >= img.height) continue;
                for (int lx = 0; lx < logo.width; ++lx) {
                    const int tx = ox + lx;
                    if (tx < 0 || tx >= img.width) continue;
                    const double lv = logo.at(lx, ly);
                    for (int c = 0; c < img.channels; ++c)
                        out.at(tx, ty, c) =
                            detail::clamp_round((1.0 - v) * img.at(tx, ty, c) + v * lv);
                }
            }
            return out;
        }
    }
    throw std::invalid_argument("apply_attack: bad kind");
}

// The 88-spec benchmark grid: ten operation kinds, deterministic order.
inline std::vector<AttackSpec> default_grid() {
    std::vector<AttackSpec> grid;
    grid.reserve(88);
    auto add = [&](AttackKind k, double value, Corner c = Corner::BottomRight) {
        grid.push_back(make_attack_spec(k, value, c));
    };

    for (double b : {5.0, 10.0, 15.0, 20.0}) {
        add(AttackKind::brightness, b);
        add(AttackKind::brightness, -b);
    }
    for (double c : {0.6, 0.7, 0.8, 0.9, 1.1, 1.2, 1.3, 1.4}) add(AttackKind::contrast, c);
    for (double g : {0.6, 0.7, 0.8, 0.9, 1.1, 1.25, 1.5, 1.75}) add(AttackKind::gamma, g);
    for (double s : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}) add(AttackKind::gaussian3x3, s);
    for (double d : {0.001, 0.002, 0.005, 0.008, 0.01, 0.012, 0.015, 0.02})
        add(AttackKind::salt_pepper, d);
    for (double v : {0.001, 0.002, 0.005, 0.008, 0.01, 0.02, 0.05, 0.1})
        add(AttackKind::multiplicative, v);
    for (double q : {30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0}) add(AttackKind::jpeg, q);
    for (double t : {1.0, 2.0, 5.0, 10.0, 15.0, 30.0, 45.0, 90.0}) {
        add(AttackKind::rotation, t);
        add(AttackKind::rotation, -t);
    }
    for (double s : {0.5, 0.75, 0.9, 1.1, 1.25, 1.5, 1.75, 2.0}) add(AttackKind::scaling, s);
    for (double a : {0.3, 0.5, 0.8, 1.0}) {
        add(AttackKind::watermark, a, Corner::BottomRight);
        add(AttackKind::watermark, a, Corner::TopLeft);
    }
    return grid;
}

// Manifest line form: `kind key=value [corner=BR|TL]`.
inline std::string format_attack_spec(const AttackSpec& spec) {
    std::string line = attack_kind_name(spec.kind);
    line += ' ';
    line += attack_param_key(spec.kind);
    line += '=';
    line += detail::format_double(spec.value);
    if (spec.kind == AttackKind::watermark) {
        line += spec.corner == Corner::BottomRight ? " corner=BR" : " corner=TL";
    }
    return line;
}

inline AttackSpec parse_attack_spec(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && line[pos] == ' ') ++pos;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ') ++end;
        if (end > pos) tokens.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    if (tokens.empty()) throw std::invalid_argument("empty attack spec");

    const AttackKind kind = parse_attack_kind(tokens[0]);
    bool have_value = false;
    double value = 0.0;
    Corner corner = Corner::BottomRight;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("bad attack spec token: " + std::string(tokens[i]));
        const auto key = tokens[i].substr(0, eq);
        const auto val = tokens[i].substr(eq + 1);
        if (key == attack_param_key(kind)) {
            const auto res = std::from_chars(val.data(), val.data() + val.size(), value);
            if (res.ec != std::errc() || res.ptr != val.data() + val.size())
                throw std::invalid_argument("bad attack parameter value: " + std::string(val));
            have_value = true;
        } else if (key == "corner" && kind == AttackKind::watermark) {
            if (val == "BR") corner = Corner::BottomRight;
            else if (val == "TL") corner = Corner::TopLeft;
            else throw std::invalid_argument("bad watermark corner: " + std::string(val));
        } else {
            throw std::invalid_argument("unknown attack spec key: " + std::string(key));
        }
    }
    if (!have_value)
        throw std::invalid_argument(std::string("missing attack parameter ") +
                                    attack_param_key(kind));
    return make_attack_spec(kind, value, corner);
}

inline std::vector<AttackSpec> parse_attack_grid(std::string_view text) {
    std::vector<AttackSpec> grid;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (!line.empty() && line.front() != '#') grid.push_back(parse_attack_spec(line));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return grid;
}

} // namespace pihash
