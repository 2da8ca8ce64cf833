#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pihash/attacks.hpp"
#include "pihash/hashes.hpp"
#include "pihash/image.hpp"
#include "pihash/pnm.hpp"
#include "pihash/rng.hpp"
#include "pihash/similarity.hpp"

namespace pihash {

struct ManifestEntry {
    std::string id;
    std::string path;
};

// Text manifest, one `id<TAB>path` per line; relative paths resolve against
// the manifest's directory.
struct DatasetManifest {
    std::string root;
    std::vector<ManifestEntry> entries;
};

inline DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    DatasetManifest manifest;
    manifest.root = std::filesystem::path(path).parent_path().string();
    std::set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw IoError("manifest line missing tab separator: " + line);
        ManifestEntry e{line.substr(0, tab), line.substr(tab + 1)};
        if (e.id.empty() || e.path.empty())
            throw IoError("manifest line with empty field: " + line);
        if (!seen.insert(e.id).second) throw IoError("duplicate manifest id: " + e.id);
        manifest.entries.push_back(std::move(e));
    }
    return manifest;
}

inline std::string resolve_manifest_path(const DatasetManifest& manifest,
                                         const ManifestEntry& entry) {
    std::filesystem::path p(entry.path);
    if (p.is_absolute() || manifest.root.empty()) return entry.path;
    return (std::filesystem::path(manifest.root) / p).string();
}

using Corpus = std::vector<std::pair<std::string, RasterImage>>;

struct BenchRecord {
    std::string image_id;
    std::string attack_label;
    AttackKind attack_kind;
    Algorithm algorithm;
    double s;
};

struct BenchAggregate {
    AttackKind kind;
    Algorithm algorithm;
    double mean_s;
    double min_s;
    double std_s;
    std::size_t n;
};

struct BenchReport {
    std::vector<BenchRecord> records;
    std::vector<BenchAggregate> aggregates; // sorted by (kind name, algorithm name)
    std::uint64_t seed = 0;
    std::string grid_description;
    std::vector<std::pair<std::string, std::string>> failures; // (image id, error)
};

namespace detail {

inline std::vector<Algorithm> canonical_algorithms(std::vector<Algorithm> algos) {
    std::sort(algos.begin(), algos.end(), [](Algorithm a, Algorithm b) {
        return std::string_view(algorithm_name(a)) < algorithm_name(b);
    });
    algos.erase(std::unique(algos.begin(), algos.end()), algos.end());
    return algos;
}

inline std::vector<BenchAggregate> aggregate_records(const std::vector<BenchRecord>& records) {
    std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
    std::map<std::pair<std::string, std::string>, std::pair<AttackKind, Algorithm>> keys;
    for (const BenchRecord& r : records) {
        const auto key = std::make_pair(std::string(attack_kind_name(r.attack_kind)),
                                        std::string(algorithm_name(r.algorithm)));
        groups[key].push_back(r.s);
        keys.emplace(key, std::make_pair(r.attack_kind, r.algorithm));
    }
    std::vector<BenchAggregate> aggregates;
    aggregates.reserve(groups.size());
    for (const auto& [key, scores] : groups) {
        BenchAggregate a{};
        a.kind = keys.at(key).first;
        a.algorithm = keys.at(key).second;
        a.n = scores.size();
        double sum = 0.0, mn = scores.front();
        for (double s : scores) {
            sum += s;
            mn = std::min(mn, s);
        }
        a.mean_s = sum / static_cast<double>(a.n);
        a.min_s = mn;
        double sq = 0.0;
        for (double s : scores) sq += (s - a.mean_s) * (s - a.mean_s);
        a.std_s = std::sqrt(sq / static_cast<double>(a.n));
        aggregates.push_back(a);
    }
    return aggregates; // map iteration is already (kind, algorithm)-sorted
}

// Per-record stream: hash of (run seed, image id, attack label), so adding
// images never shifts another image's noise realization.
inline std::uint64_t record_seed(std::uint64_t run_seed, const std::string& image_id,
                                 const std::string& label) {
    return derive_seed(run_seed, label, fnv1a64(image_id));
}

} // namespace detail

// Robustness protocol: every original is compared against each of its
// attacked versions, per algorithm.
inline BenchReport intra_test(const Corpus& corpus, const std::vector<Algorithm>& algorithms,
                              const std::vector<AttackSpec>& grid, std::uint64_t seed) {
    detail::require(!corpus.empty(), "intra_test: empty corpus");
    detail::require(!grid.empty(), "intra_test: empty grid");
    detail::require(!algorithms.empty(), "intra_test: no algorithms");
    const std::vector<Algorithm> algos = detail::canonical_algorithms(algorithms);

    BenchReport report;
    report.seed = seed;
    report.grid_description =
        std::to_string(grid.size()) + " attack specs, seed " + std::to_string(seed);
    report.records.reserve(corpus.size() * grid.size() * algos.size());

    for (const auto& [id, image] : corpus) {
        std::map<Algorithm, HashVector> original;
        for (Algorithm a : algos) original.emplace(a, compute_hash(image, a));
        for (const AttackSpec& spec : grid) {
            const RasterImage attacked =
                apply_attack(image, spec, detail::record_seed(seed, id, spec.label));
            for (Algorithm a : algos) {
                const double s = correlation(original.at(a), compute_hash(attacked, a)).value;
                report.records.push_back({id, spec.label, spec.kind, a, s});
            }
        }
    }
    report.aggregates = detail::aggregate_records(report.records);
    return report;
}

inline Corpus load_corpus(const DatasetManifest& manifest,
                          std::vector<std::pair<std::string, std::string>>& failures) {
    Corpus corpus;
    for (const ManifestEntry& e : manifest.entries) {
        try {
            corpus.emplace_back(e.id, load_image(resolve_manifest_path(manifest, e)));
        } catch (const std::exception& ex) {
            failures.emplace_back(e.id, ex.what());
        }
    }
    return corpus;
}

inline BenchReport intra_test(const DatasetManifest& manifest,
                              const std::vector<Algorithm>& algorithms,
                              const std::vector<AttackSpec>& grid, std::uint64_t seed) {
    std::vector<std::pair<std::string, std::string>> failures;
    const Corpus corpus = load_corpus(manifest, failures);
    detail::require(!corpus.empty(), "intra_test: no readable images in manifest");
    BenchReport report = intra_test(corpus, algorithms, grid, seed);
    report.failures = std::move(failures);
    return report;
}

// Discrimination counterpart: scores for all unordered pairs of distinct
// originals, per algorithm.
using InterScores = std::map<Algorithm, std::vector<double>>;

inline InterScores inter_test(const Corpus& corpus, const std::vector<Algorithm>& algorithms) {
    detail::require(corpus.size() >= 2, "inter_test: need at least 2 images");
    detail::require(!algorithms.empty(), "inter_test: no algorithms");
    const std::vector<Algorithm> algos = detail::canonical_algorithms(algorithms);

    std::vector<std::map<Algorithm, HashVector>> hashes(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (Algorithm a : algos) hashes[i].emplace(a, compute_hash(corpus[i].second, a));

    InterScores scores;
    for (Algorithm a : algos) scores[a] = {};
    for (std::size_t i = 0; i < corpus.size(); ++i)
        for (std::size_t j = i + 1; j < corpus.size(); ++j)
            for (Algorithm a : algos)
                scores[a].push_back(correlation(hashes[i].at(a), hashes[j].at(a)).value);
    return scores;
}

struct RocRow {
    double threshold;
    double tpr; // fraction of intra scores above threshold
    double fpr; // fraction of inter scores above threshold
};

inline std::vector<RocRow> roc(const std::vector<double>& intra_scores,
                               const std::vector<double>& inter_scores,
                               const std::vector<double>& thresholds) {
    detail::require(!intra_scores.empty() && !inter_scores.empty(), "roc: empty score set");
    detail::require(!thresholds.empty(), "roc: empty thresholds");
    for (std::size_t i = 1; i < thresholds.size(); ++i)
        detail::require(thresholds[i] > thresholds[i - 1], "roc: thresholds must increase");

    std::vector<RocRow> rows;
    rows.reserve(thresholds.size());
    for (double t : thresholds) {
        const auto above = [t](const std::vector<double>& v) {
            std::size_t n = 0;
            for (double s : v)
                if (s > t) ++n;
            return static_cast<double>(n) / static_cast<double>(v.size());
        };
        rows.push_back({t, above(intra_scores), above(inter_scores)});
    }
    return rows;
}

namespace detail {

inline std::string format_fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

} // namespace detail

// csv columns: operation,algorithm,mean_s,min_s,std_s,n
inline std::string render_csv(const BenchReport& report) {
    std::string out = "operation,algorithm,mean_s,min_s,std_s,n\n";
    for (const BenchAggregate& a : report.aggregates) {
        out += attack_kind_name(a.kind);
        out += ',';
        out += algorithm_name(a.algorithm);
        out += ',';
        out += detail::format_fixed4(a.mean_s);
        out += ',';
        out += detail::format_fixed4(a.min_s);
        out += ',';
        out += detail::format_fixed4(a.std_s);
        out += ',';
        out += std::to_string(a.n);
        out += '\n';
    }
    return out;
}

// Markdown table of mean scores: operations as rows, algorithms as columns.
inline std::string render_markdown(const BenchReport& report) {
    std::vector<std::string> algos, kinds;
    std::map<std::pair<std::string, std::string>, double> means;
    for (const BenchAggregate& a : report.aggregates) {
        const std::string an = algorithm_name(a.algorithm);
        const std::string kn = attack_kind_name(a.kind);
        if (std::find(algos.begin(), algos.end(), an) == algos.end()) algos.push_back(an);
        if (std::find(kinds.begin(), kinds.end(), kn) == kinds.end()) kinds.push_back(kn);
        means[{kn, an}] = a.mean_s;
    }
    std::sort(algos.begin(), algos.end());
    std::sort(kinds.begin(), kinds.end());

    std::string out = "| operation |";
    for (const auto& a : algos) out += " " + a + " |";
    out += "\n|---|";
    for (std::size_t i = 0; i < algos.size(); ++i) out += "---|";
    out += '\n';
    for (const auto& k : kinds) {
        out += "| " + k + " |";
        for (const auto& a : algos) {
            const auto it = means.find({k, a});
            out += it == means.end() ? " - |" : " " + detail::format_fixed4(it->second) + " |";
        }
        out += '\n';
    }
    return out;
}

inline void write_text_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

inline void emit_report(const BenchReport& report, std::string_view format,
                        const std::string& path) {
    if (format == "csv") write_text_file(render_csv(report), path);
    else if (format == "markdown") write_text_file(render_markdown(report), path);
    else throw std::invalid_argument("emit_report: format must be csv or markdown");
}

// Hermetic stand-in for an external dataset: gradients, checkerboards,
// Gaussian blobs and smooth value noise, all with clipping headroom.
inline Corpus synthetic_corpus(int count, std::uint64_t seed) {
    detail::require(count >= 1, "synthetic_corpus: count must be >= 1");
    constexpr int kSizes[4][2] = {{256, 256}, {320, 256}, {256, 320}, {384, 384}};

    Corpus corpus;
    corpus.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        SeededRng rng(derive_seed(seed, "synthetic", static_cast<std::uint64_t>(i)));
        const int W = kSizes[i % 4][0], H = kSizes[i % 4][1];
        RasterImage img(W, H, 3);

        switch (i % 4) {
            case 0: { // linear gradient, random direction and endpoint colors
                const double angle = rng.uniform01() * 2.0 * std::numbers::pi;
                const double dx = std::cos(angle), dy = std::sin(angle);
                double c0[3], c1[3];
                for (int c = 0; c < 3; ++c) {
                    c0[c] = 20.0 + rng.uniform01() * 215.0;
                    c1[c] = 20.0 + rng.uniform01() * 215.0;
                }
                const double span = std::abs(dx) * (W - 1) + std::abs(dy) * (H - 1);
                for (int y = 0; y < H; ++y)
                    for (int x = 0; x < W; ++x) {
                        double t = (dx * x + dy * y + (dx < 0 ? -dx * (W - 1) : 0.0) +
                                    (dy < 0 ? -dy * (H - 1) : 0.0)) /
                                   (span > 0 ? span : 1.0);
                        for (int c = 0; c < 3; ++c)
                            img.at(x, y, c) = detail::clamp_round(c0[c] + t * (c1[c] - c0[c]));
                    }
                break;
            }
            case 1: { // checkerboard
                const int check = 24 + 8 * static_cast<int>(rng.uniform01() * 3.0);
                std::uint8_t ca[3], cb[3];
                for (int c = 0; c < 3; ++c) {
                    ca[c] = static_cast<std::uint8_t>(30 + rng.uniform01() * 80.0);
                    cb[c] = static_cast<std::uint8_t>(140 + rng.uniform01() * 80.0);
                }
                for (int y = 0; y < H; ++y)
                    for (int x = 0; x < W; ++x) {
                        const bool odd = ((x / check) + (y / check)) % 2 != 0;
                        for (int c = 0; c < 3; ++c) img.at(x, y, c) = odd ? ca[c] : cb[c];
                    }
                break;
            }
            case 2: { // Gaussian blobs on a dark background
                const int blobs = 4 + static_cast<int>(rng.uniform01() * 3.0);
                const double bg = 20.0 + rng.uniform01() * 40.0;
                std::vector<std::array<double, 6>> params; // cx, cy, sigma, amp_r, amp_g, amp_b
                for (int b = 0; b < blobs; ++b)
                    params.push_back({rng.uniform01() * W, rng.uniform01() * H,
                                      W / 12.0 + rng.uniform01() * W / 6.0,
                                      40.0 + rng.uniform01() * 120.0,
                                      40.0 + rng.uniform01() * 120.0,
                                      40.0 + rng.uniform01() * 120.0});
                for (int y = 0; y < H; ++y)
                    for (int x = 0; x < W; ++x) {
                        double acc[3] = {bg, bg, bg};
                        for (const auto& p : params) {
                            const double d2 = (x - p[0]) * (x - p[0]) + (y - p[1]) * (y - p[1]);
                            const double g = std::exp(-d2 / (2.0 * p[2] * p[2]));
                            for (int c = 0; c < 3; ++c) acc[c] += p[3 + c] * g;
                        }
                        for (int c = 0; c < 3; ++c) {
                            const double v = acc[c] < 15.0 ? 15.0 : (acc[c] > 240.0 ? 240.0 : acc[c]);
                            img.at(x, y, c) = detail::clamp_round(v);
                        }
                    }
                break;
            }
            default: { // two-octave value noise
                constexpr int G1 = 5, G2 = 9;
                double grid1[3][G1 * G1], grid2[3][G2 * G2];
                for (int c = 0; c < 3; ++c) {
                    for (int g = 0; g < G1 * G1; ++g) grid1[c][g] = rng.uniform01();
                    for (int g = 0; g < G2 * G2; ++g) grid2[c][g] = rng.uniform01();
                }
                auto sample = [](const double* grid, int side, double u, double v) {
                    const double gx = u * (side - 1), gy = v * (side - 1);
                    const int x0 = static_cast<int>(gx), y0 = static_cast<int>(gy);
                    const int x1 = x0 < side - 1 ? x0 + 1 : x0;
                    const int y1 = y0 < side - 1 ? y0 + 1 : y0;
                    const double fx = gx - x0, fy = gy - y0;
                    const double top = (1 - fx) * grid[y0 * side + x0] + fx * grid[y0 * side + x1];
                    const double bot = (1 - fx) * grid[y1 * side + x0] + fx * grid[y1 * side + x1];
                    return (1 - fy) * top + fy * bot;
                };
                for (int y = 0; y < H; ++y)
                    for (int x = 0; x < W; ++x) {
                        const double u = x / static_cast<double>(W - 1);
                        const double v = y / static_cast<double>(H - 1);
                        for (int c = 0; c < 3; ++c) {
                            const double n = 0.65 * sample(grid1[c], G1, u, v) +
                                             0.35 * sample(grid2[c], G2, u, v);
                            img.at(x, y, c) = detail::clamp_round(25.0 + n * 205.0);
                        }
                    }
                break;
            }
        }

        char id[32];
        std::snprintf(id, sizeof(id), "synthetic_%02d", i);
        corpus.emplace_back(id, std::move(img));
    }
    return corpus;
}

} // namespace pihash
