// Acceptance suite: exercises every stated acceptance criterion at its
// stated tolerance and prints one PASS/FAIL line per criterion. The CLI
// binary path must be passed as argv[1] (used by the end-to-end determinism
// criterion).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pihash/pihash.hpp"

using namespace pihash;

namespace {

std::string g_cli_path;

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
};

const Corpus& desk_corpus() {
    static const Corpus corpus = synthetic_corpus(10, 42);
    return corpus;
}

HashVector tagged(std::vector<double> values) {
    Algorithm algo = Algorithm::ring;
    switch (values.size()) {
        case 63: algo = Algorithm::phash; break;
        case 80: algo = Algorithm::block; break;
        case 256: algo = Algorithm::cslbp; break;
        default: break;
    }
    return HashVector{algo, std::move(values), false};
}

// ---- criterion 1: Eq. 1 against a textbook Pearson oracle ----------------

Outcome criterion1() {
    Outcome res;
    SeededRng rng(1001);
    const std::size_t lengths[4] = {32, 63, 80, 256};
    for (int pair = 0; pair < 1000; ++pair) {
        const std::size_t l = lengths[pair % 4];
        std::vector<double> a(l), b(l);
        for (std::size_t i = 0; i < l; ++i) {
            a[i] = rng.uniform01() * 10.0 - 5.0;
            b[i] = rng.uniform01() * 10.0 - 5.0;
        }
        const HashVector ha = tagged(a), hb = tagged(b);
        const double s = correlation(ha, hb).value;

        if (s != correlation(hb, ha).value) {
            res.fail("symmetry violated");
            break;
        }
        if (std::abs(s) > 1.0 + 1e-12) {
            res.fail("|S| exceeded 1 + 1e-12");
            break;
        }
        if (oracles::pearson_stddev(a) > 1e-6 && oracles::pearson_stddev(b) > 1e-6) {
            if (std::abs(s - oracles::pearson(a, b)) > 1e-9) {
                res.fail("mismatch vs Pearson oracle");
                break;
            }
        }
        std::vector<double> affine(l);
        for (std::size_t i = 0; i < l; ++i) affine[i] = 2.5 * a[i] + 7.0;
        if (std::abs(correlation(tagged(affine), hb).value - s) > 1e-6) {
            res.fail("positive-affine invariance violated");
            break;
        }
        for (std::size_t i = 0; i < l; ++i) affine[i] = -1.5 * a[i] + 3.0;
        if (std::abs(correlation(tagged(affine), hb).value + s) > 1e-6) {
            res.fail("negative-affine sign flip violated");
            break;
        }
    }
    return res;
}

// ---- criterion 2: DCT against the naive O(N^4) definition ----------------

Outcome criterion2() {
    Outcome res;
    SeededRng rng(1002);
    auto random_plane = [&rng](int w, int h) {
        FloatPlane p(w, h);
        for (auto& v : p.values) v = rng.uniform01() * 4.0 - 2.0;
        return p;
    };

    for (int n = 1; n <= 16; ++n) {
        const FloatPlane p = random_plane(n, n);
        const FloatPlane fast = dct2(p), naive = oracles::naive_dct2(p);
        for (std::size_t i = 0; i < fast.values.size(); ++i) {
            if (std::abs(fast.values[i] - naive.values[i]) > 1e-9) {
                res.fail("naive oracle mismatch at size " + std::to_string(n));
                break;
            }
        }
        if (!res.ok) return res;
    }

    for (int n : {3, 8, 17, 32, 64}) {
        const FloatPlane p = random_plane(n, n);
        double ein = 0.0, eout = 0.0;
        const FloatPlane d = dct2(p);
        for (double v : p.values) ein += v * v;
        for (double v : d.values) eout += v * v;
        if (std::abs(ein - eout) / ein > 1e-9) {
            res.fail("Parseval violated at size " + std::to_string(n));
            return res;
        }
        const FloatPlane back = idct2(d);
        for (std::size_t i = 0; i < back.values.size(); ++i) {
            if (std::abs(back.values[i] - p.values[i]) > 1e-9) {
                res.fail("idct2(dct2(x)) != x at size " + std::to_string(n));
                return res;
            }
        }
    }
    return res;
}

// ---- criterion 3: ring-hash rotation invariance ---------------------------

Outcome criterion3() {
    Outcome res;
    for (const auto& [id, img] : desk_corpus()) {
        const HashVector base = ring_hash(img);
        const HashVector rotated = ring_hash(rot90(img));
        const double s = correlation(base, rotated).value;
        if (s < 0.999) res.fail(id + ": S(rot90) = " + std::to_string(s));
        for (std::size_t i = 0; i < base.values.size(); ++i) {
            if (std::abs(base.values[i] - rotated.values[i]) > 1e-9) {
                res.fail(id + ": component " + std::to_string(i) + " differs by " +
                         std::to_string(std::abs(base.values[i] - rotated.values[i])));
                break;
            }
        }
        if (!res.ok) break;
    }
    return res;
}

// ---- criterion 4: directional reproduction of the mean-score table --------

struct MeanExtractor {
    const BenchReport& report;

    double kind_mean(Algorithm algo, AttackKind kind) const {
        double sum = 0.0;
        std::size_t n = 0;
        for (const BenchRecord& r : report.records) {
            if (r.algorithm == algo && r.attack_kind == kind) {
                sum += r.s;
                ++n;
            }
        }
        return sum / static_cast<double>(n);
    }

    double jpeg_mean_q_at_least(Algorithm algo, int q_min) const {
        double sum = 0.0;
        std::size_t n = 0;
        for (const BenchRecord& r : report.records) {
            if (r.algorithm != algo || r.attack_kind != AttackKind::jpeg) continue;
            const int q = std::atoi(r.attack_label.c_str() + 5); // label "jpeg:NN"
            if (q >= q_min) {
                sum += r.s;
                ++n;
            }
        }
        return sum / static_cast<double>(n);
    }

    double kinds_mean(Algorithm algo, std::initializer_list<AttackKind> kinds) const {
        double sum = 0.0;
        std::size_t n = 0;
        for (const BenchRecord& r : report.records) {
            if (r.algorithm != algo) continue;
            for (AttackKind k : kinds) {
                if (r.attack_kind == k) {
                    sum += r.s;
                    ++n;
                    break;
                }
            }
        }
        return sum / static_cast<double>(n);
    }
};

const BenchReport& desk_report() {
    static const BenchReport report =
        intra_test(desk_corpus(),
                   {Algorithm::phash, Algorithm::ring, Algorithm::block, Algorithm::cslbp},
                   default_grid(), 42);
    return report;
}

Outcome criterion4() {
    Outcome res;
    const BenchReport& report = desk_report();
    const MeanExtractor m{report};

    const std::size_t expected = desk_corpus().size() * 88 * 4;
    if (report.records.size() != expected) res.fail("unexpected record count");

    char buf[160];
    const double phash_gamma = m.kind_mean(Algorithm::phash, AttackKind::gamma);
    const double phash_gauss = m.kind_mean(Algorithm::phash, AttackKind::gaussian3x3);
    const double phash_jpeg50 = m.jpeg_mean_q_at_least(Algorithm::phash, 50);
    if (phash_gamma < 0.95 || phash_gauss < 0.95 || phash_jpeg50 < 0.95) {
        std::snprintf(buf, sizeof buf, "(a) phash gamma=%.4f gaussian=%.4f jpeg(q>=50)=%.4f",
                      phash_gamma, phash_gauss, phash_jpeg50);
        res.fail(buf);
    }

    const double phash_rot = m.kind_mean(Algorithm::phash, AttackKind::rotation);
    if (phash_rot > 0.6) {
        std::snprintf(buf, sizeof buf, "(b) phash rotation mean %.4f > 0.6", phash_rot);
        res.fail(buf);
    }

    const double ring_rot = m.kind_mean(Algorithm::ring, AttackKind::rotation);
    if (ring_rot - phash_rot < 0.3) {
        std::snprintf(buf, sizeof buf, "(c) ring rotation %.4f - phash rotation %.4f < 0.3",
                      ring_rot, phash_rot);
        res.fail(buf);
    }

    for (Algorithm a : kAllAlgorithms) {
        const double tone = m.kinds_mean(
            a, {AttackKind::brightness, AttackKind::contrast, AttackKind::gamma});
        if (tone < 0.85) {
            std::snprintf(buf, sizeof buf, "(d) %s brightness/contrast/gamma mean %.4f < 0.85",
                          algorithm_name(a), tone);
            res.fail(buf);
        }
    }
    return res;
}

// ---- criterion 5: noise-attack statistics ---------------------------------

Outcome criterion5() {
    Outcome res;
    const RasterImage flat(512, 512, 1, 128);
    const double N = 512.0 * 512.0;

    for (double d : {0.005, 0.01}) {
        const AttackSpec spec = make_attack_spec(AttackKind::salt_pepper, d);
        const double sigma = std::sqrt(N * d * (1.0 - d));
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const RasterImage out = apply_attack(flat, spec, seed);
            std::size_t replaced = 0;
            for (std::uint8_t p : out.pixels)
                if (p != 128) ++replaced;
            if (std::abs(static_cast<double>(replaced) - N * d) > 3.0 * sigma) {
                res.fail("salt_pepper d=" + std::to_string(d) + " seed " +
                         std::to_string(seed) + ": count " + std::to_string(replaced));
                return res;
            }
        }
    }

    const double v = 0.01;
    const AttackSpec mult = make_attack_spec(AttackKind::multiplicative, v);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const RasterImage out = apply_attack(flat, mult, seed);
        double sum = 0.0;
        for (std::uint8_t p : out.pixels) sum += p / 128.0 - 1.0;
        const double mean = sum / N;
        if (std::abs(mean) > 3.0 * std::sqrt(v / N)) {
            res.fail("multiplicative seed " + std::to_string(seed) + ": mean " +
                     std::to_string(mean));
            return res;
        }
    }
    return res;
}

// ---- criterion 6: jpeg attack sanity ---------------------------------------

Outcome criterion6() {
    Outcome res;
    for (const auto& [id, img] : desk_corpus()) {
        const RasterImage q100 = apply_attack(img, make_attack_spec(AttackKind::jpeg, 100.0), 0);
        const double p100 = psnr(img, q100);
        if (p100 < 45.0) {
            res.fail(id + ": PSNR(q=100) = " + std::to_string(p100));
            break;
        }
        double last = p100;
        for (double q : {80.0, 50.0, 30.0}) {
            const RasterImage out = apply_attack(img, make_attack_spec(AttackKind::jpeg, q), 0);
            const double p = psnr(img, out);
            if (p > last) {
                res.fail(id + ": PSNR rose when q dropped to " + std::to_string(q));
                break;
            }
            last = p;
        }
        if (!res.ok) break;
    }
    return res;
}

// ---- criterion 7: discrimination -------------------------------------------

Outcome criterion7() {
    Outcome res;
    const BenchReport& report = desk_report();
    const InterScores inter = inter_test(desk_corpus(), {Algorithm::phash, Algorithm::ring});

    char buf[128];
    for (Algorithm a : {Algorithm::phash, Algorithm::ring}) {
        double intra_sum = 0.0;
        std::size_t intra_n = 0;
        for (const BenchRecord& r : report.records) {
            if (r.algorithm == a && r.attack_kind != AttackKind::rotation) {
                intra_sum += r.s;
                ++intra_n;
            }
        }
        const double intra_mean = intra_sum / static_cast<double>(intra_n);

        double inter_sum = 0.0;
        for (double s : inter.at(a)) inter_sum += s;
        const double inter_mean = inter_sum / static_cast<double>(inter.at(a).size());

        if (intra_mean - inter_mean < 0.3) {
            std::snprintf(buf, sizeof buf, "%s: intra %.4f - inter %.4f < 0.3",
                          algorithm_name(a), intra_mean, inter_mean);
            res.fail(buf);
        }

        std::vector<double> intra_scores;
        for (const BenchRecord& r : report.records)
            if (r.algorithm == a) intra_scores.push_back(r.s);
        std::vector<double> thresholds;
        for (int k = 0; k <= 38; ++k) thresholds.push_back(-0.95 + 0.05 * k);
        const auto rows = roc(intra_scores, inter.at(a), thresholds);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].tpr > rows[i - 1].tpr || rows[i].fpr > rows[i - 1].fpr) {
                res.fail(std::string(algorithm_name(a)) + ": roc rates not monotone");
                break;
            }
        }
    }
    return res;
}

// ---- criterion 8: end-to-end determinism ------------------------------------

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<unreadable>";
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Outcome criterion8() {
    Outcome res;
    const auto dir = std::filesystem::temp_directory_path() / "pihash_acceptance";
    std::filesystem::create_directories(dir);

    const std::string base = "\"" + g_cli_path + "\" bench --synthetic 10 --seed 42";
    const auto csv1 = dir / "run1.csv", csv2 = dir / "run2.csv";
    const auto md1 = dir / "run1.md", md2 = dir / "run2.md";

    const std::string cmd1 = base + " --out-csv " + csv1.string() + " --out-md " + md1.string() +
                             " > /dev/null 2>&1";
    const std::string cmd2 = base + " --out-csv " + csv2.string() + " --out-md " + md2.string() +
                             " > /dev/null 2>&1";
    if (std::system(cmd1.c_str()) != 0 || std::system(cmd2.c_str()) != 0) {
        res.fail("bench invocation failed");
        return res;
    }
    if (slurp(csv1) != slurp(csv2)) res.fail("csv outputs differ between runs");
    if (slurp(md1) != slurp(md2)) res.fail("markdown outputs differ between runs");
    if (slurp(csv1).empty()) res.fail("csv output empty");
    return res;
}

struct Criterion {
    int number;
    const char* name;
    double time_limit_seconds; // 0 = no stated limit
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-pihash-cli>\n", argv[0]);
        return 2;
    }
    g_cli_path = argv[1];

    const std::vector<Criterion> criteria = {
        {1, "correlation matches the Pearson oracle", 1.0, criterion1},
        {2, "dct2/idct2 match the naive DCT-II definition", 5.0, criterion2},
        {3, "ring hash is rot90 invariant", 10.0, criterion3},
        {4, "directional mean-score table reproduction", 120.0, criterion4},
        {5, "noise attack statistics", 0.0, criterion5},
        {6, "jpeg attack sanity", 0.0, criterion6},
        {7, "intra/inter discrimination", 0.0, criterion7},
        {8, "end-to-end bench determinism", 0.0, criterion8},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome.fail(std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit_seconds > 0.0 && seconds > c.time_limit_seconds) {
            outcome.fail("runtime " + std::to_string(seconds) + "s exceeds " +
                         std::to_string(c.time_limit_seconds) + "s");
        }
        if (!outcome.ok) ++failures;
        std::printf("%s criterion %d: %s [%.2fs]%s%s\n", outcome.ok ? "PASS" : "FAIL", c.number,
                    c.name, seconds, outcome.detail.empty() ? "" : " -- ",
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    else std::printf("all %zu criteria passed\n", criteria.size());
    return failures == 0 ? 0 : 1;
}
