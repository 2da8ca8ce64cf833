// pihash command line: hashing, comparison, attack generation and benchmark
// runs over PGM/PPM images.
//
// Exit codes: 0 success, 2 usage error, 3 I/O failure, 4 unknown algorithm.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pihash/pihash.hpp"

namespace {

std::vector<pihash::Algorithm> parse_algorithm_list(const std::string& csv) {
    std::vector<pihash::Algorithm> algos;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) algos.push_back(pihash::parse_algorithm(item));
    }
    if (algos.empty()) throw std::invalid_argument("empty algorithm list");
    return algos;
}

struct HashArgs {
    std::string algo, in, out;
    bool hex = false;
};

int cmd_hash(const HashArgs& args) {
    pihash::Algorithm algo;
    try {
        algo = pihash::parse_algorithm(args.algo);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    try {
        const pihash::HashVector h = pihash::compute_hash(pihash::load_image(args.in), algo);
        std::string line;
        if (args.hex) {
            if (!h.binary) {
                std::cerr << "error: --hex requires a binary hash algorithm\n";
                return 2;
            }
            line = pihash::hash_to_hex(h);
        } else {
            line = pihash::serialize_hash(h);
        }
        line += '\n';
        if (args.out.empty()) {
            std::cout << line;
        } else {
            pihash::write_text_file(line, args.out);
        }
        return 0;
    } catch (const pihash::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

struct CompareArgs {
    std::string algo, a, b;
    double threshold = -2.0; // sentinel: not given
};

int cmd_compare(const CompareArgs& args) {
    pihash::Algorithm algo;
    try {
        algo = pihash::parse_algorithm(args.algo);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    const bool with_threshold = args.threshold > -2.0;
    double threshold = 0.0;
    if (with_threshold) {
        try {
            threshold = pihash::DecisionThreshold(args.threshold).value;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 2;
        }
    }
    try {
        const auto ha = pihash::compute_hash(pihash::load_image(args.a), algo);
        const auto hb = pihash::compute_hash(pihash::load_image(args.b), algo);
        const double s = pihash::correlation(ha, hb).value;
        std::printf("S=%.4f\n", s);
        if (with_threshold) std::printf("similar=%s\n", s > threshold ? "true" : "false");
        return 0;
    } catch (const pihash::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

struct AttackArgs {
    std::string in, spec, out;
    std::uint64_t seed = 0;
};

int cmd_attack(const AttackArgs& args) {
    pihash::AttackSpec spec;
    try {
        spec = pihash::parse_attack_spec(args.spec);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        const pihash::RasterImage img = pihash::load_image(args.in);
        pihash::save_image(pihash::apply_attack(img, spec, args.seed), args.out);
        return 0;
    } catch (const pihash::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

struct BenchArgs {
    std::string manifest, algos = "phash,ring,block,cslbp", grid, out_csv, out_md, roc_csv;
    int synthetic = 0;
    std::uint64_t seed = 0;
};

int cmd_bench(const BenchArgs& args) {
    std::vector<pihash::Algorithm> algos;
    try {
        algos = parse_algorithm_list(args.algos);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    if (args.manifest.empty() && args.synthetic == 0) {
        std::cerr << "error: one of --manifest or --synthetic is required\n";
        return 2;
    }
    if (!args.manifest.empty() && args.synthetic != 0) {
        std::cerr << "error: --manifest and --synthetic are mutually exclusive\n";
        return 2;
    }
    if (args.manifest.empty() && args.synthetic < 2) {
        std::cerr << "error: --synthetic needs at least 2 images\n";
        return 2;
    }

    try {
        std::vector<std::pair<std::string, std::string>> failures;
        pihash::Corpus corpus;
        if (!args.manifest.empty()) {
            corpus = pihash::load_corpus(pihash::load_manifest(args.manifest), failures);
            for (const auto& [id, err] : failures)
                std::cerr << "warning: skipping " << id << ": " << err << '\n';
            if (corpus.empty()) {
                std::cerr << "error: no readable images in manifest\n";
                return 3;
            }
        } else {
            corpus = pihash::synthetic_corpus(args.synthetic, args.seed);
        }

        std::vector<pihash::AttackSpec> grid;
        if (!args.grid.empty()) {
            std::ifstream in(args.grid);
            if (!in) {
                std::cerr << "error: cannot open grid file: " << args.grid << '\n';
                return 3;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            try {
                grid = pihash::parse_attack_grid(ss.str());
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 2;
            }
        } else {
            grid = pihash::default_grid();
        }

        pihash::BenchReport report = pihash::intra_test(corpus, algos, grid, args.seed);
        report.failures = failures;
        pihash::write_text_file(pihash::render_csv(report), args.out_csv);
        const std::string md = pihash::render_markdown(report);
        if (!args.out_md.empty()) pihash::write_text_file(md, args.out_md);
        std::cout << md;

        if (!args.roc_csv.empty()) {
            const pihash::InterScores inter = pihash::inter_test(corpus, algos);
            std::vector<double> thresholds;
            for (int k = 0; k <= 38; ++k) thresholds.push_back(-0.95 + 0.05 * k);
            std::string csv = "algorithm,threshold,tpr,fpr\n";
            for (const auto& [algo, inter_scores] : inter) {
                std::vector<double> intra_scores;
                for (const auto& r : report.records)
                    if (r.algorithm == algo) intra_scores.push_back(r.s);
                for (const auto& row : pihash::roc(intra_scores, inter_scores, thresholds)) {
                    csv += std::string(pihash::algorithm_name(algo)) + "," +
                           pihash::detail::format_fixed4(row.threshold) + "," +
                           pihash::detail::format_fixed4(row.tpr) + "," +
                           pihash::detail::format_fixed4(row.fpr) + "\n";
                }
            }
            pihash::write_text_file(csv, args.roc_csv);
        }
        return 0;
    } catch (const pihash::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"perceptual image hashing and robustness benchmarking"};
    app.require_subcommand(1);

    HashArgs hash_args;
    CLI::App* hash_cmd = app.add_subcommand("hash", "hash one image");
    hash_cmd->add_option("--algo", hash_args.algo, "phash|ring|block|cslbp")->required();
    hash_cmd->add_option("--in", hash_args.in, "input image (PGM/PPM)")->required();
    hash_cmd->add_option("--out", hash_args.out, "write the hash line here instead of stdout");
    hash_cmd->add_flag("--hex", hash_args.hex, "print binary hashes as big-endian hex");

    CompareArgs compare_args;
    CLI::App* compare_cmd = app.add_subcommand("compare", "correlation score of two images");
    compare_cmd->add_option("--algo", compare_args.algo, "phash|ring|block|cslbp")->required();
    compare_cmd->add_option("--a", compare_args.a, "first image")->required();
    compare_cmd->add_option("--b", compare_args.b, "second image")->required();
    compare_cmd->add_option("--threshold", compare_args.threshold,
                            "decision threshold in (-1,1); adds a similar=true|false line");

    AttackArgs attack_args;
    CLI::App* attack_cmd = app.add_subcommand("attack", "apply one content-preserving operation");
    attack_cmd->add_option("--in", attack_args.in, "input image")->required();
    attack_cmd->add_option("--spec", attack_args.spec, "attack line, e.g. \"gamma gamma=0.8\"")
        ->required();
    attack_cmd->add_option("--seed", attack_args.seed, "seed for the noise attacks");
    attack_cmd->add_option("--out", attack_args.out, "output image path")->required();

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run the intra-test robustness protocol");
    bench_cmd->add_option("--manifest", bench_args.manifest, "dataset manifest (id<TAB>path)");
    bench_cmd->add_option("--synthetic", bench_args.synthetic,
                          "use N generated images instead of a manifest");
    bench_cmd->add_option("--algos", bench_args.algos, "comma-separated algorithm list");
    bench_cmd->add_option("--grid", bench_args.grid, "attack grid file (default: built-in 88)");
    bench_cmd->add_option("--seed", bench_args.seed, "run seed");
    bench_cmd->add_option("--out-csv", bench_args.out_csv, "aggregate csv path")->required();
    bench_cmd->add_option("--out-md", bench_args.out_md, "also write the markdown table here");
    bench_cmd->add_option("--roc", bench_args.roc_csv,
                          "run the inter-test and write a threshold/TPR/FPR csv here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (hash_cmd->parsed()) return cmd_hash(hash_args);
    if (compare_cmd->parsed()) return cmd_compare(compare_args);
    if (attack_cmd->parsed()) return cmd_attack(attack_args);
    if (bench_cmd->parsed()) return cmd_bench(bench_args);
    return 2;
}
