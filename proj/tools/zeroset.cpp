// Command-line front end: encloses the zero set of polynomial systems inside
// a box domain, and runs the DFT benchmark built on the same evaluation
// engine.
//
// Exit codes: 0 success, 2 polynomial file parse error, 3 configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeroset/dft.hpp"
#include "zeroset/io.hpp"
#include "zeroset/subdivide.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;

struct ParseFailure {
    std::string message;
};

struct ConfigFailure {
    std::string message;
};

zeroset::SparsePoly<double> load_poly(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigFailure{"cannot open '" + path + "'"};
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return zeroset::parse_poly(buf.str());
    } catch (const zeroset::SyntaxError& e) {
        throw ParseFailure{path + ":" + std::to_string(e.line()) + ": " + e.what()};
    } catch (const zeroset::InputError& e) {
        throw ParseFailure{path + ": " + e.what()};
    }
}

struct SolveConfig {
    std::vector<std::string> equation_files;
    std::vector<std::string> inequality_files;
    std::vector<double> domain_pair;
    std::vector<double> domain_axis; // flattened (axis, lo, hi) triplets
    double min_size = 0.03125;
    int max_depth = 16;
    int taylor_order = 2;
    std::string scheme = "interval";
    int workers = 1;
    std::string output;
    std::string format = "boxes";
    bool count_ops = false;
};

int run_solve(const SolveConfig& cfg) {
    if (cfg.equation_files.empty() && cfg.inequality_files.empty())
        throw ConfigFailure{"need at least one equation or inequality file"};

    std::vector<zeroset::SparsePoly<double>> eqs, ineqs;
    for (const auto& path : cfg.equation_files) eqs.push_back(load_poly(path));
    for (const auto& path : cfg.inequality_files) ineqs.push_back(load_poly(path));

    const int k = !eqs.empty() ? eqs.front().vars() : ineqs.front().vars();
    for (const auto& F : eqs)
        if (F.vars() != k) throw ParseFailure{"equations disagree on the number of variables"};
    for (const auto& g : ineqs)
        if (g.vars() != k) throw ParseFailure{"inequalities disagree on the number of variables"};

    zeroset::Box domain;
    double lo = -2.0, hi = 2.0;
    if (!cfg.domain_pair.empty()) {
        lo = cfg.domain_pair[0];
        hi = cfg.domain_pair[1];
    }
    if (!(lo < hi)) throw ConfigFailure{"domain bounds must satisfy lo < hi"};
    for (int i = 0; i < k; ++i) domain.emplace_back(lo, hi);
    for (std::size_t t = 0; t + 3 <= cfg.domain_axis.size(); t += 3) {
        int axis = static_cast<int>(cfg.domain_axis[t]);
        if (axis < 1 || axis > k) throw ConfigFailure{"--domain-axis index out of range"};
        double alo = cfg.domain_axis[t + 1], ahi = cfg.domain_axis[t + 2];
        if (!(alo < ahi)) throw ConfigFailure{"--domain-axis bounds must satisfy lo < hi"};
        domain[static_cast<std::size_t>(axis) - 1] = zeroset::Interval(alo, ahi);
    }

    zeroset::SolveOptions opt;
    opt.min_size = cfg.min_size;
    opt.max_depth = cfg.max_depth;
    opt.taylor_order = cfg.taylor_order;
    opt.workers = cfg.workers;
    if (cfg.scheme == "interval")
        opt.scheme = zeroset::Scheme::IntervalEval;
    else if (cfg.scheme == "taylor")
        opt.scheme = zeroset::Scheme::Taylor;
    else
        throw ConfigFailure{"unknown scheme '" + cfg.scheme + "'"};
    if (opt.workers < 1) throw ConfigFailure{"--workers must be >= 1"};

    zeroset::Enclosure enc;
    try {
        enc = zeroset::subdivide_enclose(eqs, ineqs, domain, opt);
    } catch (const zeroset::InputError& e) {
        throw ConfigFailure{e.what()};
    } catch (const std::invalid_argument& e) {
        throw ConfigFailure{e.what()};
    }

    for (const auto& s : enc.stats) {
        std::cerr << "level " << s.level << ": boxes " << s.boxes << ", excluded " << s.excluded
                  << ", included " << s.included << ", undetermined " << s.undetermined << ", bisected "
                  << s.bisected << ", width " << s.box_width;
        if (cfg.count_ops) std::cerr << ", ops " << s.ops;
        std::cerr << "\n";
    }
    std::cerr << "boxes: " << enc.included.size() << " included, " << enc.undetermined.size()
              << " undetermined\n";
    if (cfg.count_ops) {
        auto r = op_count_report(enc.ops);
        std::cerr << "ops: adds " << r.adds << ", muls " << r.muls << ", pows " << r.pows << ", total "
                  << r.total << "\n";
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw ConfigFailure{"cannot write '" + cfg.output + "'"};
        os = &file;
    }
    try {
        if (cfg.format == "boxes")
            zeroset::write_boxes_text(*os, enc);
        else if (cfg.format == "json")
            zeroset::write_boxes_json(*os, enc);
        else if (cfg.format == "obj")
            zeroset::write_boxes_obj(*os, enc);
        else
            throw ConfigFailure{"unknown format '" + cfg.format + "'"};
    } catch (const zeroset::DimensionUnsupportedError& e) {
        throw ConfigFailure{e.what()};
    }
    return 0;
}

int run_dft(std::size_t size, std::uint64_t seed, int workers) {
    if (size < 2 || (size & (size - 1)) != 0)
        throw ConfigFailure{"--size must be a power of two >= 2"};

    auto random_input = [&](std::size_t n, std::uint64_t s) {
        std::mt19937_64 rng(s);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        std::vector<zeroset::Complex> u(n);
        for (auto& c : u) c = zeroset::Complex(d(rng), d(rng));
        return u;
    };

    std::cout << "size      ops   ops/(n log2 n)\n";
    for (std::size_t n = 8; n <= size; n *= 2) {
        auto u = random_input(n, seed);
        zeroset::OpCounter ops;
        auto v = zeroset::dft_csf(u, ops, workers);
        double quasi = static_cast<double>(n) * std::log2(static_cast<double>(n));
        std::printf("%6zu %8llu   %.3f\n", n, static_cast<unsigned long long>(ops.total()),
                    static_cast<double>(ops.total()) / quasi);
    }

    auto u = random_input(size, seed);
    zeroset::OpCounter ops;
    auto v = zeroset::dft_csf(u, ops, workers);
    if (size <= 8192) {
        auto ref = zeroset::dft_naive(u);
        double norm = 0.0, dev = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            norm = std::max(norm, std::abs(ref[i]));
            dev = std::max(dev, std::abs(v[i] - ref[i]));
        }
        std::printf("max |csf - naive| at size %zu: %.3e (relative %.3e)\n", size, dev,
                    norm > 0 ? dev / norm : 0.0);
    } else {
        std::printf("naive comparison skipped for size %zu (quadratic cost)\n", size);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"encloses the zero set of polynomial systems by subdivision with amortized "
                 "sparse-grid evaluation"};
    app.require_subcommand(1);

    SolveConfig cfg;
    auto* solve = app.add_subcommand("solve", "enclose the zero set of a polynomial system");
    solve->add_option("files", cfg.equation_files, "equation files (one polynomial per file, read as = 0)");
    solve->add_option("--le", cfg.inequality_files, "inequality file (polynomial g, constraint g <= 0)");
    solve->add_option("--domain", cfg.domain_pair, "uniform domain [lo hi] for every axis (default -2 2)")
        ->expected(2);
    solve->add_option("--domain-axis", cfg.domain_axis, "per-axis domain: <axis lo hi>, 1-based axis")
        ->type_size(3);
    solve->add_option("--min-size", cfg.min_size, "stop width: inclusion/undetermined below this box width");
    solve->add_option("--max-depth", cfg.max_depth, "maximum subdivision level")->check(CLI::Range(0, 28));
    solve->add_option("--taylor-order", cfg.taylor_order, "Taylor form order (1..3)")->check(CLI::Range(1, 3));
    solve->add_option("--scheme", cfg.scheme, "enclosure scheme: interval or taylor");
    solve->add_option("--workers", cfg.workers, "evaluation worker threads");
    solve->add_option("--output", cfg.output, "output path (default stdout)");
    solve->add_option("--format", cfg.format, "output format: boxes, json or obj");
    solve->add_flag("--count-ops", cfg.count_ops, "report arithmetic operation counts");

    std::size_t dft_size = 8;
    std::uint64_t dft_seed = 1;
    int dft_workers = 1;
    auto* dft = app.add_subcommand("dft", "discrete Fourier transform benchmark");
    dft->add_option("--size", dft_size, "transform size (power of two)")->required();
    dft->add_option("--seed", dft_seed, "random input seed");
    dft->add_option("--workers", dft_workers, "evaluation worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (solve->parsed()) return run_solve(cfg);
        return run_dft(dft_size, dft_seed, dft_workers);
    } catch (const ParseFailure& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitParse;
    } catch (const ConfigFailure& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
