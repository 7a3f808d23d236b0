#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "quadbound/campaign.hpp"
#include "quadbound/convexity.hpp"
#include "quadbound/corpus.hpp"
#include "quadbound/error.hpp"
#include "quadbound/expr.hpp"

namespace {

using namespace quadbound;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
    std::string corpus;
    double tol = kDefaultTolerance;
    std::string seed = "5EED";
    std::string out;
    std::string grid;
    int jobs = 1;
};

std::uint64_t parse_seed(const std::string& text) {
    std::string_view s = text;
    if (s.starts_with("0x") || s.starts_with("0X"))
        s.remove_prefix(2);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw InputError("--seed must be a hexadecimal integer");
    return v;
}

Corpus load(const GlobalOptions& opts) {
    return opts.corpus.empty() ? demo_corpus() : load_corpus(opts.corpus);
}

SweepGrid make_grid(const GlobalOptions& opts) {
    SweepGrid grid = default_grid();
    if (!opts.grid.empty())
        apply_grid_spec(grid, opts.grid);
    grid.tol = opts.tol;
    grid.seed = parse_seed(opts.seed);
    grid.jobs = opts.jobs;
    grid.validate();
    return grid;
}

// Runs `body` with the output stream selected by --out (stdout when empty).
template <class Body>
int with_output(const GlobalOptions& opts, Body&& body) {
    if (opts.out.empty())
        return body(std::cout);
    std::ofstream file(opts.out, std::ios::binary | std::ios::trunc);
    if (!file)
        throw InputError("cannot write " + opts.out);
    const int status = body(file);
    file.flush();
    if (!file)
        throw InputError("cannot write " + opts.out);
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Error bounds for the (theta, lambda) quadrature family under (alpha, m)-convexity"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--corpus", opts.corpus, "Corpus JSON file (default: built-in demo corpus)");
    app.add_option("--tol", opts.tol, "Absolute tolerance of the integration oracle");
    app.add_option("--seed", opts.seed, "Hexadecimal seed for random convexity samples");
    app.add_option("--out", opts.out, "Write the report or CSV to this path");
    app.add_option("--grid", opts.grid,
                   "Grid overrides, e.g. \"theta=0,2/3;lambda=1/2;q=1,2;a=0;b=1\"");
    app.add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto* verify = app.add_subcommand("verify", "Check the identity and both bounds over corpus x grid");
    auto* sweep = app.add_subcommand("sweep", "Emit one CSV row per (function, theta, lambda, alpha, m, q)");
    auto* preset = app.add_subcommand("preset", "Closed-form bounds for the simpson, trapezoid or midpoint rule");
    std::string preset_name;
    preset->add_option("name", preset_name, "simpson | trapezoid | midpoint")->required();
    auto* lemma = app.add_subcommand("lemma", "Residual of the integral identity over corpus x grid");

    auto* convexity = app.add_subcommand("check-convexity", "Sample-check (alpha, m)-convexity of an expression");
    std::string expr_src;
    double alpha = 1.0;
    double m = 1.0;
    double b = 1.0;
    SamplingSpec sampling;
    bool do_classify = false;
    convexity->add_option("--expr", expr_src, "Expression in x")->required();
    convexity->add_option("--alpha", alpha, "alpha in [0,1]");
    convexity->add_option("--m", m, "m in [0,1]");
    convexity->add_option("--b", b, "Right end of [0, b]");
    convexity->add_option("--grid-points", sampling.grid_points, "Grid values per coordinate");
    convexity->add_option("--random", sampling.random_triples, "Random triples");
    convexity->add_flag("--classify", do_classify, "Report every class of the taxonomy that g belongs to");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) {
            const Corpus corpus = load(opts);
            const SweepGrid grid = make_grid(opts);
            const VerifyReport report = run_verify(corpus, grid);
            for (const auto& w : report.warnings)
                std::cerr << "warning: " << w << '\n';
            return with_output(opts, [&](std::ostream& out) {
                print_verify(out, report);
                return report.ok() ? kExitOk : kExitCheckFailed;
            });
        }
        if (*sweep) {
            const Corpus corpus = load(opts);
            const SweepGrid grid = make_grid(opts);
            return with_output(opts, [&](std::ostream& out) {
                return run_sweep(corpus, grid, out) ? kExitOk : kExitCheckFailed;
            });
        }
        if (*preset) {
            const std::optional<Preset> which = parse_preset(preset_name);
            if (!which) {
                std::cerr << "error: unknown preset '" << preset_name
                          << "' (expected simpson, trapezoid or midpoint)\n";
                return kExitUsage;
            }
            const Corpus corpus = load(opts);
            const SweepGrid grid = make_grid(opts);
            return with_output(opts, [&](std::ostream& out) {
                return run_preset(*which, corpus, grid, out) ? kExitOk : kExitCheckFailed;
            });
        }
        if (*lemma) {
            const Corpus corpus = load(opts);
            const SweepGrid grid = make_grid(opts);
            return with_output(opts, [&](std::ostream& out) {
                return run_lemma(corpus, grid, out) ? kExitOk : kExitCheckFailed;
            });
        }
        if (*convexity) {
            const Expr g = parse(expr_src);
            sampling.seed = parse_seed(opts.seed);
            if (do_classify) {
                const SweepGrid grid = make_grid(opts);
                const auto tags = classify(g, b, grid.alphas, grid.ms, sampling);
                return with_output(opts, [&](std::ostream& out) {
                    out << "classes (sampled, not proved):\n";
                    for (const auto& tag : tags)
                        out << "  " << describe(tag) << '\n';
                    return kExitOk;
                });
            }
            const Certificate cert = check_alpha_m_convex(g, alpha, m, b, sampling);
            return with_output(opts, [&](std::ostream& out) {
                out.precision(17);
                out << (cert.passed ? "not refuted" : "refuted") << ": " << cert.samples_checked
                    << " samples, worst violation " << cert.worst_violation << ", slack "
                    << cert.slack << '\n';
                if (cert.witness)
                    out << "witness x=" << cert.witness->x << " y=" << cert.witness->y
                        << " t=" << cert.witness->t << '\n';
                return cert.passed ? kExitOk : kExitCheckFailed;
            });
        }
    } catch (const InputError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const SyntaxError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const ParameterError& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitUsage;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return kExitCheckFailed;
    }
    return kExitUsage;
}
