// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "expr_gen.hpp"
#include "oracle.hpp"
#include "quadbound/bounds.hpp"
#include "quadbound/campaign.hpp"
#include "quadbound/coefficients.hpp"
#include "quadbound/convexity.hpp"
#include "quadbound/corpus.hpp"
#include "quadbound/error.hpp"
#include "quadbound/expr.hpp"

using namespace quadbound;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, {}};
    try {
        o = body();
    } catch (const std::exception& err) {
        o = Outcome{false, std::string("exception: ") + err.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d. %s (%.2fs) %s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass)
        ++failures;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SweepGrid dominance_grid(const char* qs) {
    SweepGrid g = default_grid();
    apply_grid_spec(g, "theta=0,1/4,1/2,2/3,3/4,1;lambda=0,1/4,1/2,2/3,3/4,1;"
                       "alpha=1/4,1/2,3/4,1;m=1/4,1/2,1");
    apply_grid_spec(g, std::string("q=") + qs);
    g.jobs = 1;
    return g;
}

Outcome dominance(const char* qs, bool holder) {
    const std::vector<SweepRow> rows = compute_rows(demo_corpus(), dominance_grid(qs));
    std::size_t certified = 0;
    std::size_t violations = 0;
    std::size_t errors = 0;
    double min_margin = INFINITY;
    for (const SweepRow& row : rows) {
        if (row.error) {
            ++errors;
            continue;
        }
        if (!row.certified)
            continue;
        ++certified;
        const bool ok = holder ? holder_ok(row) : powermean_ok(row);
        if (!ok)
            ++violations;
        min_margin = std::min(min_margin, holder ? *row.report.margin_h : *row.report.margin_pm);
    }
    return Outcome{violations == 0 && errors == 0 && certified > 0,
                   std::to_string(violations) + " violations over " + std::to_string(certified)
                       + " certified of " + std::to_string(rows.size()) + " cells, min margin "
                       + fmt("%.3g", min_margin)};
}

} // namespace

int main() {
    criterion(1, "exact constants 5/18, 5/72, 29/648, 2/81", [] {
        const WeightMoments w = weight_moments(2.0 / 3.0, 1.0);
        const double c1 = a1(2.0 / 3.0);
        const bool ok = near(c1, 5.0 / 18.0, 1e-12) && near(0.25 * c1, 5.0 / 72.0, 1e-12)
                        && near(0.25 * w.a4, 29.0 / 648.0, 1e-12) && near(0.25 * w.a5, 2.0 / 81.0, 1e-12);
        return Outcome{ok, "a1(2/3)=" + fmt("%.17g", c1)};
    });

    criterion(2, "integral identity residual <= 1e-8 on 375 cells", [] {
        const Corpus corpus = demo_corpus();
        const double grid[] = {0.0, 0.25, 0.5, 2.0 / 3.0, 1.0};
        const double ms[] = {0.25, 0.5, 1.0};
        std::size_t cells = 0;
        std::size_t bad = 0;
        double worst = 0.0;
        for (const auto& fn : corpus.functions)
            for (double theta : grid)
                for (double lambda : grid)
                    for (double m : ms) {
                        const double r =
                            lemma_residual(fn.f, fn.fprime, make_rule_params(theta, lambda, m, 0.0, 1.0));
                        ++cells;
                        worst = std::max(worst, r);
                        if (!(r <= 1e-8))
                            ++bad;
                    }
        return Outcome{cells == 375 && bad == 0,
                       std::to_string(cells) + " cells, worst residual " + fmt("%.3g", worst)};
    });

    criterion(3, "power-mean bound dominates |defect| (q in {1,2,3})",
              [] { return dominance("1,2,3", false); });

    criterion(4, "Hölder bound dominates |defect| (q in {2,3,5})",
              [] { return dominance("2,3,5", true); });

    criterion(5, "coefficients match numerical integrals on the 21x21 grid", [] {
        double worst_oracle = 0.0;
        double worst_identity = 0.0;
        for (int i = 0; i <= 20; ++i) {
            for (int j = 0; j <= 20; ++j) {
                const double theta = i / 20.0;
                const double alpha = j / 20.0;
                const WeightMoments w = weight_moments(theta, alpha);
                const WeightMoments r = weight_moments(1.0 - theta, alpha);
                const double a2 = oracle::integral(
                    [&](double t) { return std::abs(t - theta) * oracle::tpow(t, alpha); }, 0.0, 1.0, {theta});
                const double a4 = oracle::integral(
                    [&](double t) { return std::abs(1.0 - theta - t) * oracle::tpow(t, alpha); }, 0.0,
                    1.0, {1.0 - theta});
                const double x = 1.3;
                const double y = 0.6;
                const double m = 0.5;
                const double e = oracle::integral(
                    [&](double t) {
                        return oracle::tpow(t, alpha) * x + m * (1.0 - oracle::tpow(t, alpha)) * y;
                    },
                    0.0, 1.0);
                worst_oracle = std::max({worst_oracle, std::abs(w.a2 - a2), std::abs(w.a4 - a4),
                                         std::abs(e_coeff(x, y, alpha, m) - e)});
                worst_identity = std::max({worst_identity, std::abs(w.a2 + w.a3 - a1(theta)),
                                           std::abs(w.a4 + w.a5 - a1(theta)), std::abs(w.a4 - r.a2),
                                           std::abs(w.a5 - r.a3)});
            }
        }
        return Outcome{worst_oracle <= 1e-9 && worst_identity <= 1e-12,
                       "oracle gap " + fmt("%.3g", worst_oracle) + ", identity gap "
                           + fmt("%.3g", worst_identity)};
    });

    criterion(6, "classical Simpson bound is attained by x^4 on [0,1]", [] {
        const double d = std::abs(defect([](double x) { return x * x * x * x; },
                                         preset_rule(Preset::simpson, 1.0, 0.0, 1.0)));
        const double bound = classical_simpson_bound(24.0, 0.0, 1.0);
        return Outcome{near(d, 1.0 / 120.0, 1e-10) && near(bound, 1.0 / 120.0, 1e-10),
                       "|defect|=" + fmt("%.17g", d) + " bound=" + fmt("%.17g", bound)};
    });

    criterion(7, "Hermite-Hadamard ordering on [0,1] and [1/2,2]", [] {
        const Corpus corpus = demo_corpus();
        std::size_t checked = 0;
        bool ordered = true;
        for (const auto& fn : corpus.functions) {
            if (!check_alpha_m_convex(fn.f, 1.0, 1.0, 2.0).passed)
                continue;
            for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{0.5, 2.0}}) {
                const HermiteHadamard hh = hermite_hadamard(fn.f, a, b);
                ordered = ordered && hh.lhs <= hh.mid && hh.mid <= hh.rhs;
                ++checked;
            }
        }
        const HermiteHadamard x2 = hermite_hadamard([](double x) { return x * x; }, 0.0, 1.0);
        const bool exact = near(x2.lhs, 0.25, 1e-10) && near(x2.mid, 1.0 / 3.0, 1e-10) && near(x2.rhs, 0.5, 1e-10);
        return Outcome{ordered && exact && checked == 2 * corpus.functions.size(),
                       std::to_string(checked) + " ordered triples"};
    });

    criterion(8, "trapezoid worked instance for x^2", [] {
        auto f = [](double x) { return x * x; };
        auto fp = [](double x) { return 2.0 * x; };
        const RuleParams rp = make_rule_params(0.0, 0.5, 1.0, 0.0, 1.0);
        const BoundReport r = bound_report(f, fp, rp, ConvexityParams::make(1.0, 1.0, 1.0));
        const bool ok = near(r.defect, 1.0 / 6.0, 1e-10) && near(r.b1, 0.25, 1e-10)
                        && near(r.b2, 0.25, 1e-10) && near(*r.bound_powermean, 0.25, 1e-10);
        return Outcome{ok, "defect=" + fmt("%.17g", r.defect) + " bound=" + fmt("%.17g", *r.bound_powermean)};
    });

    criterion(9, "convexity checker: -x^2 refuted, x, x^2, x^3 certified, deterministic", [] {
        auto concave = [](double x) { return -x * x; };
        const Certificate c = check_alpha_m_convex(concave, 1.0, 1.0, 1.0);
        bool ok = !c.passed && c.witness.has_value();
        if (ok) {
            const double again = convexity_violation(concave, 1.0, 1.0, c.witness->x, c.witness->y, c.witness->t);
            ok = again == c.worst_violation && again > c.slack;
        }
        const Certificate again = check_alpha_m_convex(concave, 1.0, 1.0, 1.0);
        ok = ok && again.worst_violation == c.worst_violation && again.witness->x == c.witness->x
             && again.witness->y == c.witness->y && again.witness->t == c.witness->t;
        ok = ok && check_alpha_m_convex([](double x) { return x; }, 1.0, 1.0, 1.0).passed
             && check_alpha_m_convex([](double x) { return x * x; }, 1.0, 1.0, 1.0).passed
             && check_alpha_m_convex([](double x) { return x * x * x; }, 1.0, 1.0, 1.0).passed;
        return Outcome{ok, "worst violation of -x^2: " + fmt("%.6g", c.worst_violation)};
    });

    criterion(10, "parser precedence goldens and 10k-case fuzz", [] {
        bool ok = parse("2+3*4^2")(0.0) == 50.0 && parse("2^3^2")(0.0) == 512.0
                  && parse("-x^2")(3.0) == -9.0 && parse("(-x)^2")(3.0) == 9.0;
        std::mt19937_64 rng(0xF022);
        std::size_t parsed = 0;
        for (int i = 0; i < 10000; ++i) {
            std::string src;
            if (i % 2 == 0) {
                // A valid expression with one random byte overwritten.
                src = make_expr(exprgen::random_node(rng, 5)).unparse();
                if (i % 4 == 0 && !src.empty())
                    src[rng() % src.size()] = static_cast<char>(rng() % 128);
            } else {
                src = exprgen::random_source(rng, i % 50 == 1 ? 4096 : 128);
            }
            try {
                const Expr e = parse(src);
                ++parsed;
                try {
                    (void)e(0.75);
                } catch (const EvaluationError&) {
                }
            } catch (const SyntaxError& err) {
                ok = ok && err.offset() <= src.size();
            }
        }
        return Outcome{ok, "10000 inputs, " + std::to_string(parsed) + " parsed"};
    });

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
