#include "quadbound/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "quadbound/coefficients.hpp"
#include "quadbound/error.hpp"

namespace quadbound {

namespace {

constexpr std::size_t kMaxListedFailures = 20;

template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, jobs)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

RealFn derivative_power(const Expr& fprime, double q) {
    return [fprime, q](double x) { return std::pow(std::abs(fprime(x)), q); };
}

std::vector<double> parse_values(std::string_view key, std::string_view list) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = list.find(',', start);
        const std::string_view item =
            list.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (item.find_first_not_of(" \t") != std::string_view::npos) {
            double v = 0.0;
            try {
                v = parse(item)(std::numeric_limits<double>::quiet_NaN());
            } catch (const Error& err) {
                throw InputError("grid value '" + std::string(item) + "' for " + std::string(key)
                                 + ": " + err.what());
            }
            if (!std::isfinite(v))
                throw InputError("grid value '" + std::string(item) + "' for " + std::string(key)
                                 + " must be a finite constant");
            values.push_back(v);
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return values;
}

double single_value(std::string_view key, std::string_view list) {
    const auto values = parse_values(key, list);
    if (values.size() != 1)
        throw InputError(std::string(key) + " takes exactly one value");
    return values.front();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

const char* branch_label(Branch b, const char* first, const char* second) {
    switch (b) {
    case Branch::first:
        return first;
    case Branch::second:
        return second;
    case Branch::tie:
        return "tie";
    }
    return "";
}

std::string cell_label(const SweepRow& row) {
    std::ostringstream out;
    out << row.name << " theta=" << format_ratio(row.theta) << " lambda=" << format_ratio(row.lambda)
        << " alpha=" << format_ratio(row.alpha) << " m=" << format_ratio(row.m)
        << " q=" << format_ratio(row.q);
    return out.str();
}

void require_domain(const Corpus& corpus, const SweepGrid& grid) {
    for (const auto& fn : corpus.functions) {
        if (grid.b > fn.spec.domain_b)
            throw InputError("interval end b = " + num(grid.b) + " exceeds domain_b of '"
                             + fn.spec.name + "'");
    }
}

using CertKey = std::tuple<std::size_t, double, double, double>;

std::map<CertKey, Certificate> certify_cells(const Corpus& corpus, const SweepGrid& grid) {
    std::vector<CertKey> keys;
    for (std::size_t fi = 0; fi < corpus.functions.size(); ++fi)
        for (double alpha : grid.alphas)
            for (double m : grid.ms)
                for (double q : grid.qs)
                    keys.emplace_back(fi, alpha, m, q);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

    SamplingSpec spec;
    spec.seed = grid.seed;
    std::vector<Certificate> certs(keys.size());
    parallel_for(keys.size(), grid.jobs, [&](std::size_t i) {
        const auto& [fi, alpha, m, q] = keys[i];
        try {
            certs[i] = check_alpha_m_convex(derivative_power(corpus.functions[fi].fprime, q), alpha,
                                            m, grid.b, spec);
        } catch (const EvaluationError&) {
            certs[i].passed = false;
        }
    });

    std::map<CertKey, Certificate> out;
    for (std::size_t i = 0; i < keys.size(); ++i)
        out.emplace(keys[i], certs[i]);
    return out;
}

} // namespace

void SweepGrid::validate() const {
    if (thetas.empty() || lambdas.empty() || alphas.empty() || ms.empty() || qs.empty())
        throw InputError("empty sweep");
    auto check = [](const std::vector<double>& values, const char* name, double lo, double hi,
                    bool open_lo) {
        for (double v : values) {
            if (!std::isfinite(v) || v > hi || v < lo || (open_lo && v == lo))
                throw InputError(std::string("grid value ") + name + " = " + num(v) + " out of range");
        }
    };
    check(thetas, "theta", 0.0, 1.0, false);
    check(lambdas, "lambda", 0.0, 1.0, false);
    check(alphas, "alpha", 0.0, 1.0, false);
    check(ms, "m", 0.0, 1.0, true);
    check(qs, "q", 1.0, std::numeric_limits<double>::max(), false);
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || !(a < b))
        throw InputError("grid interval must satisfy 0 <= a < b");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw InputError("tolerance must be positive");
    if (jobs < 1)
        throw InputError("jobs must be at least 1");
}

SweepGrid default_grid() {
    SweepGrid g;
    g.thetas = {0.0, 0.25, 0.5, 2.0 / 3.0, 0.75, 1.0};
    g.lambdas = g.thetas;
    g.alphas = {0.25, 0.5, 0.75, 1.0};
    g.ms = {0.25, 0.5, 1.0};
    g.qs = {1.0, 2.0, 3.0, 5.0};
    return g;
}

void apply_grid_spec(SweepGrid& grid, std::string_view spec) {
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t semi = spec.find(';', start);
        std::string_view part =
            spec.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start);
        const std::size_t first = part.find_first_not_of(" \t");
        if (first != std::string_view::npos) {
            part = part.substr(first);
            const std::size_t eq = part.find('=');
            if (eq == std::string_view::npos)
                throw InputError("grid entry '" + std::string(part) + "' lacks '='");
            std::string_view key = part.substr(0, eq);
            while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
                key.remove_suffix(1);
            const std::string_view list = part.substr(eq + 1);
            if (key == "theta")
                grid.thetas = parse_values(key, list);
            else if (key == "lambda")
                grid.lambdas = parse_values(key, list);
            else if (key == "alpha")
                grid.alphas = parse_values(key, list);
            else if (key == "m")
                grid.ms = parse_values(key, list);
            else if (key == "q")
                grid.qs = parse_values(key, list);
            else if (key == "a")
                grid.a = single_value(key, list);
            else if (key == "b")
                grid.b = single_value(key, list);
            else
                throw InputError("unknown grid key '" + std::string(key) + "'");
        }
        if (semi == std::string_view::npos)
            break;
        start = semi + 1;
    }
}

std::vector<SweepRow> compute_rows(const Corpus& corpus, const SweepGrid& grid) {
    grid.validate();
    require_domain(corpus, grid);
    const auto certs = certify_cells(corpus, grid);

    std::vector<SweepRow> rows;
    for (std::size_t fi = 0; fi < corpus.functions.size(); ++fi)
        for (double theta : grid.thetas)
            for (double lambda : grid.lambdas)
                for (double alpha : grid.alphas)
                    for (double m : grid.ms)
                        for (double q : grid.qs) {
                            SweepRow row;
                            row.function_index = fi;
                            row.name = corpus.functions[fi].spec.name;
                            row.theta = theta;
                            row.lambda = lambda;
                            row.alpha = alpha;
                            row.m = m;
                            row.q = q;
                            row.certified = certs.at(CertKey{fi, alpha, m, q}).passed;
                            rows.push_back(std::move(row));
                        }

    parallel_for(rows.size(), grid.jobs, [&](std::size_t i) {
        SweepRow& row = rows[i];
        const CompiledFunction& fn = corpus.functions[row.function_index];
        try {
            const RuleParams rp = RuleParams::make(row.theta, row.lambda, row.m, grid.a, grid.b);
            const ConvexityParams cp = ConvexityParams::make(row.alpha, row.m, row.q);
            row.report = bound_report(fn.f, fn.fprime, rp, cp, grid.tol);
            row.lemma_residual = std::abs(row.report.defect - lemma_rhs(fn.fprime, rp, grid.tol));
        } catch (const Error& err) {
            row.error = err.what();
        }
    });
    return rows;
}

bool residual_ok(const SweepRow& row) {
    return !row.error && row.lemma_residual <= kResidualThreshold;
}

bool powermean_ok(const SweepRow& row) {
    if (!row.certified)
        return true;
    if (row.error || !row.report.bound_powermean)
        return false;
    return std::abs(row.report.defect) <= *row.report.bound_powermean + kDominanceSlack;
}

bool holder_ok(const SweepRow& row) {
    if (!row.certified || row.q <= 1.0)
        return true;
    if (row.error || !row.report.bound_holder)
        return false;
    return std::abs(row.report.defect) <= *row.report.bound_holder + kDominanceSlack;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "name,theta,lambda,alpha,m,q,defect,bound_pm,b1,b2,pm_argmin,bound_holder,b3,b4,"
           "h_argmin,lemma_residual,certified\r\n";
    for (const SweepRow& row : rows) {
        const BoundReport& r = row.report;
        const bool ok = !row.error;
        out << csv_field(row.name) << ',' << num(row.theta) << ',' << num(row.lambda) << ','
            << num(row.alpha) << ',' << num(row.m) << ',' << num(row.q) << ','
            << (ok ? num(r.defect) : "") << ',' << (ok ? opt_num(r.bound_powermean) : "") << ','
            << (ok ? num(r.b1) : "") << ',' << (ok ? num(r.b2) : "") << ','
            << (ok ? branch_label(r.pm_argmin, "b1", "b2") : "") << ','
            << (ok ? opt_num(r.bound_holder) : "") << ',' << (ok ? opt_num(r.b3) : "") << ','
            << (ok ? opt_num(r.b4) : "") << ','
            << (ok && r.h_argmin ? branch_label(*r.h_argmin, "b3", "b4") : "") << ','
            << (ok ? num(row.lemma_residual) : "") << ',' << (row.certified ? "true" : "false")
            << "\r\n";
    }
}

VerifyReport run_verify(const Corpus& corpus, const SweepGrid& grid) {
    VerifyReport report;
    auto fail = [&report](std::string what) {
        if (report.failures.size() < kMaxListedFailures)
            report.failures.push_back(std::move(what));
    };

    SamplingSpec spec;
    spec.seed = grid.seed;
    for (const auto& fn : corpus.functions) {
        for (const ConvexityParams& cp : fn.spec.claimed) {
            ClaimResult claim{fn.spec.name, cp, {}};
            try {
                claim.certificate = check_alpha_m_convex(derivative_power(fn.fprime, cp.q()),
                                                         cp.alpha(), cp.m(), fn.spec.domain_b, spec);
            } catch (const EvaluationError& err) {
                claim.certificate.passed = false;
                report.warnings.push_back("claim on '" + fn.spec.name + "' could not be evaluated: "
                                          + err.what());
            }
            if (!claim.certificate.passed) {
                report.warnings.push_back(
                    "claim alpha=" + format_ratio(cp.alpha()) + " m=" + format_ratio(cp.m())
                    + " q=" + format_ratio(cp.q()) + " on '" + fn.spec.name
                    + "' is refuted; cells where |f'|^q is not certified are skipped for dominance");
            }
            report.claims.push_back(std::move(claim));
        }
    }

    const std::vector<SweepRow> rows = compute_rows(corpus, grid);
    report.cells = rows.size();
    std::size_t uncertified = 0;
    for (const SweepRow& row : rows) {
        if (row.error) {
            ++report.evaluation_errors;
            fail("evaluation error at " + cell_label(row) + ": " + *row.error);
            continue;
        }
        report.worst_residual = std::max(report.worst_residual, row.lemma_residual);
        if (!residual_ok(row)) {
            ++report.residual_failures;
            fail("identity residual " + num(row.lemma_residual) + " at " + cell_label(row));
        }
        if (!row.certified) {
            ++uncertified;
            continue;
        }
        ++report.certified_cells;
        const double pm = *row.report.margin_pm;
        report.min_margin_pm = std::min(report.min_margin_pm.value_or(pm), pm);
        if (!powermean_ok(row)) {
            ++report.powermean_violations;
            fail("power-mean bound violated (margin " + num(pm) + ") at " + cell_label(row));
        }
        if (row.q > 1.0) {
            ++report.holder_cells;
            const double h = *row.report.margin_h;
            report.min_margin_h = std::min(report.min_margin_h.value_or(h), h);
            if (!holder_ok(row)) {
                ++report.holder_violations;
                fail("Hölder bound violated (margin " + num(h) + ") at " + cell_label(row));
            }
        }
    }
    if (uncertified > 0) {
        report.warnings.push_back(std::to_string(uncertified) + " of " + std::to_string(rows.size())
                                  + " cells have |f'|^q uncertified and are excluded from dominance");
    }

    for (const auto& fn : corpus.functions) {
        try {
            if (check_alpha_m_convex(fn.f, 1.0, 1.0, grid.b, spec).passed) {
                ++report.ordering_checks;
                const HermiteHadamard hh = hermite_hadamard(fn.f, grid.a, grid.b, grid.tol);
                if (!(hh.lhs <= hh.mid + kOrderingSlack && hh.mid <= hh.rhs + kOrderingSlack)) {
                    ++report.ordering_failures;
                    fail("Hermite-Hadamard ordering fails for '" + fn.spec.name + "'");
                }
            }
            if (fn.spec.f4_sup) {
                ++report.ordering_checks;
                const RuleParams rp = preset_rule(Preset::simpson, 1.0, grid.a, grid.b);
                const double d = std::abs(defect(fn.f, rp, grid.tol));
                const double bound = classical_simpson_bound(*fn.spec.f4_sup, grid.a, grid.b);
                if (d > bound + kOrderingSlack) {
                    ++report.ordering_failures;
                    fail("classical Simpson bound fails for '" + fn.spec.name + "': |defect| "
                         + num(d) + " > " + num(bound));
                }
            }
        } catch (const Error& err) {
            ++report.evaluation_errors;
            fail("evaluation error for '" + fn.spec.name + "': " + err.what());
        }
    }
    return report;
}

void print_verify(std::ostream& out, const VerifyReport& r) {
    out << "claims:\n";
    for (const ClaimResult& c : r.claims) {
        out << "  " << c.name << " alpha=" << format_ratio(c.params.alpha())
            << " m=" << format_ratio(c.params.m()) << " q=" << format_ratio(c.params.q()) << ": "
            << (c.certificate.passed ? "not refuted" : "REFUTED") << " ("
            << c.certificate.samples_checked << " samples, worst violation "
            << short_num(c.certificate.worst_violation) << ")\n";
    }
    out << "cells: " << r.cells << " (" << r.certified_cells << " certified)\n";
    out << "identity residual: worst " << short_num(r.worst_residual) << ", failures "
        << r.residual_failures << '\n';
    out << "power-mean dominance: violations " << r.powermean_violations;
    if (r.min_margin_pm)
        out << ", min margin " << short_num(*r.min_margin_pm);
    out << '\n';
    out << "Hölder dominance: " << r.holder_cells << " cells, violations " << r.holder_violations;
    if (r.min_margin_h)
        out << ", min margin " << short_num(*r.min_margin_h);
    out << '\n';
    out << "ordering checks (Hermite-Hadamard, classical Simpson): " << r.ordering_checks
        << ", failures " << r.ordering_failures << '\n';
    if (r.evaluation_errors > 0)
        out << "evaluation errors: " << r.evaluation_errors << '\n';
    for (const auto& f : r.failures)
        out << "FAIL " << f << '\n';
    out << (r.ok() ? "PASS" : "FAIL") << '\n';
}

bool run_sweep(const Corpus& corpus, const SweepGrid& grid, std::ostream& csv) {
    const std::vector<SweepRow> rows = compute_rows(corpus, grid);
    write_csv(csv, rows);
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& row) {
        return residual_ok(row) && powermean_ok(row) && holder_ok(row);
    });
}

std::string format_ratio(double v) {
    if (!std::isfinite(v))
        return num(v);
    for (long long d = 1; d <= 10000; ++d) {
        const double n = std::round(v * static_cast<double>(d));
        if (std::abs(n) > 1e12)
            break;
        if (std::abs(n / static_cast<double>(d) - v) <= 1e-12 * std::max(1.0, std::abs(v))) {
            const long long ni = static_cast<long long>(n);
            return d == 1 ? std::to_string(ni) : std::to_string(ni) + "/" + std::to_string(d);
        }
    }
    return num(v);
}

std::string powermean_prefactor_text(Preset preset, double q) {
    const double base = a1(preset_theta_lambda(preset).first);
    const double exponent = 1.0 - 1.0 / q;
    return "(" + format_ratio(base) + ")^(" + format_ratio(exponent) + ") = "
           + num(std::pow(base, exponent));
}

double holder_prefactor(Preset preset, double p, double m, double a, double b) {
    const double scale = m * (b - a);
    if (preset == Preset::simpson)
        return scale / 12.0 * std::pow((std::pow(2.0, p + 1.0) + 1.0) / (3.0 * (p + 1.0)), 1.0 / p);
    return scale / 4.0 * std::pow(1.0 / (p + 1.0), 1.0 / p);
}

std::string holder_prefactor_text(Preset preset, double p, double m, double a, double b) {
    const std::string form = preset == Preset::simpson ? "m(b-a)/12 * ((2^(p+1)+1)/(3(p+1)))^(1/p)"
                                                       : "m(b-a)/4 * (1/(p+1))^(1/p)";
    return form + " with p=" + format_ratio(p) + " = " + num(holder_prefactor(preset, p, m, a, b));
}

bool run_preset(Preset preset, const Corpus& corpus, const SweepGrid& grid, std::ostream& out) {
    SweepGrid g = grid;
    const auto [theta, lambda] = preset_theta_lambda(preset);
    g.thetas = {theta};
    g.lambdas = {lambda};
    const std::vector<SweepRow> rows = compute_rows(corpus, g);

    out << "preset " << to_string(preset) << " (theta=" << format_ratio(theta)
        << ", lambda=" << format_ratio(lambda) << ") on [" << format_ratio(g.a) << ", "
        << format_ratio(g.b) << "]\n";
    out << "A1(theta) = " << format_ratio(a1(theta)) << '\n';

    bool ok = true;
    std::size_t last_fn = rows.empty() ? 0 : rows.front().function_index + 1;
    for (const SweepRow& row : rows) {
        const CompiledFunction& fn = corpus.functions[row.function_index];
        if (row.function_index != last_fn) {
            out << "function " << fn.spec.name << ": f = " << fn.spec.f_expr << '\n';
            last_fn = row.function_index;
        }
        out << "  m=" << format_ratio(row.m) << " alpha=" << format_ratio(row.alpha)
            << " q=" << format_ratio(row.q) << (row.certified ? " certified" : " uncertified");
        if (row.error) {
            out << " error: " << *row.error << '\n';
            ok = false;
            continue;
        }
        const BoundReport& r = row.report;
        out << " defect=" << num(r.defect) << '\n';
        out << "    power-mean: prefactor " << powermean_prefactor_text(preset, row.q)
            << ", bound = m(b-a) * prefactor * min(B1, B2) = " << num(*r.bound_powermean)
            << " [B1=" << num(r.b1) << ", B2=" << num(r.b2) << "]"
            << (powermean_ok(row) ? "" : " VIOLATED") << '\n';
        if (r.bound_holder) {
            const double p = row.q / (row.q - 1.0);
            out << "    Hölder: prefactor " << holder_prefactor_text(preset, p, row.m, g.a, g.b)
                << ", bound = " << num(*r.bound_holder) << (holder_ok(row) ? "" : " VIOLATED")
                << '\n';
        }
        ok = ok && residual_ok(row) && powermean_ok(row) && holder_ok(row);
    }
    return ok;
}

bool run_lemma(const Corpus& corpus, const SweepGrid& grid, std::ostream& out) {
    grid.validate();
    require_domain(corpus, grid);

    struct Cell {
        std::size_t fi;
        double theta;
        double lambda;
        double m;
        double residual = 0.0;
        std::optional<std::string> error;
    };
    std::vector<Cell> cells;
    for (std::size_t fi = 0; fi < corpus.functions.size(); ++fi)
        for (double theta : grid.thetas)
            for (double lambda : grid.lambdas)
                for (double m : grid.ms)
                    cells.push_back(Cell{fi, theta, lambda, m, 0.0, std::nullopt});

    parallel_for(cells.size(), grid.jobs, [&](std::size_t i) {
        Cell& c = cells[i];
        const CompiledFunction& fn = corpus.functions[c.fi];
        try {
            const RuleParams rp = RuleParams::make(c.theta, c.lambda, c.m, grid.a, grid.b);
            c.residual = lemma_residual(fn.f, fn.fprime, rp, grid.tol);
        } catch (const Error& err) {
            c.error = err.what();
        }
    });

    bool ok = true;
    double worst = 0.0;
    for (const Cell& c : cells) {
        const bool pass = !c.error && c.residual <= kResidualThreshold;
        ok = ok && pass;
        worst = std::max(worst, c.residual);
        out << corpus.functions[c.fi].spec.name << " theta=" << format_ratio(c.theta)
            << " lambda=" << format_ratio(c.lambda) << " m=" << format_ratio(c.m) << " residual="
            << (c.error ? "error: " + *c.error : short_num(c.residual)) << (pass ? "" : " FAIL")
            << '\n';
    }
    out << cells.size() << " cells, worst residual " << short_num(worst) << ": "
        << (ok ? "PASS" : "FAIL") << '\n';
    return ok;
}

} // namespace quadbound
