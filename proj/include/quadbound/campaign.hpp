#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadbound/bounds.hpp"
#include "quadbound/convexity.hpp"
#include "quadbound/corpus.hpp"

namespace quadbound {

/// Slack added to every dominance comparison.
inline constexpr double kDominanceSlack = 1e-9;
/// Slack for the Hermite-Hadamard ordering and the classical Simpson check.
inline constexpr double kOrderingSlack = 1e-10;

struct SweepGrid {
    std::vector<double> thetas;
    std::vector<double> lambdas;
    std::vector<double> alphas;
    std::vector<double> ms;
    std::vector<double> qs;
    double a = 0.0;
    double b = 1.0;
    double tol = kDefaultTolerance;
    std::uint64_t seed = kDefaultSeed;
    int jobs = 1;

    /// Throws InputError("empty sweep") or InputError naming the bad value.
    void validate() const;
};

/// theta, lambda in {0, 1/4, 1/2, 2/3, 3/4, 1}, alpha in {1/4, 1/2, 3/4, 1},
/// m in {1/4, 1/2, 1}, q in {1, 2, 3, 5}, interval [0, 1].
SweepGrid default_grid();

/// Overrides grid fields from "key=v1,v2;key=v3". Keys: theta, lambda, alpha,
/// m, q, a, b. Values are constant expressions such as 2/3.
void apply_grid_spec(SweepGrid& grid, std::string_view spec);

/// One (function, theta, lambda, alpha, m, q) cell.
struct SweepRow {
    std::size_t function_index = 0;
    std::string name;
    double theta = 0.0;
    double lambda = 0.0;
    double alpha = 0.0;
    double m = 0.0;
    double q = 1.0;
    BoundReport report;
    double lemma_residual = 0.0;
    // |f'|^q passed the (alpha, m) check on [0, b].
    bool certified = false;
    std::optional<std::string> error;
};

/// Every cell of corpus x grid, in corpus order then grid order. Cells are
/// computed on up to grid.jobs threads; the result does not depend on jobs.
std::vector<SweepRow> compute_rows(const Corpus& corpus, const SweepGrid& grid);

bool residual_ok(const SweepRow& row);
bool powermean_ok(const SweepRow& row);
bool holder_ok(const SweepRow& row);

/// Header plus one line per row, RFC-4180 quoting, %.17g numbers, empty fields
/// for absent values.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ClaimResult {
    std::string name;
    ConvexityParams params;
    Certificate certificate;
};

struct VerifyReport {
    std::size_t cells = 0;
    std::size_t certified_cells = 0;
    std::size_t holder_cells = 0;
    std::size_t residual_failures = 0;
    std::size_t powermean_violations = 0;
    std::size_t holder_violations = 0;
    std::size_t evaluation_errors = 0;
    std::size_t ordering_checks = 0;
    std::size_t ordering_failures = 0;
    double worst_residual = 0.0;
    std::optional<double> min_margin_pm;
    std::optional<double> min_margin_h;
    std::vector<ClaimResult> claims;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;

    bool ok() const noexcept {
        return residual_failures == 0 && powermean_violations == 0 && holder_violations == 0
               && evaluation_errors == 0 && ordering_failures == 0;
    }
};

/// Certifies claims, checks the integral identity on every cell, checks both
/// bounds on every certified cell, and checks the Hermite-Hadamard ordering and
/// the classical Simpson bound where they apply.
VerifyReport run_verify(const Corpus& corpus, const SweepGrid& grid);
void print_verify(std::ostream& out, const VerifyReport& report);

/// Computes all rows, writes the CSV and returns whether every certified row
/// passed.
bool run_sweep(const Corpus& corpus, const SweepGrid& grid, std::ostream& csv);

/// Runs the preset's fixed (theta, lambda) over the grid's alpha, m, q and
/// prints the rule-specific bounds with their closed prefactors.
bool run_preset(Preset preset, const Corpus& corpus, const SweepGrid& grid, std::ostream& out);

/// Identity residual over corpus x theta x lambda x m.
bool run_lemma(const Corpus& corpus, const SweepGrid& grid, std::ostream& out);

/// "5/18" when v is a ratio of small integers, otherwise a decimal.
std::string format_ratio(double v);

/// Text of the power-mean prefactor, e.g. "(1/2)^(1/2) = 0.70710678118654757".
std::string powermean_prefactor_text(Preset preset, double q);
/// Closed Hölder prefactor of the preset, including m(b-a) and lambda^2.
double holder_prefactor(Preset preset, double p, double m, double a, double b);
std::string holder_prefactor_text(Preset preset, double p, double m, double a, double b);

} // namespace quadbound
