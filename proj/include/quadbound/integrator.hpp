#pragma once

#include <cstddef>
#include <span>

#include "quadbound/model.hpp"

namespace quadbound {

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kResidualThreshold = 1e-8;
inline constexpr int kMaxDepth = 60;

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of g over [lo, hi].
///
/// The interval is first split at every breakpoint strictly inside (lo, hi);
/// the subinterval with the largest |K15 - G7| is then bisected until the
/// summed estimate is within the absolute tolerance `tol`. Subintervals stop
/// splitting at depth 60.
///
/// Throws NonConvergenceError (carrying the best estimate) when the tolerance
/// cannot be met and EvaluationError when g returns a non-finite value.
QuadResult integrate(const RealFn& g, double lo, double hi, double tol = kDefaultTolerance,
                     std::span<const double> breakpoints = {});

/// Right-hand side of the integral identity for the rule defect:
///   m(b-a) [ -lambda^2 \int_0^1 (t-theta) f'(t ma + (1-t) mC) dt
///            + (1-lambda)^2 \int_0^1 (t-theta) f'(t mb + (1-t) mC) dt ].
double lemma_rhs(const RealFn& fprime, const RuleParams& rp, double tol = kDefaultTolerance);

/// |defect(f, rp) - lemma_rhs(fprime, rp)|.
double lemma_residual(const RealFn& f, const RealFn& fprime, const RuleParams& rp,
                      double tol = kDefaultTolerance);

} // namespace quadbound
