#pragma once

#include <optional>
#include <string_view>
#include <utility>

#include "quadbound/integrator.hpp"
#include "quadbound/model.hpp"

namespace quadbound {

/// Named members of the rule family, all at lambda = 1/2.
enum class Preset { simpson, trapezoid, midpoint };

/// Returns nullopt for an unknown name.
std::optional<Preset> parse_preset(std::string_view name);
const char* to_string(Preset preset) noexcept;

/// (theta, lambda) of a preset: simpson (2/3, 1/2), trapezoid (0, 1/2), midpoint (1, 1/2).
std::pair<double, double> preset_theta_lambda(Preset preset) noexcept;
RuleParams preset_rule(Preset preset, double m, double a, double b);

/// Signed rule defect
///   (1-theta)(lambda f(ma) + (1-lambda) f(mb)) + theta f(mC) - mean of f over [ma, mb],
/// with the mean evaluated by the adaptive oracle.
double defect(const RealFn& f, const RuleParams& rp, double tol = kDefaultTolerance);

struct BranchPair {
    double first;
    double second;
};

/// B1 and B2 of the power-mean bound. The m of `cp` must equal the rule's m.
BranchPair b_pair_powermean(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp);

/// m(b-a) A1(theta)^{1-1/q} min(B1, B2).
double bound_powermean(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp);

/// B3 and B4 of the Hölder bound; requires q > 1.
BranchPair b_pair_holder(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp);

/// m(b-a) (\int_0^1 |t-theta|^p dt)^{1/p} min(B3, B4); requires q > 1.
double bound_holder(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp);

/// Defect, both bounds (Hölder only for q > 1), branch values and margins.
BoundReport bound_report(const RealFn& f, const RealFn& fprime, const RuleParams& rp,
                         const ConvexityParams& cp, double tol = kDefaultTolerance);

struct HermiteHadamard {
    double lhs; // f((a+b)/2)
    double mid; // mean of f over [a, b]
    double rhs; // (f(a) + f(b)) / 2
};

HermiteHadamard hermite_hadamard(const RealFn& f, double a, double b,
                                 double tol = kDefaultTolerance);

/// ||f''''||_inf (b-a)^4 / 2880, the classical bound on the averaged Simpson defect.
double classical_simpson_bound(double f4_sup, double a, double b);

} // namespace quadbound
