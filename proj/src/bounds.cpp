#include "quadbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadbound/coefficients.hpp"
#include "quadbound/error.hpp"

namespace quadbound {

namespace {

double checked(const RealFn& g, double x) {
    const double y = g(x);
    if (!std::isfinite(y)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "function is non-finite at x = " << x;
        throw EvaluationError(msg.str(), x);
    }
    return y;
}

// |f'(x)|^q
double dq(const RealFn& fprime, double x, double q) {
    return std::pow(std::abs(checked(fprime, x)), q);
}

void require_matching_m(const RuleParams& rp, const ConvexityParams& cp) {
    if (rp.m() != cp.m())
        throw ParameterError("convexity m must equal the rule's m");
}

// Branches within a few ulps of each other are reported as a tie.
Branch argmin(double first, double second) {
    if (std::abs(first - second) <= 1e-12 * std::max(std::abs(first), std::abs(second)))
        return Branch::tie;
    if (first < second)
        return Branch::first;
    if (second < first)
        return Branch::second;
    return Branch::tie;
}

} // namespace

std::optional<Preset> parse_preset(std::string_view name) {
    if (name == "simpson")
        return Preset::simpson;
    if (name == "trapezoid")
        return Preset::trapezoid;
    if (name == "midpoint")
        return Preset::midpoint;
    return std::nullopt;
}

const char* to_string(Preset preset) noexcept {
    switch (preset) {
    case Preset::simpson:
        return "simpson";
    case Preset::trapezoid:
        return "trapezoid";
    case Preset::midpoint:
        return "midpoint";
    }
    return "?";
}

std::pair<double, double> preset_theta_lambda(Preset preset) noexcept {
    switch (preset) {
    case Preset::simpson:
        return {2.0 / 3.0, 0.5};
    case Preset::trapezoid:
        return {0.0, 0.5};
    case Preset::midpoint:
        return {1.0, 0.5};
    }
    return {0.0, 0.5};
}

RuleParams preset_rule(Preset preset, double m, double a, double b) {
    const auto [theta, lambda] = preset_theta_lambda(preset);
    return RuleParams::make(theta, lambda, m, a, b);
}

double defect(const RealFn& f, const RuleParams& rp, double tol) {
    const double theta = rp.theta();
    const double lambda = rp.lambda();
    const double rule = (1.0 - theta) * (lambda * checked(f, rp.ma()) + (1.0 - lambda) * checked(f, rp.mb()))
                        + theta * checked(f, rp.mc());
    const double length = rp.mb() - rp.ma();
    const double mean = integrate(f, rp.ma(), rp.mb(), tol * length).value / length;
    return rule - mean;
}

BranchPair b_pair_powermean(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp) {
    require_matching_m(rp, cp);
    const double q = cp.q();
    const double m = cp.m();
    const double l2 = rp.lambda() * rp.lambda();
    const double r2 = (1.0 - rp.lambda()) * (1.0 - rp.lambda());
    const WeightMoments w = weight_moments(rp.theta(), cp.alpha());

    const double d_ma = dq(fprime, rp.ma(), q);
    const double d_mb = dq(fprime, rp.mb(), q);
    const double d_c = dq(fprime, rp.c(), q);
    const double d_mc = dq(fprime, rp.mc(), q);
    const double d_a = dq(fprime, rp.a(), q);
    const double d_b = dq(fprime, rp.b(), q);

    const double inv_q = 1.0 / q;
    BranchPair out{};
    out.first = l2 * std::pow(d_ma * w.a2 + m * d_c * w.a3, inv_q)
                + r2 * std::pow(d_mb * w.a2 + m * d_c * w.a3, inv_q);
    out.second = l2 * std::pow(d_mc * w.a4 + m * d_a * w.a5, inv_q)
                 + r2 * std::pow(d_mc * w.a4 + m * d_b * w.a5, inv_q);
    return out;
}

double bound_powermean(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp) {
    const BranchPair b = b_pair_powermean(fprime, rp, cp);
    const double scale = rp.m() * (rp.b() - rp.a());
    return scale * std::pow(a1(rp.theta()), 1.0 - 1.0 / cp.q()) * std::min(b.first, b.second);
}

BranchPair b_pair_holder(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp) {
    if (!cp.p())
        throw ParameterError("Hölder route requires q > 1");
    require_matching_m(rp, cp);
    const double q = cp.q();
    const double alpha = cp.alpha();
    const double m = cp.m();
    const double l2 = rp.lambda() * rp.lambda();
    const double r2 = (1.0 - rp.lambda()) * (1.0 - rp.lambda());

    const double e1 = e_coeff(dq(fprime, rp.ma(), q), dq(fprime, rp.c(), q), alpha, m);
    const double e2 = e_coeff(dq(fprime, rp.mb(), q), dq(fprime, rp.c(), q), alpha, m);
    const double e3 = e_coeff(dq(fprime, rp.mc(), q), dq(fprime, rp.a(), q), alpha, m);
    const double e4 = e_coeff(dq(fprime, rp.mc(), q), dq(fprime, rp.b(), q), alpha, m);

    const double inv_q = 1.0 / q;
    return BranchPair{l2 * std::pow(e1, inv_q) + r2 * std::pow(e2, inv_q),
                      l2 * std::pow(e3, inv_q) + r2 * std::pow(e4, inv_q)};
}

double bound_holder(const RealFn& fprime, const RuleParams& rp, const ConvexityParams& cp) {
    const BranchPair b = b_pair_holder(fprime, rp, cp);
    const double p = *cp.p();
    const double scale = rp.m() * (rp.b() - rp.a());
    return scale * std::pow(holder_factor(rp.theta(), p), 1.0 / p) * std::min(b.first, b.second);
}

BoundReport bound_report(const RealFn& f, const RealFn& fprime, const RuleParams& rp,
                         const ConvexityParams& cp, double tol) {
    BoundReport r;
    r.defect = defect(f, rp, tol);

    const BranchPair pm = b_pair_powermean(fprime, rp, cp);
    r.b1 = pm.first;
    r.b2 = pm.second;
    r.pm_argmin = argmin(pm.first, pm.second);
    r.bound_powermean = bound_powermean(fprime, rp, cp);
    r.margin_pm = *r.bound_powermean - std::abs(r.defect);

    if (cp.p()) {
        const BranchPair h = b_pair_holder(fprime, rp, cp);
        r.b3 = h.first;
        r.b4 = h.second;
        r.h_argmin = argmin(h.first, h.second);
        r.bound_holder = bound_holder(fprime, rp, cp);
        r.margin_h = *r.bound_holder - std::abs(r.defect);
    }
    return r;
}

HermiteHadamard hermite_hadamard(const RealFn& f, double a, double b, double tol) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw ParameterError("a < b required");
    const double length = b - a;
    HermiteHadamard hh{};
    hh.lhs = checked(f, 0.5 * (a + b));
    hh.mid = integrate(f, a, b, tol * length).value / length;
    hh.rhs = 0.5 * (checked(f, a) + checked(f, b));
    return hh;
}

double classical_simpson_bound(double f4_sup, double a, double b) {
    if (!std::isfinite(f4_sup) || f4_sup < 0.0)
        throw ParameterError("f4_sup must be a finite non-negative real");
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw ParameterError("a < b required");
    const double h = b - a;
    return f4_sup * h * h * h * h / 2880.0;
}

} // namespace quadbound
