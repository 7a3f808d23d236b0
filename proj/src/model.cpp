#include "quadbound/model.hpp"

#include <algorithm>
#include <cmath>

#include "quadbound/error.hpp"

namespace quadbound {

namespace {

bool in_closed_unit(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

bool in_half_open_unit(double v) { return std::isfinite(v) && v > 0.0 && v <= 1.0; }

} // namespace

RuleParams::RuleParams(double theta, double lambda, double m, double a, double b)
    : theta_(theta), lambda_(lambda), m_(m), a_(a), b_(b),
      c_(std::clamp((1.0 - lambda) * a + lambda * b, a, b)) {}

RuleParams RuleParams::make(double theta, double lambda, double m, double a, double b) {
    if (!in_closed_unit(theta))
        throw ParameterError("theta must lie in [0,1]");
    if (!in_closed_unit(lambda))
        throw ParameterError("lambda must lie in [0,1]");
    if (!in_half_open_unit(m))
        throw ParameterError("m must lie in (0,1]");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw ParameterError("interval endpoints must be finite");
    if (a < 0.0)
        throw ParameterError("a >= 0 required");
    if (!(a < b))
        throw ParameterError("a < b required");
    return RuleParams(theta, lambda, m, a, b);
}

ConvexityParams::ConvexityParams(double alpha, double m, double q)
    : alpha_(alpha), m_(m), q_(q) {
    if (q > 1.0)
        p_ = q / (q - 1.0);
}

ConvexityParams ConvexityParams::make(double alpha, double m, double q) {
    if (!in_closed_unit(alpha))
        throw ParameterError("alpha must lie in [0,1]");
    if (!in_half_open_unit(m))
        throw ParameterError("m must lie in (0,1]");
    if (!std::isfinite(q) || q < 1.0)
        throw ParameterError("q must be a finite real >= 1");
    return ConvexityParams(alpha, m, q);
}

const char* to_string(Branch branch) noexcept {
    switch (branch) {
    case Branch::first:
        return "first";
    case Branch::second:
        return "second";
    case Branch::tie:
        return "tie";
    }
    return "?";
}

} // namespace quadbound
