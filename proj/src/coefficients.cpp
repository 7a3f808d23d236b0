#include "quadbound/coefficients.hpp"

#include <cmath>

#include "quadbound/error.hpp"

namespace quadbound {

namespace {

void require_unit(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw ParameterError(std::string(what) + " must lie in [0,1]");
}

} // namespace

double a1(double theta) {
    require_unit(theta, "theta");
    return theta * theta - theta + 0.5;
}

WeightMoments weight_moments(double theta, double alpha) {
    require_unit(theta, "theta");
    require_unit(alpha, "alpha");

    const double s = 1.0 - theta;
    const double denom = (alpha + 1.0) * (alpha + 2.0);
    const double tp = std::pow(theta, alpha + 2.0);
    const double sp = std::pow(s, alpha + 2.0);

    WeightMoments w{};
    w.a2 = 2.0 * tp / denom - theta / (alpha + 1.0) + 1.0 / (alpha + 2.0);
    w.a3 = theta * theta - 2.0 * tp / denom - alpha * theta / (alpha + 1.0)
           + alpha / (2.0 * (alpha + 2.0));
    w.a4 = 2.0 * sp / denom - s / (alpha + 1.0) + 1.0 / (alpha + 2.0);
    w.a5 = s * s - 2.0 * sp / denom - alpha * s / (alpha + 1.0) + alpha / (2.0 * (alpha + 2.0));
    return w;
}

double holder_factor(double theta, double p) {
    require_unit(theta, "theta");
    if (!std::isfinite(p) || p <= 0.0)
        throw ParameterError("p must be a positive finite real");
    return (std::pow(theta, p + 1.0) + std::pow(1.0 - theta, p + 1.0)) / (p + 1.0);
}

double e_coeff(double x_q, double y_q, double alpha, double m) {
    if (!(x_q >= 0.0) || !(y_q >= 0.0) || !std::isfinite(x_q) || !std::isfinite(y_q))
        throw ParameterError("e_coeff slots must be finite and non-negative");
    require_unit(alpha, "alpha");
    if (!std::isfinite(m) || m <= 0.0 || m > 1.0)
        throw ParameterError("m must lie in (0,1]");
    return (x_q + alpha * m * y_q) / (alpha + 1.0);
}

} // namespace quadbound
