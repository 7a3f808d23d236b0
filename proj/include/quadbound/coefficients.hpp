#pragma once

// Closed-form weight integrals of the two error bounds. Every function here
// is O(1) and evaluates the formula as printed, term by term.

namespace quadbound {

/// Split of the kernel integral A1 = \int_0^1 |t - theta| dt into its t^alpha
/// and (1 - t^alpha) parts, for the kernel |t - theta| (a2, a3) and for the
/// reflected kernel |1 - theta - t| (a4, a5).
struct WeightMoments {
    double a2;
    double a3;
    double a4;
    double a5;
};

/// theta^2 - theta + 1/2.
double a1(double theta);

WeightMoments weight_moments(double theta, double alpha);

/// (theta^{p+1} + (1 - theta)^{p+1}) / (p + 1), i.e. \int_0^1 |t - theta|^p dt.
double holder_factor(double theta, double p);

/// (x_q + alpha m y_q) / (alpha + 1): the integral of t^alpha x_q + m (1 - t^alpha) y_q
/// over [0, 1]. x_q is the endpoint slot, y_q the companion slot.
double e_coeff(double x_q, double y_q, double alpha, double m);

} // namespace quadbound
