#include "quadbound/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "quadbound/error.hpp"

namespace quadbound {

namespace {

constexpr int kReferencePoints = 65;

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

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    v.back() = hi;
    return v;
}

double point(double x, double y, double t, double m) { return t * x + m * (1.0 - t) * y; }

} // namespace

double convexity_violation(const RealFn& g, double alpha, double m, double x, double y, double t) {
    const double ta = std::pow(t, alpha);
    return checked(g, point(x, y, t, m)) - (ta * checked(g, x) + m * (1.0 - ta) * checked(g, y));
}

Certificate check_alpha_m_convex(const RealFn& g, double alpha, double m, double b,
                                 const SamplingSpec& spec) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0)
        throw ParameterError("alpha must lie in [0,1]");
    if (!std::isfinite(m) || m < 0.0 || m > 1.0)
        throw ParameterError("m must lie in [0,1]");
    if (!std::isfinite(b) || b <= 0.0)
        throw ParameterError("b must be positive");
    if (spec.grid_points < 1 || spec.random_triples < 0)
        throw ParameterError("sampling spec must have at least one grid point");

    double scale = 1.0;
    for (double x : linspace(0.0, b, kReferencePoints))
        scale = std::max(scale, std::abs(checked(g, x)));

    Certificate cert;
    cert.slack = spec.slack * scale;
    cert.worst_violation = -std::numeric_limits<double>::infinity();

    auto consider = [&](double x, double y, double t, double violation) {
        ++cert.samples_checked;
        if (violation > cert.worst_violation) {
            cert.worst_violation = violation;
            cert.witness = Witness{x, y, t};
        }
    };

    const std::vector<double> xs = linspace(0.0, b, spec.grid_points);
    const std::vector<double> ts = linspace(0.0, 1.0, spec.grid_points);
    std::vector<double> gx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        gx[i] = checked(g, xs[i]);
    std::vector<double> tpow(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k)
        tpow[k] = std::pow(ts[k], alpha);

    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            for (std::size_t k = 0; k < ts.size(); ++k) {
                const double lhs = checked(g, point(xs[i], xs[j], ts[k], m));
                const double rhs = tpow[k] * gx[i] + m * (1.0 - tpow[k]) * gx[j];
                consider(xs[i], xs[j], ts[k], lhs - rhs);
            }
        }
    }

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 0; n < spec.random_triples; ++n) {
        const double x = b * unit(rng);
        const double y = b * unit(rng);
        const double t = unit(rng);
        consider(x, y, t, convexity_violation(g, alpha, m, x, y, t));
    }

    cert.passed = cert.worst_violation <= cert.slack;
    if (cert.passed)
        cert.witness.reset();
    return cert;
}

const char* to_string(ClassKind kind) noexcept {
    switch (kind) {
    case ClassKind::increasing:
        return "increasing";
    case ClassKind::alpha_starshaped:
        return "alpha_starshaped";
    case ClassKind::starshaped:
        return "starshaped";
    case ClassKind::m_convex:
        return "m_convex";
    case ClassKind::convex:
        return "convex";
    case ClassKind::alpha_convex:
        return "alpha_convex";
    }
    return "?";
}

std::vector<ClassTag> classify(const RealFn& g, double b, std::span<const double> alpha_probe,
                               std::span<const double> m_probe, const SamplingSpec& spec) {
    struct Probe {
        ClassKind kind;
        double alpha;
        double m;
    };
    std::vector<Probe> probes{{ClassKind::increasing, 0.0, 0.0}};
    for (double a : alpha_probe)
        probes.push_back({ClassKind::alpha_starshaped, a, 0.0});
    probes.push_back({ClassKind::starshaped, 1.0, 0.0});
    for (double m : m_probe)
        probes.push_back({ClassKind::m_convex, 1.0, m});
    probes.push_back({ClassKind::convex, 1.0, 1.0});
    for (double a : alpha_probe)
        probes.push_back({ClassKind::alpha_convex, a, 1.0});

    const bool nonpositive_at_zero = checked(g, 0.0) <= 0.0;
    std::vector<ClassTag> tags;
    for (const Probe& p : probes) {
        if (check_alpha_m_convex(g, p.alpha, p.m, b, spec).passed)
            tags.push_back(ClassTag{p.kind, p.alpha, p.m, nonpositive_at_zero});
    }
    return tags;
}

std::string describe(const ClassTag& tag) {
    std::ostringstream out;
    out << to_string(tag.kind) << " (alpha=" << tag.alpha << ", m=" << tag.m << ")";
    if (tag.k_member)
        out << " [in K]";
    return out.str();
}

} // namespace quadbound
