#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace quadbound {

using RealFn = std::function<double(double)>;

/// One member of the (theta, lambda) quadrature family on [ma, mb].
///
/// theta weighs the interior node against the two endpoints, lambda places
/// the interior node at C = (1 - lambda) a + lambda b and mixes the endpoint
/// values, and m in (0, 1] scales the interval.
class RuleParams {
public:
    static RuleParams make(double theta, double lambda, double m, double a, double b);

    double theta() const noexcept { return theta_; }
    double lambda() const noexcept { return lambda_; }
    double m() const noexcept { return m_; }
    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

    /// C = (1 - lambda) a + lambda b, clamped into [a, b].
    double c() const noexcept { return c_; }
    double ma() const noexcept { return m_ * a_; }
    double mb() const noexcept { return m_ * b_; }
    double mc() const noexcept { return m_ * c_; }

private:
    RuleParams(double theta, double lambda, double m, double a, double b);

    double theta_;
    double lambda_;
    double m_;
    double a_;
    double b_;
    double c_;
};

inline RuleParams make_rule_params(double theta, double lambda, double m, double a, double b) {
    return RuleParams::make(theta, lambda, m, a, b);
}

/// The (alpha, m, q) triple under which |f'|^q is claimed (alpha, m)-convex.
/// The Hölder conjugate p = q / (q - 1) exists only for q > 1.
class ConvexityParams {
public:
    static ConvexityParams make(double alpha, double m, double q);

    double alpha() const noexcept { return alpha_; }
    double m() const noexcept { return m_; }
    double q() const noexcept { return q_; }
    std::optional<double> p() const noexcept { return p_; }

    bool operator==(const ConvexityParams&) const = default;

private:
    ConvexityParams(double alpha, double m, double q);

    double alpha_;
    double m_;
    double q_;
    std::optional<double> p_;
};

/// A corpus entry. Expressions are kept as text; see expr.hpp for the grammar.
struct FunctionSpec {
    std::string name;
    std::string f_expr;
    std::string fprime_expr;
    double domain_b = 1.0;
    std::vector<ConvexityParams> claimed;
    std::optional<double> f4_sup;
};

enum class Branch { first, second, tie };

const char* to_string(Branch branch) noexcept;

struct BoundReport {
    double defect = 0.0;

    std::optional<double> bound_powermean;
    double b1 = 0.0;
    double b2 = 0.0;
    Branch pm_argmin = Branch::tie;

    // Absent when q == 1; the Hölder route needs q > 1.
    std::optional<double> bound_holder;
    std::optional<double> b3;
    std::optional<double> b4;
    std::optional<Branch> h_argmin;

    std::optional<double> margin_pm;
    std::optional<double> margin_h;
};

struct Witness {
    double x;
    double y;
    double t;
};

/// Sampling-based non-refutation record for an (alpha, m)-convexity check.
/// A pass means no sampled triple violated the inequality by more than slack.
struct Certificate {
    bool passed = true;
    std::size_t samples_checked = 0;
    double worst_violation = 0.0;
    double slack = 0.0;
    std::optional<Witness> witness;
};

} // namespace quadbound
