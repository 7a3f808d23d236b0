#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadbound/model.hpp"

namespace quadbound {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct SamplingSpec {
    // Each of x, y in [0, b] and t in [0, 1] takes this many equally spaced values.
    int grid_points = 64;
    int random_triples = 10000;
    std::uint64_t seed = kDefaultSeed;
    // Relative slack; scaled by max(1, max |g|) over a fixed reference grid.
    double slack = 1e-9;
};

/// Largest lhs - rhs of g(tx + m(1-t)y) <= t^alpha g(x) + m(1 - t^alpha) g(y)
/// over the sampled triples. m = 0 is allowed here.
///
/// A passing certificate only records that no sample refuted the inequality.
Certificate check_alpha_m_convex(const RealFn& g, double alpha, double m, double b,
                                 const SamplingSpec& spec = {});

/// lhs - rhs of the defining inequality at a single triple.
double convexity_violation(const RealFn& g, double alpha, double m, double x, double y, double t);

enum class ClassKind { increasing, alpha_starshaped, starshaped, m_convex, convex, alpha_convex };

const char* to_string(ClassKind kind) noexcept;

struct ClassTag {
    ClassKind kind;
    double alpha;
    double m;
    // g(0) <= 0 together with the passing certificate: membership of K_m^alpha(b).
    bool k_member;
};

/// Certifies g at each point of the class table and returns the tags that pass:
/// (0,0), (alpha,0) and (alpha,1) for each probe alpha, (1,0), (1,m) for each
/// probe m, and (1,1).
std::vector<ClassTag> classify(const RealFn& g, double b, std::span<const double> alpha_probe,
                               std::span<const double> m_probe, const SamplingSpec& spec = {});

std::string describe(const ClassTag& tag);

} // namespace quadbound
