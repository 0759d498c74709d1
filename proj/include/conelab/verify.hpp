#pragma once

/*
 * Randomized property suites. Every case draws from its own RNG stream
 * derived from (master seed, check name, case index), so suites can fan out
 * across threads and still produce identical reports.
 */

#include "conelab/cone_map.hpp"
#include "conelab/gauge.hpp"

#include <cstdint>
#include <vector>

namespace conelab {

struct CheckResult {
    std::string name;
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    double wall_ms = 0.0;  // informational; never serialized (reports must be byte-stable)

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// The antimorphism laws, checked on `samples` random interior pairs each:
// gauge identity M(x/y) = M(g(y)/g(x)), antihomogeneity (at 1e-12), order
// reversal, and d_T / d_H isometry at `check_tol`.
VerificationReport verify_antimorphism(const ConeMap& g, std::uint64_t seed, int samples,
                                       double check_tol = 1e-9);

struct FixedPointReport {
    double displacement_at_x;   // |S_x(x) - x|_u, should vanish
    double min_displacement;    // min over sampled y != x of |S_x(y) - y|_u
    double gx_fixed_residual;   // |G_x(x) - x|_u
    double g_fixed_residual;    // |g(x) - x|_u
    bool implication_holds;     // gx residual <= tol forces g residual <= 10 tol
};

// S_x fixes x and nothing else nearby; and a fixed point of G_x at x forces
// one of g (checked at tolerance tol).
FixedPointReport fixed_point_probe(const ConeMap& g, const Vec& x, std::uint64_t seed, int samples,
                                   double tol = 1e-6);

// g restricted to the 2-d subcone C(x,y), expressed in generator coordinates
// on both sides: h = A_img o g o A_dom^{-1}, a self-map of the open quadrant.
struct Restriction2D {
    Subcone2D dom, img;
    std::function<Eigen::Vector2d(const Eigen::Vector2d&)> h;
    double planarity_residual;  // how far g strays from the image plane
};
Restriction2D restrict_to_2d(const ConeMap& g, const Vec& x, const Vec& y);

// Fit of the canonical quadrant antimorphism h(z) = (a1/z_{s(1)}, a2/z_{s(2)})
// with s the identity or the swap; errors when neither fits at 1e-6.
struct Canonical2DFit {
    double a1, a2;
    bool swapped;
    double residual;  // max relative error over random quadrant samples
};
Canonical2DFit fit_2d_canonical(const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& h,
                                std::uint64_t seed = 0, int samples = 100);

}  // namespace conelab
