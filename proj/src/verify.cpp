#include "conelab/verify.hpp"

#include "conelab/derivative.hpp"
#include "conelab/kernels.hpp"

#include <chrono>
#include <cmath>

namespace conelab {

namespace {

using clock_type = std::chrono::steady_clock;

CheckResult run_check(const std::string& name, std::uint64_t seed, int samples, double tolerance,
                      const std::function<double(Rng&)>& case_residual) {
    auto residuals = kernels::run_cases<double>(samples, [&](int i) {
        Rng rng(Rng::derive(seed, name, static_cast<std::uint64_t>(i)));
        return case_residual(rng);
    });
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    return {name, samples, worst, tolerance, worst <= tolerance};
}

}  // namespace

VerificationReport verify_antimorphism(const ConeMap& g, std::uint64_t seed, int samples,
                                       double check_tol) {
    const Cone& K = *g.cone;
    auto t0 = clock_type::now();
    VerificationReport rep;
    rep.suite = "antimorphism(" + g.name + " on " + K.name() + ")";
    rep.seed = seed;

    rep.checks.push_back(run_check("gauge-identity", seed, samples, check_tol, [&](Rng& rng) {
        Vec x = random_interior(K, rng);
        Vec y = random_interior(K, rng);
        return rel_diff(gauge(K, x, y), gauge(K, g(y), g(x)));
    }));

    rep.checks.push_back(run_check("antihomogeneity", seed, samples, 1e-12, [&](Rng& rng) {
        Vec x = random_interior(K, rng);
        double lam = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
        Vec lhs = g(lam * x);
        Vec rhs = g(x) / lam;
        return order_unit_norm(K, lhs - rhs) / (1.0 + order_unit_norm(K, rhs));
    }));

    rep.checks.push_back(run_check("order-reversal", seed, samples, 1e-9, [&](Rng& rng) {
        Vec x = random_interior(K, rng);
        Vec c = random_interior(K, rng);
        c *= rng.uniform(0.1, 1.0) * order_unit_norm(K, x) / order_unit_norm(K, c);
        Vec y = x + c;  // x <= y, so g(y) <= g(x) must hold
        Vec d = g(x) - g(y);
        return std::max(0.0, -K.margin(d)) / (1.0 + d.norm());
    }));

    rep.checks.push_back(run_check("thompson-isometry", seed, samples, check_tol, [&](Rng& rng) {
        Vec x = random_interior(K, rng);
        Vec y = random_interior(K, rng);
        double a = thompson(K, x, y), b = thompson(K, g(x), g(y));
        return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
    }));

    rep.checks.push_back(run_check("hilbert-isometry", seed, samples, check_tol, [&](Rng& rng) {
        Vec x = random_interior(K, rng);
        Vec y = random_interior(K, rng);
        double a = hilbert(K, x, y), b = hilbert(K, g(x), g(y));
        return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
    }));

    rep.wall_ms = std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
    return rep;
}

FixedPointReport fixed_point_probe(const ConeMap& g, const Vec& x, std::uint64_t seed, int samples,
                                   double tol) {
    const Cone& K = *g.cone;
    auto L = linearize(g, x);
    ConeMap S = symmetry(g, x);

    FixedPointReport rep{};
    rep.displacement_at_x = order_unit_norm(K, S(x) - x);
    rep.gx_fixed_residual = order_unit_norm(K, L.apply(x) - x);
    rep.g_fixed_residual = order_unit_norm(K, g(x) - x);
    rep.implication_holds = rep.gx_fixed_residual > tol || rep.g_fixed_residual <= 10.0 * tol;

    auto displacements = kernels::run_cases<double>(samples, [&](int i) {
        Rng rng(Rng::derive(seed, "fixed-point-probe", static_cast<std::uint64_t>(i)));
        Vec y = random_interior(K, rng);
        while (thompson(K, x, y) < 0.1) y = random_interior(K, rng);
        return order_unit_norm(K, S(y) - y);
    });
    rep.min_displacement = *std::min_element(displacements.begin(), displacements.end());
    return rep;
}

Restriction2D restrict_to_2d(const ConeMap& g, const Vec& x, const Vec& y) {
    const Cone& K = *g.cone;
    require_interior(K, x, "restrict_to_2d: x");
    require_interior(K, y, "restrict_to_2d: y");

    Restriction2D out;
    out.dom = subcone2d(K, x, y);
    Vec gx = g(x), gy = g(y);
    out.img = subcone2d(K, gx, gy);

    const Subcone2D dom = out.dom;
    const Subcone2D img = out.img;
    auto geval = g.eval;
    out.h = [dom, img, geval](const Eigen::Vector2d& z) -> Eigen::Vector2d {
        Vec w = geval(z[0] * dom.r + z[1] * dom.s);
        return img.A * w;
    };

    // antimorphisms carry 2-d subcones to 2-d subcones; measure how exactly
    Mat P(K.dim(), 2);
    P.col(0) = img.r;
    P.col(1) = img.s;
    Mat proj = P * (P.transpose() * P).inverse() * P.transpose();
    double worst = 0.0;
    for (double a : {0.3, 1.0, 2.5}) {
        for (double b : {0.4, 1.0, 3.0}) {
            Vec probe = a * x + b * y;
            if (contains(K, probe).region != Region::Interior) continue;
            Vec w = g(probe);
            worst = std::max(worst, (w - proj * w).norm() / w.norm());
        }
    }
    out.planarity_residual = worst;
    return out;
}

Canonical2DFit fit_2d_canonical(const std::function<Eigen::Vector2d(const Eigen::Vector2d&)>& h,
                                std::uint64_t seed, int samples) {
    Eigen::Vector2d at11 = h(Eigen::Vector2d(1.0, 1.0));
    double a1 = at11[0], a2 = at11[1];
    if (!(a1 > 0.0 && a2 > 0.0))
        throw std::domain_error("fit_2d_canonical: map does not send (1,1) into the open quadrant");

    Eigen::Vector2d probe = h(Eigen::Vector2d(2.0, 1.0));
    double err_id = (probe - Eigen::Vector2d(a1 / 2.0, a2)).norm() / at11.norm();
    double err_swap = (probe - Eigen::Vector2d(a1, a2 / 2.0)).norm() / at11.norm();
    bool swapped = err_swap < err_id;
    if (std::min(err_id, err_swap) > 1e-6)
        throw std::domain_error("fit_2d_canonical: neither coordinate assignment fits at 1e-6");

    auto canon = [&](const Eigen::Vector2d& z) -> Eigen::Vector2d {
        return swapped ? Eigen::Vector2d(a1 / z[1], a2 / z[0]) : Eigen::Vector2d(a1 / z[0], a2 / z[1]);
    };

    Rng rng(Rng::derive(seed, "fit-2d-canonical", 0));
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        Eigen::Vector2d z(std::exp(rng.uniform(std::log(0.1), std::log(10.0))),
                          std::exp(rng.uniform(std::log(0.1), std::log(10.0))));
        Eigen::Vector2d want = canon(z);
        worst = std::max(worst, (h(z) - want).norm() / want.norm());
    }
    return {a1, a2, swapped, worst};
}

}  // namespace conelab
