#include "conelab/gauge.hpp"

#include "conelab/kernels.hpp"

#include <cmath>

namespace conelab {

namespace {

constexpr double kBracketCap = 1152921504606846976.0;  // 2^60
constexpr double kRayCap = 1099511627776.0;            // 2^40

// Membership bisection driven to machine precision; the margin of each model
// costs O(n), so the ~80 evaluations are cheap.
double bisect_boundary(const std::function<double(double)>& m, double t_in, double t_out) {
    for (int i = 0; i < 200 && (t_out - t_in) > 4e-16 * std::max(1.0, std::abs(t_in) + std::abs(t_out)); ++i) {
        double mid = 0.5 * (t_in + t_out);
        if (m(mid) >= 0.0)
            t_in = mid;
        else
            t_out = mid;
    }
    return 0.5 * (t_in + t_out);
}

}  // namespace

std::optional<double> ray_exit(const Cone& K, const Vec& from, const Vec& dir) {
    auto m = [&](double t) { return K.margin(from + t * dir); };
    if (m(0.0) < 0.0) throw std::domain_error("ray_exit: ray base is not in the cone");
    double hi = 1.0;
    while (m(hi) >= 0.0) {
        hi *= 2.0;
        if (hi > kRayCap) return std::nullopt;
    }
    return bisect_boundary(m, hi * 0.5 >= 1.0 ? hi * 0.5 : 0.0, hi);
}

double gauge_raw(const Cone& K, const Vec& x, const Vec& y) {
    if (auto cf = K.gauge_closed(x, y)) return *cf;
    auto m = [&](double b) { return K.margin(b * y - x); };
    if (m(0.0) >= 0.0) return 0.0;  // -x already in C
    double hi = 1.0;
    while (m(hi) < 0.0) {
        hi *= 2.0;
        if (hi > kBracketCap) throw std::domain_error("gauge: bracket doubling exceeded 2^60");
    }
    double lo = hi > 1.0 ? hi * 0.5 : 0.0;
    // the feasible set {b : b y - x in C} is an upward ray, so a single
    // crossing separates lo from hi
    for (int i = 0; i < 200 && (hi - lo) > 4e-16 * std::max(hi, 1e-300); ++i) {
        double mid = 0.5 * (lo + hi);
        if (m(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double gauge(const Cone& K, const Vec& x, const Vec& y, double boundary_tol) {
    K.check_dim(x, "gauge x");
    K.check_dim(y, "gauge y");
    require_member(K, x, "gauge: x", boundary_tol);
    require_interior(K, y, "gauge: y", boundary_tol);
    if (x.isZero(0.0)) return 0.0;
    double v = gauge_raw(K, x, y);
    return v < 0.0 ? 0.0 : v;  // membership tolerance can let slightly-outside x through
}

VariationalGauge gauge_variational(const Cone& K, const Vec& x, const Vec& y, int grid,
                                   double boundary_tol) {
    K.check_dim(x, "gauge_variational x");
    K.check_dim(y, "gauge_variational y");
    if (grid < 100) throw std::invalid_argument("gauge_variational: grid must be >= 100");
    require_member(K, x, "gauge_variational: x", boundary_tol);
    require_interior(K, y, "gauge_variational: y", boundary_tol);

    int d = K.state_param_dim();
    if (d == 0) {
        auto states = K.finite_extreme_states();
        auto best = kernels::best_state_ratio(states, x, y);
        return {best.value, states[static_cast<size_t>(best.index)]};
    }

    auto dirs = direction_grid(d, grid);
    std::vector<State> states;
    states.reserve(dirs.size());
    for (const auto& w : dirs) states.push_back(K.state_from_direction(w));
    auto best = kernels::best_state_ratio(states, x, y);

    // Compass refinement on the raw direction parameter. The objective is
    // scale-invariant in w, so we renormalize as we go; every evaluation goes
    // through the same extreme-state family as the grid scan.
    Vec w = dirs[static_cast<size_t>(best.index)];
    auto ratio = [&](const Vec& cand) -> double {
        State s = K.state_from_direction(cand);
        return s(x) / s(y);
    };
    double fw = best.value;
    for (double step = 0.5; step > 1e-7;) {
        bool improved = false;
        for (int i = 0; i < d; ++i) {
            for (double sgn : {1.0, -1.0}) {
                Vec cand = w;
                cand[i] += sgn * step;
                if (cand.norm() < 1e-8) continue;
                double fc = ratio(cand);
                if (fc > fw) {
                    fw = fc;
                    w = cand / cand.norm();
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return {fw, K.state_from_direction(w)};
}

double thompson(const Cone& K, const Vec& x, const Vec& y, double boundary_tol) {
    require_interior(K, x, "thompson: x", boundary_tol);
    require_interior(K, y, "thompson: y", boundary_tol);
    return std::max(std::log(gauge_raw(K, x, y)), std::log(gauge_raw(K, y, x)));
}

double hilbert(const Cone& K, const Vec& x, const Vec& y, double boundary_tol) {
    require_interior(K, x, "hilbert: x", boundary_tol);
    require_interior(K, y, "hilbert: y", boundary_tol);
    return std::log(gauge_raw(K, x, y)) + std::log(gauge_raw(K, y, x));
}

double order_unit_norm(const Cone& K, const Vec& v) {
    K.check_dim(v, "order_unit_norm");
    if (auto cf = K.norm_closed(v)) return *cf;
    const Vec& u = K.unit();
    double a = gauge_raw(K, v, u);
    double b = gauge_raw(K, -v, u);
    return std::max({a, b, 0.0});
}

std::vector<State> supporting_states(const Cone& K, const Vec& b, int probes, double boundary_tol) {
    K.check_dim(b, "supporting_states");
    if (b.norm() == 0.0) throw std::domain_error("supporting_states: apex has no supporting state");
    auto verdict = contains(K, b, boundary_tol);
    if (verdict.region != Region::Boundary)
        throw std::domain_error("supporting_states: point is not on the boundary of " + K.name());

    auto states = K.states_at_boundary(b, boundary_tol);

    // drop duplicates at angular tolerance 1e-6
    std::vector<State> out;
    for (const auto& s : states) {
        bool dup = false;
        for (const auto& t : out) {
            double c = s.covector.dot(t.covector) / (s.covector.norm() * t.covector.norm());
            if (std::acos(std::min(1.0, std::max(-1.0, c))) <= 1e-6) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(s);
    }

    // sanity: vanish at b, stay nonnegative along probe rays through the cone
    auto dirs = direction_grid(K.dim(), std::max(probes, 4));
    for (const auto& s : out) {
        if (std::abs(s(b)) > 1e-7 * (1.0 + b.norm()))
            throw std::domain_error("supporting_states: constructed state does not vanish at b");
        for (int k = 0; k < probes && k < static_cast<int>(dirs.size()); ++k) {
            auto t = ray_exit(K, K.unit(), dirs[k]);
            Vec probe = t ? Vec(K.unit() + (*t) * dirs[k]) : Vec(K.unit() + dirs[k]);
            if (s(probe) < -1e-9 * (1.0 + probe.norm()))
                throw std::domain_error("supporting_states: constructed state is negative on the cone");
        }
    }
    return out;
}

State strictly_positive_state(const Cone& K, int validate_samples) {
    State rho{K.strictly_positive_covector()};
    Rng rng(Rng::derive(0xC0DE5EEDull, "strictly-positive-state", static_cast<std::uint64_t>(K.dim())));
    for (int i = 0; i < validate_samples; ++i) {
        Vec b = random_boundary(K, rng);
        if (rho(b) <= 0.0)
            throw std::domain_error("strictly_positive_state: functional vanishes on a boundary sample");
    }
    return rho;
}

Vec random_interior(const Cone& K, Rng& rng, double max_depth) {
    const Vec& u = K.unit();
    Vec z = rng.unit_vec(K.dim());
    auto t = ray_exit(K, u, z);
    if (!t) {
        z = -z;
        t = ray_exit(K, u, z);  // -z cannot also sit in the recession cone
    }
    if (!t) throw std::domain_error("random_interior: cone is not pointed?");
    Vec v = u + rng.uniform(0.0, max_depth) * (*t) * z;
    return std::exp(rng.uniform(-1.0, 1.0)) * v;
}

Vec random_boundary(const Cone& K, Rng& rng) {
    const Vec& u = K.unit();
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec z = rng.unit_vec(K.dim());
        auto t = ray_exit(K, u, z);
        if (!t) {
            z = -z;
            t = ray_exit(K, u, z);
        }
        if (!t) continue;
        return u + (*t) * z;
    }
    throw std::domain_error("random_boundary: no boundary hit found");
}

Subcone2D subcone2d(const Cone& K, const Vec& x, const Vec& y) {
    K.check_dim(x, "subcone2d x");
    K.check_dim(y, "subcone2d y");
    require_interior(K, x, "subcone2d: x");

    Vec e1 = x / x.norm();
    Vec yperp = y - y.dot(e1) * e1;
    if (yperp.norm() <= 1e-10 * std::max(1.0, y.norm()))
        throw std::domain_error("subcone2d: x and y are linearly dependent");
    Vec e2 = yperp / yperp.norm();

    auto dir = [&](double th) -> Vec { return std::cos(th) * e1 + std::sin(th) * e2; };
    auto m = [&](double th) { return K.margin(dir(th)); };
    // Directions of C inside the plane form one closed arc shorter than pi
    // around theta = 0 (x interior, C pointed), so the antipode -e1 lies
    // outside and each half-interval brackets exactly one crossing.
    auto edge = [&](double lo_in, double hi_out) {
        double lo = lo_in, hi = hi_out;
        for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-16; ++i) {
            double mid = 0.5 * (lo + hi);
            if (m(mid) >= 0.0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    double th_plus = edge(0.0, M_PI);
    double th_minus = edge(0.0, -M_PI);

    Subcone2D out;
    out.r = dir(th_plus);
    out.s = dir(th_minus);
    Mat B(K.dim(), 2);
    B.col(0) = out.r;
    B.col(1) = out.s;
    out.A = (B.transpose() * B).inverse() * B.transpose();
    out.x_coords = out.A * x;
    if (!(out.x_coords[0] > 0.0 && out.x_coords[1] > 0.0))
        throw std::domain_error("subcone2d: interior point has non-positive generator coordinates");
    return out;
}

}  // namespace conelab
