#include "conelab/geodesic.hpp"

#include "conelab/derivative.hpp"
#include "conelab/rng.hpp"

#include <cmath>

namespace conelab {

namespace {

// boundary crossing of the section segment a + t d, t >= 0 (the body is
// bounded, so the exit always exists)
double section_exit(const Body2D& body, const Eigen::Vector2d& a, const Eigen::Vector2d& d) {
    auto m = [&](double t) { return body.section_margin(a + t * d); };
    if (m(0.0) < 0.0) throw std::domain_error("section_exit: base point is outside the body");
    double hi = 1.0;
    while (m(hi) >= 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw std::domain_error("section_exit: body appears unbounded");
    }
    double lo = hi * 0.5 >= 1.0 ? hi * 0.5 : 0.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-16 * std::max(1.0, hi); ++i) {
        double mid = 0.5 * (lo + hi);
        if (m(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Vec lift(const Eigen::Vector2d& z) {
    Vec v(3);
    v << z.x(), z.y(), 1.0;
    return v;
}

}  // namespace

TypeIGeodesic typeI_through(const Cone& K, const Vec& x, const Vec& z) {
    require_interior(K, x, "typeI_through: x");
    require_interior(K, z, "typeI_through: z");

    double mxz = gauge_raw(K, x, z);
    double mzx = gauge_raw(K, z, x);
    double t0 = 0.5 * (std::log(mxz) + std::log(mzx));  // = d_H(x,z)/2
    if (t0 <= 1e-10)
        throw std::domain_error("typeI_through: x and z are proportional; the type I line is not unique");

    double mu = std::sqrt(mxz / mzx);
    Vec zhat = mu * z;  // now M(x/zhat) = M(zhat/x) = e^{t0}

    TypeIGeodesic geo;
    geo.t0 = t0;
    geo.x = x;
    geo.zhat = zhat;
    double den = 2.0 * std::sinh(t0);
    geo.r = (zhat - std::exp(-t0) * x) / den;
    geo.s = (std::exp(t0) * x - zhat) / den;

    for (const Vec* b : {&geo.r, &geo.s}) {
        if (contains(K, *b, 1e-7).region != Region::Boundary)
            throw std::domain_error("typeI_through: generator left the boundary (numerical failure)");
    }
    return geo;
}

Vec typeI_point(const TypeIGeodesic& geo, double t) {
    return std::exp(t) * geo.r + std::exp(-t) * geo.s;
}

std::vector<Vec> sample_typeI(const TypeIGeodesic& geo, const std::vector<double>& ts) {
    std::vector<Vec> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(typeI_point(geo, t));
    return out;
}

double reflect_residual(const ConeMap& g, const TypeIGeodesic& geo, const std::vector<double>& ts) {
    const Cone& K = *g.cone;
    Vec x = geo.r + geo.s;
    ConeMap S = symmetry(g, x);
    double worst = 0.0;
    for (double t : ts) {
        Vec want = typeI_point(geo, -t);
        Vec got = S(typeI_point(geo, t));
        worst = std::max(worst, order_unit_norm(K, got - want) / (1.0 + order_unit_norm(K, want)));
    }
    return worst;
}

double boundary_gauge(const Cone& K, const Vec& eta, const Vec& x, double s) {
    if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("boundary_gauge: s must lie in (0,1]");
    if (contains(K, eta).region != Region::Boundary)
        throw std::domain_error("boundary_gauge: eta is not a boundary point");
    require_interior(K, x, "boundary_gauge: x");
    Vec y = (1.0 - s) * eta + s * x;
    double m = gauge(K, x, y);
    if (rel_diff(m, 1.0 / s) > 1e-9)
        throw std::domain_error("boundary_gauge: gauge misses 1/s beyond 1e-9 relative");
    return m;
}

HoroResult horo_limit(const Cone& K, const Vec& eta, const Vec& z, const std::vector<double>& s_seq,
                      int state_grid) {
    if (contains(K, eta).region != Region::Boundary)
        throw std::domain_error("horo_limit: eta is not a boundary point");
    require_member(K, z, "horo_limit: z");

    auto states = supporting_states(K, eta);
    if (states.size() != 1)
        throw std::domain_error("horo_limit: cone is not smooth at eta (supporting state not unique)");
    const State& phi = states.front();
    double phi_z = phi(z);
    if (!(phi_z > 0.0)) throw std::domain_error("horo_limit: phi(z) must be positive");

    const Vec& u = K.unit();
    HoroResult out;
    out.phi_z = phi_z;

    for (double s : s_seq) {
        if (!(s > 0.0 && s < 1.0)) throw std::domain_error("horo_limit: s values must lie in (0,1)");
        Vec ys = (1.0 - s) * eta + s * u;
        Vec zs = (1.0 - s) * z + s * u;
        double num = gauge(K, zs, ys);
        double den = gauge(K, u, ys);
        auto vg = gauge_variational(K, zs, ys, state_grid);
        out.rows.push_back({s, num / den, vg.argmax(eta)});
    }

    // estimates approach phi(z) like a power of s; fit the empirical order
    double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
    int cnt = 0;
    for (const auto& row : out.rows) {
        double err = std::abs(row.estimate - phi_z);
        if (err <= 0.0) continue;
        double lx = std::log(row.s), ly = std::log(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    out.slope = cnt >= 2 ? (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx)
                         : std::numeric_limits<double>::quiet_NaN();

    out.state_monotone = true;
    for (size_t i = 1; i < out.rows.size(); ++i) {
        bool shrinkingS = out.rows[i].s < out.rows[i - 1].s;
        double prev = out.rows[i - 1].state_at_eta, cur = out.rows[i].state_at_eta;
        if (shrinkingS ? cur > prev + 1e-7 : cur < prev - 1e-7) out.state_monotone = false;
    }
    out.limit_estimate = out.rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                          : out.rows.back().estimate;
    return out;
}

double hilbert_cross_ratio(const Cone& K, const Vec& x, const Vec& y) {
    const Body2D* body = K.section_body();
    if (!body) throw std::domain_error("hilbert_cross_ratio: cone has no 2-d section picture");
    require_interior(K, x, "hilbert_cross_ratio: x");
    require_interior(K, y, "hilbert_cross_ratio: y");

    Eigen::Vector2d a(x[0] / x[2], x[1] / x[2]);
    Eigen::Vector2d b(y[0] / y[2], y[1] / y[2]);
    double gap = (b - a).norm();
    if (gap <= 1e-13) return 0.0;
    Eigen::Vector2d d = (b - a) / gap;

    Eigen::Vector2d wprime = a + section_exit(*body, a, d) * d;    // beyond y
    Eigen::Vector2d vprime = a - section_exit(*body, a, -d) * d;   // behind x
    double val = ((b - vprime).norm() * (a - wprime).norm()) /
                 ((a - vprime).norm() * (b - wprime).norm());
    return std::log(val);
}

std::vector<GromovRow> gromov_experiment(const Cone& K, const Eigen::Vector2d& eta1,
                                         const Eigen::Vector2d& eta2, const std::vector<double>& s_values) {
    const Body2D* body = K.section_body();
    if (!body) throw std::domain_error("gromov_experiment: cone has no 2-d section picture");
    if (!body->strictly_convex()) throw std::domain_error("gromov_experiment: body must be strictly convex");
    for (const auto& e : {eta1, eta2}) {
        if (std::abs(body->section_margin(e)) > 1e-7 * (1.0 + e.norm()))
            throw std::domain_error("gromov_experiment: target is not on the body boundary");
    }

    bool same = (eta1 - eta2).norm() <= 1e-9;
    Eigen::Vector2d a1 = Eigen::Vector2d::Zero(), a2 = Eigen::Vector2d::Zero();
    if (same) {
        // two distinct chords into the same target: anchors rotated off the
        // inward direction, small enough to sit inside every body we own
        Eigen::Vector2d inward = -eta1.normalized();
        auto rot = [](const Eigen::Vector2d& v, double th) {
            return Eigen::Vector2d(std::cos(th) * v.x() - std::sin(th) * v.y(),
                                   std::sin(th) * v.x() + std::cos(th) * v.y());
        };
        a1 = 0.35 * rot(inward, 0.5);
        a2 = 0.35 * rot(inward, -0.5);
    }

    const Vec u = K.unit();
    std::vector<GromovRow> rows;
    rows.reserve(s_values.size());
    for (double s : s_values) {
        if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("gromov_experiment: s values must lie in (0,1]");
        Vec xs = lift((1.0 - s) * eta1 + s * a1);
        Vec ys = lift((1.0 - s) * eta2 + s * a2);
        double value = hilbert(K, xs, u) + hilbert(K, ys, u) - hilbert(K, xs, ys);
        rows.push_back({s, value, same ? "same" : "distinct"});
    }
    return rows;
}

SmoothnessRow smoothness_probe(const Cone& K, const Vec& b) {
    auto states = supporting_states(K, b);
    double spread = 0.0;
    for (size_t i = 0; i < states.size(); ++i) {
        for (size_t j = i + 1; j < states.size(); ++j) {
            double c = states[i].covector.dot(states[j].covector) /
                       (states[i].covector.norm() * states[j].covector.norm());
            spread = std::max(spread, std::acos(std::min(1.0, std::max(-1.0, c))));
        }
    }
    return {static_cast<int>(states.size()), spread};
}

SmoothnessReport smoothness_probe_random(const Cone& K, std::uint64_t seed, int samples) {
    SmoothnessReport rep;
    rep.non_smooth = false;
    for (int i = 0; i < samples; ++i) {
        Rng rng(Rng::derive(seed, "smoothness-probe", static_cast<std::uint64_t>(i)));
        Vec b = random_boundary(K, rng);
        auto row = smoothness_probe(K, b);
        if (row.state_count >= 2 && row.spread > 1e-3) rep.non_smooth = true;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace conelab
