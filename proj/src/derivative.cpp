#include "conelab/derivative.hpp"

#include "conelab/gauge.hpp"
#include "conelab/rng.hpp"

#include <cmath>
#include <memory>

namespace conelab {

Vec gateaux(const ConeMap& g, const Vec& x, const Vec& z, const GateauxOptions& opts) {
    const Cone& K = *g.cone;
    K.check_dim(x, "gateaux x");
    K.check_dim(z, "gateaux z");
    require_interior(K, x, "gateaux: x");
    double zn = order_unit_norm(K, z);
    if (zn == 0.0) return Vec::Zero(K.dim());
    // truncation grows like (t/depth)^6 toward the boundary, so the relative
    // step is capped by the interior depth (roundoff floors it at 1e-6)
    double depth = K.margin(x) / (1.0 + x.norm());
    double eps = std::min(opts.eps, std::max(0.01 * depth, 1e-6));
    double t = eps * (1.0 + order_unit_norm(K, x)) / (1.0 + zn);

    for (int shrink = 0; shrink <= opts.max_shrink; ++shrink, t *= 0.1) {
        // the interior is convex: x +- t z inside keeps the whole stencil inside
        if (K.margin(x + t * z) <= 0.0 || K.margin(x - t * z) <= 0.0) continue;
        Vec d_full = (g.eval(x + t * z) - g.eval(x - t * z)) / (2.0 * t);
        Vec d_half = (g.eval(x + 0.5 * t * z) - g.eval(x - 0.5 * t * z)) / t;
        Vec d_quarter = (g.eval(x + 0.25 * t * z) - g.eval(x - 0.25 * t * z)) / (0.5 * t);
        Vec r_outer = (4.0 * d_half - d_full) / 3.0;
        Vec r_inner = (4.0 * d_quarter - d_half) / 3.0;
        Vec d = (16.0 * r_inner - r_outer) / 15.0;
        if (d.allFinite()) return d;
    }
    throw std::domain_error("gateaux: difference step kept leaving the cone interior");
}

LinearizedMap linearize(const ConeMap& g, const Vec& x, const GateauxOptions& opts) {
    const Cone& K = *g.cone;
    int n = K.dim();
    require_interior(K, x, "linearize: x");

    LinearizedMap L;
    L.basepoint = x;
    L.G.resize(n, n);
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        L.G.col(i) = -gateaux(g, x, e, opts);
    }

    Vec gx = g.eval(x);
    double scale = 1.0 + order_unit_norm(K, gx);
    if (order_unit_norm(K, L.G * x - gx) > 1e-6 * scale)
        throw std::domain_error("linearize: G_x x != g(x); map is not differentiable at x?");

    Rng rng(Rng::derive(0x11AE12ull, "linearize-spot-check", static_cast<std::uint64_t>(n)));
    for (int k = 0; k < 20; ++k) {
        Vec z = rng.unit_vec(n);
        Vec lhs = L.G * z;
        Vec rhs = -gateaux(g, x, z, opts);
        if (order_unit_norm(K, lhs - rhs) > 1e-6 * (1.0 + order_unit_norm(K, rhs)))
            throw std::domain_error("linearize: matrix action disagrees with fresh directional derivatives");
    }

    L.lu = Eigen::PartialPivLU<Mat>(L.G);
    double rc = L.lu.rcond();
    L.cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    return L;
}

ConeMap symmetry(const ConeMap& g, const Vec& x, const GateauxOptions& opts) {
    auto L = std::make_shared<LinearizedMap>(linearize(g, x, opts));
    ConeMap s;
    s.name = "symmetry(" + g.name + ")";
    s.cone = g.cone;
    auto geval = g.eval;
    s.eval = [L, geval](const Vec& v) { return L->solve(geval(v)); };
    if (g.has_inverse()) {
        auto ginv = g.inverse_eval;
        s.inverse_eval = [L, ginv](const Vec& v) { return ginv(L->apply(v)); };
    }
    return s;
}

}  // namespace conelab
