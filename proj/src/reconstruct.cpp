#include "conelab/reconstruct.hpp"

#include "conelab/derivative.hpp"
#include "conelab/kernels.hpp"
#include "conelab/rng.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace conelab {

PPoint project_to_P(const Cone& K, const Vec& r) {
    K.check_dim(r, "project_to_P");
    if (contains(K, r).region != Region::Boundary)
        throw std::domain_error("project_to_P: point is not on the cone boundary");
    double m = gauge_raw(K, r, K.unit());
    if (!(m > 0.0)) throw std::domain_error("project_to_P: apex cannot be normalized");
    Vec p = r / m;
    auto states = supporting_states(K, p);
    if (states.size() != 1)
        throw std::domain_error("project_to_P: supporting state is not unique (cone not smooth here)");
    return {p, states.front()};
}

PPoint complement(const Cone& K, const PPoint& p) {
    Vec pp = K.unit() - p.p;
    if (contains(K, pp).region != Region::Boundary)
        throw std::domain_error("complement: u - p is not a boundary point");
    double m = gauge_raw(K, pp, K.unit());
    if (rel_diff(m, 1.0) > 1e-8)
        throw std::domain_error("complement: u - p is not normalized (M(u-p/u) != 1)");
    auto states = supporting_states(K, pp);
    if (states.size() != 1)
        throw std::domain_error("complement: supporting state at u - p is not unique");
    return {pp, states.front()};
}

namespace {

// deterministic half-line direction used for multiples of u
PPoint canonical_p(const Cone& K) {
    const Vec& u = K.unit();
    Vec uhat = u / u.norm();
    for (int i = 0; i < K.dim(); ++i) {
        Vec d = Vec::Zero(K.dim());
        d[i] = 1.0;
        d -= d.dot(uhat) * uhat;
        if (d.norm() < 1e-9) continue;
        d /= d.norm();
        auto t = ray_exit(K, u, d);
        if (!t) continue;
        Vec b = u + (*t) * d;
        if (b.norm() <= 1e-9 * (1.0 + u.norm())) continue;
        return project_to_P(K, b);
    }
    throw std::domain_error("represent_in_P: no boundary direction found for the unit frame");
}

}  // namespace

PRepresentation represent_in_P(const Cone& K, const Vec& v) {
    K.check_dim(v, "represent_in_P");
    const Vec& u = K.unit();
    Vec uhat = u / u.norm();

    Vec vperp = v - v.dot(uhat) * uhat;
    if (vperp.norm() <= 1e-10 * std::max(1.0, v.norm())) {
        double lam = v.dot(uhat) / u.norm();
        PPoint p = canonical_p(K);
        PPoint pp = complement(K, p);
        return {p, pp, lam, lam};
    }

    auto sc = subcone2d(K, u, v);
    PPoint p = project_to_P(K, sc.r);
    PPoint q = project_to_P(K, sc.s);
    if ((q.p - (u - p.p)).norm() > 1e-8 * (1.0 + u.norm()))
        throw std::domain_error(
            "represent_in_P: generators are not complementary; the section is not symmetric about u");
    PPoint pp = complement(K, p);

    Mat B2(K.dim(), 2);
    B2.col(0) = p.p;
    B2.col(1) = pp.p;
    Eigen::Vector2d coef = (B2.transpose() * B2).ldlt().solve(B2.transpose() * v);
    double alpha = coef[0], beta = coef[1];
    if ((alpha * p.p + beta * pp.p - v).norm() > 1e-8 * (1.0 + v.norm()))
        throw std::domain_error("represent_in_P: coefficient solve failed to reproduce v");

    if (alpha < beta) {
        std::swap(alpha, beta);
        std::swap(p, pp);
    }
    return {p, pp, alpha, beta};
}

double bform(const Cone& K, const PPoint& p, const Vec& v) {
    K.check_dim(v, "bform");
    return complement(K, p).support(v);
}

double bform_general(const Cone& K, const Vec& x, const Vec& y) {
    auto rep = represent_in_P(K, x);
    // B(alpha p + beta p', y) = alpha phi_{p'}(y) + beta phi_p(y)
    return rep.alpha * rep.pprime.support(y) + rep.beta * rep.p.support(y);
}

BSymmetryResult check_b_symmetry(const Cone& K, std::uint64_t seed, int samples) {
    if (samples < 1) throw std::invalid_argument("check_b_symmetry: samples must be >= 1");
    int n = K.dim();
    const Vec& u = K.unit();

    std::vector<PPoint> pool;
    auto try_direction = [&](const Vec& d) {
        auto t = ray_exit(K, u, d);
        if (!t) return;
        Vec b = u + (*t) * d;
        if (b.norm() <= 1e-9 * (1.0 + u.norm())) return;
        pool.push_back(project_to_P(K, b));
    };

    // axes and two-axis diagonals first: cheap, deterministic, and they pin
    // down the asymmetry witnesses of the p-norm family
    for (int i = 0; i < n; ++i) {
        Vec e = Vec::Zero(n);
        e[i] = 1.0;
        try_direction(e);
        try_direction(-e);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            Vec e = Vec::Zero(n);
            e[i] = 1.0;
            e[j] = 1.0;
            try_direction(e / std::sqrt(2.0));
            e[j] = -1.0;
            try_direction(e / std::sqrt(2.0));
        }
    }

    size_t need = static_cast<size_t>(std::ceil((1.0 + std::sqrt(1.0 + 8.0 * samples)) / 2.0)) + 1;
    std::uint64_t k = 0;
    while (pool.size() < std::max(need, size_t{8})) {
        Rng rng(Rng::derive(seed, "b-symmetry-pool", k++));
        pool.push_back(project_to_P(K, random_boundary(K, rng)));
    }

    struct Pair {
        size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(static_cast<size_t>(samples));
    for (size_t i = 0; i < pool.size() && pairs.size() < static_cast<size_t>(samples); ++i)
        for (size_t j = i + 1; j < pool.size() && pairs.size() < static_cast<size_t>(samples); ++j)
            pairs.push_back({i, j});

    struct Eval {
        double asym, b_pq, b_qp;
    };
    auto evals = kernels::run_cases<Eval>(static_cast<int>(pairs.size()), [&](int idx) {
        const auto& pr = pairs[static_cast<size_t>(idx)];
        double b_pq = bform(K, pool[pr.i], pool[pr.j].p);
        double b_qp = bform(K, pool[pr.j], pool[pr.i].p);
        return Eval{std::abs(b_pq - b_qp), b_pq, b_qp};
    });

    BSymmetryResult out{};
    out.asymmetry = -1.0;
    for (size_t idx = 0; idx < evals.size(); ++idx) {
        if (evals[idx].asym > out.asymmetry) {
            out.asymmetry = evals[idx].asym;
            out.p = pool[pairs[idx].i].p;
            out.q = pool[pairs[idx].j].p;
            out.b_pq = evals[idx].b_pq;
            out.b_qp = evals[idx].b_qp;
        }
    }
    return out;
}

BGram build_bgram(const Cone& K, std::vector<PPoint> points) {
    int m = static_cast<int>(points.size());
    BGram out;
    out.points = std::move(points);
    // complements once per row, entries fan out
    std::vector<PPoint> comps;
    comps.reserve(static_cast<size_t>(m));
    for (const auto& pt : out.points) comps.push_back(complement(K, pt));
    out.matrix = kernels::gram(
        m, [&](int i, int j) { return comps[static_cast<size_t>(i)].support(out.points[static_cast<size_t>(j)].p); });
    out.asymmetry = m > 0 ? (out.matrix - out.matrix.transpose()).cwiseAbs().maxCoeff() : 0.0;
    return out;
}

HalflineCheck su_halfline_check(const Cone& K, const ConeMap& S_u, const PPoint& p, double s) {
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("su_halfline_check: s must lie in (0,1)");
    const Vec& u = K.unit();
    Vec ps = (1.0 - s) * p.p + s * u;
    Vec want = ((1.0 - s) * (u - p.p) + s * u) / s;
    Vec got = S_u(ps);
    HalflineCheck out{};
    out.map_residual = order_unit_norm(K, got - want) / (1.0 + order_unit_norm(K, want));
    out.dt_error = std::abs(thompson(K, u, ps) + std::log(s));
    return out;
}

SplitH split_H(const Cone& K, const Vec& v) {
    double beta = 0.5 * bform_general(K, v, K.unit());
    Vec h = v - beta * K.unit();
    return {h, beta, std::abs(bform_general(K, h, K.unit()))};
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::SpinFactor: return "SpinFactor";
        case Verdict::NotSpinFactor: return "NotSpinFactor";
        default: return "Inconclusive";
    }
}

namespace {

// cached evaluator: psi covector, H basis, the product
struct BMachine {
    const Cone& K;
    Vec psi;      // covector of B(., u)
    Mat h_basis;  // n x (n-1)

    explicit BMachine(const Cone& K_) : K(K_) {
        int n = K.dim();
        psi.resize(n);
        for (int i = 0; i < n; ++i) {
            Vec e = Vec::Zero(n);
            e[i] = 1.0;
            psi[i] = bform_general(K, e, K.unit());
        }
        // kernel of psi; take the coordinate hyperplane when psi lines up
        // with the last axis so the lorentz family reports a canonical basis
        Vec psin = psi / psi.norm();
        bool axis = true;
        for (int i = 0; i + 1 < n; ++i) axis = axis && std::abs(psin[i]) < 1e-12;
        if (axis) {
            h_basis = Mat::Identity(n, n).leftCols(n - 1);
        } else {
            Eigen::HouseholderQR<Mat> qr(psi);
            Mat Q = qr.householderQ();
            h_basis = Q.rightCols(n - 1);
        }
    }

    double beta_of(const Vec& v) const { return 0.5 * psi.dot(v); }

    double inner(const Vec& h, const Vec& k) const { return 0.5 * bform_general(K, h, k); }

    Vec product(const Vec& a, const Vec& b) const {
        double ba = beta_of(a), bb = beta_of(b);
        Vec ha = a - ba * K.unit();
        Vec hb = b - bb * K.unit();
        return bb * ha + ba * hb + (inner(ha, hb) + ba * bb) * K.unit();
    }
};

}  // namespace

Vec reconstructed_product(const Cone& K, const Mat&, const Vec& a, const Vec& b) {
    BMachine M(K);
    return M.product(a, b);
}

ReconstructionReport reconstruct_jordan(const Cone& K, const ConeMap* g, std::uint64_t seed,
                                        int samples, const Tolerances& tol) {
    if (K.dim() < 3) throw std::invalid_argument("reconstruct_jordan: needs ambient dimension >= 3");
    if (samples < 1) throw std::invalid_argument("reconstruct_jordan: samples must be >= 1");

    ReconstructionReport rep;
    rep.seed = seed;
    rep.samples = samples;
    const Vec& u = K.unit();

    try {
        rep.witness = check_b_symmetry(K, seed, samples);
        rep.b_asymmetry = rep.witness.asymmetry;
        if (rep.b_asymmetry > tol.reconstruction) {
            rep.verdict = Verdict::NotSpinFactor;
            rep.note = "B form is asymmetric; no polarization identity can hold";
            return rep;
        }

        BMachine M(K);
        rep.h_basis = M.h_basis;
        rep.unit_b_value = M.psi.dot(u);

        int m = K.dim() - 1;
        // row data once, entries in parallel
        std::vector<PRepresentation> reps;
        reps.reserve(static_cast<size_t>(m));
        for (int i = 0; i < m; ++i) reps.push_back(represent_in_P(K, M.h_basis.col(i)));
        Mat G = kernels::gram(m, [&](int i, int j) {
            const auto& r = reps[static_cast<size_t>(i)];
            Vec hj = M.h_basis.col(j);
            return 0.5 * (r.alpha * r.pprime.support(hj) + r.beta * r.p.support(hj));
        });
        double gram_asym = (G - G.transpose()).cwiseAbs().maxCoeff();
        rep.b_asymmetry = std::max(rep.b_asymmetry, gram_asym);
        rep.gram_H = 0.5 * (G + G.transpose());

        Eigen::SelfAdjointEigenSolver<Mat> eig(rep.gram_H);
        rep.gram_min_eig = eig.eigenvalues().minCoeff();
        double max_eig = eig.eigenvalues().maxCoeff();
        if (!(rep.gram_min_eig > 0.0)) {
            rep.verdict = Verdict::NotSpinFactor;
            rep.note = "Gram matrix of B/2 on H is not positive definite";
            return rep;
        }
        rep.gram_condition = max_eig / rep.gram_min_eig;

        auto norm_res = kernels::run_cases<double>(samples, [&](int i) {
            Rng rng(Rng::derive(seed, "norm-identity", static_cast<std::uint64_t>(i)));
            Vec h = M.h_basis * rng.gaussian_vec(m);
            double beta = rng.uniform(-2.0, 2.0);
            Vec v = h + beta * u;
            double want = std::sqrt(std::max(0.0, M.inner(h, h))) + std::abs(beta);
            return std::abs(order_unit_norm(K, v) - want) / (1.0 + want);
        });
        rep.norm_identity_residual = *std::max_element(norm_res.begin(), norm_res.end());

        struct SquareEval {
            double res, cone_violation;
        };
        auto sq = kernels::run_cases<SquareEval>(samples, [&](int i) {
            Rng rng(Rng::derive(seed, "squares", static_cast<std::uint64_t>(i)));
            PPoint p = project_to_P(K, random_boundary(K, rng));
            Vec pp = u - p.p;
            double delta = rng.uniform(-2.0, 2.0), sigma = rng.uniform(-2.0, 2.0);
            Vec a = delta * (p.p - pp) + sigma * u;
            Vec sqv = M.product(a, a);
            Vec want = (sigma + delta) * (sigma + delta) * p.p + (sigma - delta) * (sigma - delta) * pp;
            double res = order_unit_norm(K, sqv - want) / (1.0 + order_unit_norm(K, want));
            double viol = std::max(0.0, -K.margin(sqv)) / (1.0 + sqv.norm());
            return SquareEval{res, viol};
        });
        rep.squares_residual = 0.0;
        rep.squares_cone_violation = 0.0;
        for (const auto& e : sq) {
            rep.squares_residual = std::max(rep.squares_residual, e.res);
            rep.squares_cone_violation = std::max(rep.squares_cone_violation, e.cone_violation);
        }

        auto sqrt_res = kernels::run_cases<double>(samples, [&](int i) {
            Rng rng(Rng::derive(seed, "sqrt-roundtrip", static_cast<std::uint64_t>(i)));
            Vec v = random_interior(K, rng);
            auto r = represent_in_P(K, v);
            if (!(r.alpha > 0.0 && r.beta > 0.0)) return 0.0;  // roundoff-boundary sample, skip
            Vec w = std::sqrt(r.alpha) * r.p.p + std::sqrt(r.beta) * r.pprime.p;
            return order_unit_norm(K, M.product(w, w) - v) / (1.0 + order_unit_norm(K, v));
        });
        rep.sqrt_residual = *std::max_element(sqrt_res.begin(), sqrt_res.end());

        auto jordan_res = kernels::run_cases<double>(samples, [&](int i) {
            Rng rng(Rng::derive(seed, "jordan-identity", static_cast<std::uint64_t>(i)));
            Vec a = rng.gaussian_vec(K.dim()) / std::sqrt(double(K.dim()));
            Vec b = rng.gaussian_vec(K.dim()) / std::sqrt(double(K.dim()));
            Vec a2 = M.product(a, a);
            Vec lhs = M.product(M.product(a2, b), a);
            Vec rhs = M.product(a2, M.product(b, a));
            return (lhs - rhs).norm() / (1.0 + rhs.norm());
        });
        rep.jordan_identity_residual = *std::max_element(jordan_res.begin(), jordan_res.end());

        if (g) {
            ConeMap S_u = symmetry(*g, u);
            double worst = 0.0;
            int npts = std::min(samples, 16);
            for (int i = 0; i < npts; ++i) {
                Rng rng(Rng::derive(seed, "su-halfline", static_cast<std::uint64_t>(i)));
                PPoint p = project_to_P(K, random_boundary(K, rng));
                for (double s : {0.5, 0.1, 0.01}) {
                    auto hc = su_halfline_check(K, S_u, p, s);
                    worst = std::max({worst, hc.map_residual, hc.dt_error});
                }
            }
            rep.su_halfline_residual = worst;
        }

        double worst_residual = std::max({rep.norm_identity_residual, rep.squares_residual,
                                          rep.squares_cone_violation, rep.sqrt_residual,
                                          rep.jordan_identity_residual});
        if (g && std::isfinite(rep.su_halfline_residual))
            worst_residual = std::max(worst_residual, rep.su_halfline_residual);

        if (rep.b_asymmetry <= tol.reconstruction && rep.gram_condition <= 1e6 &&
            worst_residual <= tol.reconstruction && std::abs(rep.unit_b_value - 2.0) <= tol.reconstruction) {
            rep.verdict = Verdict::SpinFactor;
            rep.note = "cone data polarizes to a spin-factor product";
        } else {
            rep.verdict = Verdict::Inconclusive;
            rep.note = "B is symmetric but residual checks exceeded tolerance";
        }
    } catch (const std::domain_error& e) {
        rep.verdict = Verdict::Inconclusive;
        rep.note = std::string("sampling failed: ") + e.what();
    }
    return rep;
}

}  // namespace conelab
