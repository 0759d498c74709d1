#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/derivative.hpp"
#include "conelab/reconstruct.hpp"
#include "conelab/rng.hpp"
#include "conelab/spin.hpp"

#include <cmath>

using namespace conelab;

namespace {
Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}
}  // namespace

TEST_CASE("project_to_P normalizes boundary rays") {
    ConePtr K = make_lorentz(3);
    auto p = project_to_P(*K, v3(1, 0, 1));
    CHECK(p.p.isApprox(v3(0.5, 0, 0.5), 1e-12));
    CHECK(p.support(p.p) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p.support(K->unit()) == doctest::Approx(1.0).epsilon(1e-12));

    ConePtr P4 = make_pnorm(3, 4.0);
    auto q = project_to_P(*P4, v3(1, 0, 1));
    CHECK(q.p.isApprox(v3(0.5, 0, 0.5), 1e-12));

    CHECK_THROWS_AS(project_to_P(*K, K->unit()), std::domain_error);   // interior
    CHECK_THROWS_AS(project_to_P(*K, Vec::Zero(3)), std::domain_error);  // apex
}

TEST_CASE("complement is an involution on P") {
    ConePtr K = make_lorentz(4);
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
        auto p = project_to_P(*K, random_boundary(*K, rng));
        auto pc = complement(*K, p);
        CHECK((pc.p - (K->unit() - p.p)).norm() < 1e-12);
        auto pcc = complement(*K, pc);
        CHECK((pcc.p - p.p).norm() < 1e-10);
    }

    ConePtr O = make_orthant2();
    Vec e1(2), e2(2);
    e1 << 1, 0;
    e2 << 0, 1;
    auto p = project_to_P(*O, e1);
    CHECK((complement(*O, p).p - e2).norm() < 1e-12);
}

TEST_CASE("represent_in_P splits along a frame") {
    ConePtr K = make_lorentz(3);
    auto rep = represent_in_P(*K, v3(1, 0, 2));
    CHECK(rep.alpha == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(rep.beta == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.p.p.isApprox(v3(0.5, 0, 0.5), 1e-9));
    Vec back = rep.alpha * rep.p.p + rep.beta * rep.pprime.p;
    CHECK((back - v3(1, 0, 2)).norm() < 1e-10);

    // multiples of the unit use the fixed frame with alpha = beta
    auto repu = represent_in_P(*K, K->unit());
    CHECK(repu.alpha == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(repu.beta == doctest::Approx(1.0).epsilon(1e-12));

    // alpha, beta match the spectral eigenvalues of the spin picture
    ConePtr L4 = make_lorentz(4);
    Rng rng(9);
    for (int i = 0; i < 20; ++i) {
        Vec x = random_interior(*L4, rng);
        auto r = represent_in_P(*L4, x);
        auto sd = spectral(to_spin(x));
        CHECK(rel_diff(r.alpha, sd.lam1) < 1e-9);
        CHECK(rel_diff(r.beta, sd.lam2) < 1e-9);
        Vec reco = r.alpha * r.p.p + r.beta * r.pprime.p;
        CHECK((reco - x).norm() < 1e-10 * (1.0 + x.norm()));
    }
}

TEST_CASE("bform values on the frame") {
    ConePtr K = make_lorentz(3);
    auto p = project_to_P(*K, v3(1, 0, 1));
    auto q = project_to_P(*K, v3(0, 1, 1));
    auto pp = complement(*K, p);
    CHECK(bform(*K, p, q.p) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(bform(*K, p, pp.p) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bform(*K, p, K->unit()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bform(*K, p, p.p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bform_general is linear in the first slot on lorentz") {
    ConePtr K = make_lorentz(4);
    Rng rng(21);
    for (int i = 0; i < 15; ++i) {
        Vec x = rng.gaussian_vec(4), y = rng.gaussian_vec(4);
        double c = rng.uniform(-2.0, 2.0);
        double lhs = bform_general(*K, x + c * K->unit(), y);
        double rhs = bform_general(*K, x, y) + c * bform_general(*K, K->unit(), y);
        CHECK(std::abs(lhs - rhs) < 1e-8 * (1.0 + std::abs(rhs)));
        double t = rng.uniform(0.5, 3.0);
        CHECK(std::abs(bform_general(*K, t * x, y) - t * bform_general(*K, x, y)) <
              1e-8 * (1.0 + std::abs(t * bform_general(*K, x, y))));
    }
    CHECK(bform_general(*K, K->unit(), K->unit()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("b symmetry holds on lorentz and fails on pnorm") {
    ConePtr K = make_lorentz(4);
    auto sym = check_b_symmetry(*K, 11, 500);
    CHECK(sym.asymmetry < 1e-8);

    ConePtr P4 = make_pnorm(3, 4.0);
    auto asym = check_b_symmetry(*P4, 11, 200);
    CHECK(asym.asymmetry > 0.1);
    CHECK(std::abs(asym.b_pq - asym.b_qp) == doctest::Approx(asym.asymmetry).epsilon(1e-12));

    CHECK_THROWS_AS(check_b_symmetry(*K, 11, 0), std::invalid_argument);
}

TEST_CASE("the documented pnorm witness pair") {
    // closed forms for the 4-norm cone: supporting covectors are cubed unit
    // gradients, so the two orders of evaluation disagree
    ConePtr P4 = make_pnorm(3, 4.0);
    const double c = std::pow(2.0, -0.25);
    auto p = project_to_P(*P4, v3(1, 0, 1));
    auto q = project_to_P(*P4, v3(c, c, 1));
    double b_pq = bform(*P4, p, q.p);
    double b_qp = bform(*P4, q, p.p);
    CHECK(b_pq == doctest::Approx((1.0 + std::pow(2.0, -0.25)) / 2).epsilon(1e-9));
    CHECK(b_qp == doctest::Approx((1.0 + std::pow(2.0, -0.75)) / 2).epsilon(1e-9));
    CHECK(b_pq - b_qp > 0.1);
}

TEST_CASE("half-line law under the unit symmetry") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    ConeMap S = symmetry(g, K->unit());
    Rng rng(31);
    auto p = project_to_P(*K, random_boundary(*K, rng));
    auto c1 = su_halfline_check(*K, S, p, 0.5);
    CHECK(c1.map_residual < 1e-8);
    CHECK(c1.dt_error < 1e-9);
    auto c2 = su_halfline_check(*K, S, p, 0.01);
    CHECK(c2.map_residual < 1e-6);
    CHECK(c2.dt_error < 1e-9);
}

TEST_CASE("split against the kernel of B(., u)") {
    ConePtr K = make_lorentz(3);
    auto s = split_H(*K, v3(1, 0, 2));
    CHECK(s.beta == doctest::Approx(2.0).epsilon(1e-10));
    CHECK((s.h - v3(1, 0, 0)).norm() < 1e-10);
    CHECK(s.psi_residual < 1e-9);

    auto su = split_H(*K, K->unit());
    CHECK(su.beta == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(su.h.norm() < 1e-10);

    auto sh = split_H(*K, v3(1, 0, 0));  // p - p'
    CHECK(std::abs(sh.beta) < 1e-10);
}

TEST_CASE("bgram over a boundary pool") {
    ConePtr K = make_lorentz(4);
    Rng rng(17);
    std::vector<PPoint> pool;
    for (int i = 0; i < 10; ++i) pool.push_back(project_to_P(*K, random_boundary(*K, rng)));
    auto gram = build_bgram(*K, pool);
    REQUIRE(gram.matrix.rows() == 10);
    for (int i = 0; i < 10; ++i) CHECK(gram.matrix(i, i) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gram.asymmetry < 1e-8);
}

TEST_CASE("full reconstruction on lorentz recovers the spin gram") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    auto rep = reconstruct_jordan(*K, &g, 5, 300);
    CHECK(rep.verdict == Verdict::SpinFactor);
    CHECK(rep.b_asymmetry < 1e-8);
    CHECK(rep.unit_b_value == doctest::Approx(2.0).epsilon(1e-9));
    REQUIRE(rep.gram_H.rows() == 3);
    CHECK((rep.gram_H - Mat::Identity(3, 3)).norm() < 1e-8);
    CHECK(rep.gram_condition < 1.0 + 1e-6);
    CHECK(rep.norm_identity_residual < 1e-9);
    CHECK(rep.squares_residual < 1e-9);
    CHECK(rep.squares_cone_violation < 1e-9);
    CHECK(rep.sqrt_residual < 1e-9);
    CHECK(rep.jordan_identity_residual < 1e-9);
    CHECK(rep.su_halfline_residual < 1e-6);
}

TEST_CASE("reconstruction sees through a linear change of coordinates") {
    Mat T = Mat::Identity(3, 3);
    T(0, 0) = 2.0;
    ConePtr K = make_linear_image(T, make_lorentz(3));
    ConeMap g = inversion_map(K);
    auto rep = reconstruct_jordan(*K, &g, 5, 200);
    CHECK(rep.verdict == Verdict::SpinFactor);
    REQUIRE(rep.gram_H.rows() == 2);
    Eigen::SelfAdjointEigenSolver<Mat> es(rep.gram_H);
    CHECK(es.eigenvalues()(0) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.gram_condition == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(rep.jordan_identity_residual < 1e-9);
}

TEST_CASE("pnorm cones are rejected with a certificate") {
    ConePtr P4 = make_pnorm(3, 4.0);
    auto rep = reconstruct_jordan(*P4, nullptr, 5, 200);
    CHECK(rep.verdict == Verdict::NotSpinFactor);
    CHECK(rep.b_asymmetry > 0.1);
    CHECK(std::isnan(rep.su_halfline_residual));  // no map supplied
}

TEST_CASE("reconstructed product matches the spin product") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    auto rep = reconstruct_jordan(*K, &g, 5, 100);
    REQUIRE(rep.verdict == Verdict::SpinFactor);
    Rng rng(77);
    for (int i = 0; i < 25; ++i) {
        Vec a = rng.gaussian_vec(4), b = rng.gaussian_vec(4);
        Vec got = reconstructed_product(*K, rep.h_basis, a, b);
        Vec want = from_spin(jordan_product(to_spin(a), to_spin(b)));
        CHECK((got - want).norm() < 1e-9 * (1.0 + want.norm()));
    }
}

TEST_CASE("order unit norm through the frame coordinates") {
    ConePtr K = make_lorentz(4);
    Rng rng(83);
    for (int i = 0; i < 20; ++i) {
        auto p = project_to_P(*K, random_boundary(*K, rng));
        auto pp = complement(*K, p);
        double a = rng.uniform(-5.0, 5.0), b = rng.uniform(-5.0, 5.0);
        double n = order_unit_norm(*K, a * p.p + b * pp.p);
        CHECK(n == doctest::Approx(std::max(std::abs(a), std::abs(b))).epsilon(1e-10));
    }
    // on H the squared unit norm is the B/2 inner product
    for (int i = 0; i < 20; ++i) {
        Vec x = rng.gaussian_vec(4);
        auto s = split_H(*K, x);
        double lhs = bform_general(*K, s.h, s.h) / 2.0;
        double rhs = order_unit_norm(*K, s.h);
        CHECK(std::abs(lhs - rhs * rhs) < 1e-8 * (1.0 + rhs * rhs));
    }
}

TEST_CASE("reconstruction needs dimension at least 3") {
    ConePtr O = make_orthant2();
    CHECK_THROWS_AS(reconstruct_jordan(*O, nullptr, 5, 50), std::invalid_argument);
}
