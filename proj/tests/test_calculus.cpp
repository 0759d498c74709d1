#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/derivative.hpp"
#include "conelab/rng.hpp"
#include "conelab/spin.hpp"
#include "conelab/verify.hpp"

#include <cmath>

using namespace conelab;

namespace {
Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}
}  // namespace

TEST_CASE("builtin map resolution") {
    ConePtr L = make_lorentz(3);
    ConeMap inv = resolve_map(L, "builtin:inversion");
    CHECK(inv(L->unit()).isApprox(L->unit(), 1e-14));
    CHECK(inv.has_inverse());
    CHECK(inv(v3(1, 0, 2)).isApprox(v3(-1.0 / 3, 0, 2.0 / 3), 1e-14));

    Mat T(3, 3);
    T << 2, 0, 0, 0, 1, 0, 0, 0, 1;
    ConePtr TK = make_linear_image(T, L);
    ConeMap cinv = resolve_map(TK, "builtin:conjugated-inversion");
    CHECK(cinv(TK->unit()).isApprox(TK->unit(), 1e-12));

    ConeMap id = resolve_map(L, "builtin:identity");
    CHECK(id(v3(1, 0, 2)).isApprox(v3(1, 0, 2)));

    CHECK_THROWS_AS(resolve_map(make_pnorm(3, 4.0), "builtin:inversion"), std::domain_error);
    CHECK_THROWS_AS(resolve_map(L, "builtin:conjugated-inversion"), std::domain_error);
    CHECK_THROWS_AS(resolve_map(L, "builtin:nope"), parse_error);
    CHECK_THROWS_AS(inversion_map(make_pnorm(3, 4.0)), std::domain_error);
}

TEST_CASE("conjugated inversion is the transported antimorphism") {
    Mat T(3, 3);
    T << 1, 2, 0, 0, 1, 0, 1, 0, 3;
    ConePtr base = make_lorentz(3);
    ConePtr K = make_linear_image(T, base);
    ConeMap g = inversion_map(K);
    Rng rng(18);
    for (int i = 0; i < 20; ++i) {
        Vec x = random_interior(*base, rng);
        Vec want = T * from_spin(spin_inverse(to_spin(x)));
        CHECK(g(T * x).isApprox(want, 1e-12));
    }
}

TEST_CASE("gateaux derivative of inversion at the unit is -id") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        Vec z = rng.gaussian_vec(4);
        Vec d = gateaux(g, K->unit(), z);
        CHECK((d + z).norm() < 1e-8 * (1.0 + z.norm()));
    }
}

TEST_CASE("gateaux is linear in the direction") {
    ConePtr K = make_lorentz(3);
    ConeMap g = inversion_map(K);
    Vec x = v3(0.2, -0.1, 1.3);
    Vec z1 = v3(1, 0.5, 0), z2 = v3(-0.3, 0.2, 0.7);
    Vec d1 = gateaux(g, x, z1), d2 = gateaux(g, x, z2);
    Vec dsum = gateaux(g, x, z1 + 2.0 * z2);
    CHECK((dsum - (d1 + 2.0 * d2)).norm() < 1e-6);
}

TEST_CASE("linearize: G_x is a cone automorphism pinned at x") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    Rng rng(21);
    for (int i = 0; i < 10; ++i) {
        Vec x = random_interior(*K, rng);
        LinearizedMap L = linearize(g, x);
        CHECK((L.G * x - g(x)).norm() < 1e-8 * (1.0 + g(x).norm()));
        CHECK(L.cond < 1e6);
        for (int k = 0; k < 20; ++k) {
            Vec c = random_interior(*K, rng);
            CHECK(K->margin(L.apply(c)) > -1e-8 * (1.0 + c.norm()));
        }
    }
}

TEST_CASE("linearize at x then at g(x) gives inverse matrices") {
    ConePtr K = make_lorentz(5);
    ConeMap g = inversion_map(K);
    Rng rng(23);
    for (int i = 0; i < 8; ++i) {
        Vec x = random_interior(*K, rng);
        Mat A = linearize(g, x).G;
        Mat B = linearize(g, g(x)).G;
        CHECK((A * B - Mat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("linearize refuses maps that are not locally linearizable") {
    ConePtr K = make_lorentz(3);
    // identity is smooth but violates G_x x = g(x) under the antimorphism sign
    ConeMap id = identity_map(K);
    CHECK_THROWS_AS(linearize(id, K->unit()), std::domain_error);
}

TEST_CASE("symmetry fixes its basepoint and reverses direction") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    Rng rng(29);
    for (int i = 0; i < 6; ++i) {
        Vec x = random_interior(*K, rng);
        ConeMap S = symmetry(g, x);
        CHECK(order_unit_norm(*K, S(x) - x) < 1e-7 * (1.0 + order_unit_norm(*K, x)));
        for (int k = 0; k < 10; ++k) {
            Vec y = random_interior(*K, rng);
            Vec yy = S(S(y));
            CHECK(order_unit_norm(*K, yy - y) < 1e-6 * (1.0 + order_unit_norm(*K, y)));
        }
        // derivative of S at x is -Id: the linearization of S carries +Id
        ConeMap Sm{"s", K, S.eval, S.inverse_eval};
        Mat G = linearize(Sm, x).G;
        CHECK((G - Mat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-5);
    }
}

TEST_CASE("symmetry at the unit inverts spectral weights") {
    // G_u = Id for inversion, so S_u = g itself: a p + b p' -> (1/a) p + (1/b) p'
    ConePtr K = make_lorentz(3);
    ConeMap g = inversion_map(K);
    ConeMap S = symmetry(g, K->unit());
    Vec x = v3(1, 0, 2);  // = 3p + 1p'
    Vec want = (1.0 / 3.0) * v3(0.5, 0, 0.5) + 1.0 * v3(-0.5, 0, 0.5);
    CHECK(S(x).isApprox(want, 1e-8));
}

TEST_CASE("fixed point probe: x is isolated") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    Rng rng(61);
    Vec x = random_interior(*K, rng);
    auto rep = fixed_point_probe(g, x, 61, 50);
    CHECK(rep.displacement_at_x < 1e-7);
    CHECK(rep.min_displacement > 1e-3);
    CHECK(rep.implication_holds);  // vacuous here: G_x x = g(x) != x

    // at a genuine fixed point of g the linearization pins it too
    auto repu = fixed_point_probe(g, K->unit(), 61, 50);
    CHECK(repu.gx_fixed_residual < 1e-7);
    CHECK(repu.g_fixed_residual < 1e-12);
    CHECK(repu.implication_holds);
}

TEST_CASE("antimorphism suite: inversion passes, identity fails the gauge law") {
    ConePtr K = make_lorentz(4);
    auto good = verify_antimorphism(inversion_map(K), 83, 120);
    CHECK(good.pass());
    for (const auto& c : good.checks) CHECK(c.max_residual <= c.tolerance);

    auto bad = verify_antimorphism(identity_map(K), 83, 40);
    CHECK(!bad.pass());
    bool gauge_check_failed = false;
    for (const auto& c : bad.checks)
        if (c.name == "gauge-identity" && !c.pass) gauge_check_failed = true;
    CHECK(gauge_check_failed);
}

TEST_CASE("restriction to a 2-d subcone is planar and canonical") {
    ConePtr K = make_lorentz(3);
    ConeMap g = inversion_map(K);
    Rng rng(95);
    for (int i = 0; i < 10; ++i) {
        Vec x = random_interior(*K, rng), y = random_interior(*K, rng);
        if (thompson(*K, x, y) < 0.05) continue;
        auto R = restrict_to_2d(g, x, y);
        CHECK(R.planarity_residual < 1e-9);
        auto fit = fit_2d_canonical(R.h, 7, 60);
        CHECK(fit.residual < 1e-7);
        CHECK(fit.a1 > 0.0);
        CHECK(fit.a2 > 0.0);
    }
}

TEST_CASE("canonical fit rejects a non-reciprocal map") {
    auto not_antimorphism = [](const Eigen::Vector2d& z) {
        return Eigen::Vector2d(z[0] * z[0], 1.0 / z[1]);
    };
    CHECK_THROWS_AS(fit_2d_canonical(not_antimorphism, 1, 40), std::domain_error);
}

TEST_CASE("gateaux shrinks its step near the boundary") {
    ConePtr K = make_lorentz(3);
    ConeMap g = inversion_map(K);
    Vec x = v3(0.0, 0.0, 1.0) + v3(0.9999, 0, 0);  // just inside
    Vec z = v3(1, 0, 0);
    Vec d = gateaux(g, x, z);  // must not throw; step auto-shrinks
    CHECK(std::isfinite(d.norm()));
}
