#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/geodesic.hpp"
#include "conelab/rng.hpp"

#include <cmath>

using namespace conelab;

namespace {
Vec v3(double a, double b, double c) {
    Vec v(3);
    v << a, b, c;
    return v;
}
}  // namespace

TEST_CASE("typeI generators for the documented pair") {
    ConePtr K = make_lorentz(3);
    auto geo = typeI_through(*K, K->unit(), v3(1, 0, 2));
    CHECK(geo.r.isApprox(v3(0.5, 0, 0.5), 1e-12));
    CHECK(geo.s.isApprox(v3(-0.5, 0, 0.5), 1e-12));
    CHECK(geo.t0 == doctest::Approx(std::log(3.0) / 2).epsilon(1e-12));
    CHECK((geo.r + geo.s).isApprox(K->unit(), 1e-12));
    // the geodesic actually passes through the normalized z
    Vec at_t0 = typeI_point(geo, geo.t0);
    CHECK((at_t0 - geo.zhat).norm() < 1e-9 * (1.0 + geo.zhat.norm()));
    CHECK_THROWS_AS(typeI_through(*K, K->unit(), 3.0 * K->unit()), std::domain_error);
}

TEST_CASE("typeI gauge symmetry and distance law") {
    for (ConePtr K : {make_lorentz(3), make_lorentz(5), make_pnorm(3, 4.0)}) {
        for (int i = 0; i < 12; ++i) {
            Rng rng(Rng::derive(7, K->name(), static_cast<std::uint64_t>(i)));
            Vec x = random_interior(*K, rng), z = random_interior(*K, rng);
            if (thompson(*K, x, z) < 0.05) continue;
            auto geo = typeI_through(*K, x, z);
            for (double t1 : {-2.0, -0.3, 1.1})
                for (double t2 : {-1.2, 0.6, 2.0}) {
                    Vec a = typeI_point(geo, t1), b = typeI_point(geo, t2);
                    double m1 = gauge(*K, a, b), m2 = gauge(*K, b, a);
                    CHECK(rel_diff(m1, std::exp(std::abs(t1 - t2))) < 1e-9);
                    CHECK(rel_diff(m1, m2) < 1e-9);          // symmetric along type I
                    CHECK(rel_diff(thompson(*K, a, b), std::abs(t1 - t2)) < 1e-9);
                }
        }
    }
}

TEST_CASE("typeII scaling line: antisymmetric gauge") {
    ConePtr K = make_lorentz(4);
    Rng rng(15);
    Vec x = random_interior(*K, rng);
    for (double t1 : {-1.5, 0.0, 0.7})
        for (double t2 : {-0.4, 0.9}) {
            Vec a = typeII_point(x, t1), b = typeII_point(x, t2);
            CHECK(rel_diff(gauge(*K, a, b), std::exp(t1 - t2)) < 1e-12);
            CHECK(rel_diff(gauge(*K, a, b) * gauge(*K, b, a), 1.0) < 1e-12);
            CHECK(rel_diff(thompson(*K, a, b), std::abs(t1 - t2)) < 1e-12);
        }
}

TEST_CASE("sample_typeI matches pointwise evaluation") {
    ConePtr K = make_lorentz(3);
    auto geo = typeI_through(*K, K->unit(), v3(0.4, 0.2, 1.5));
    std::vector<double> ts = {-1.0, 0.0, 0.5, 2.0};
    auto pts = sample_typeI(geo, ts);
    REQUIRE(pts.size() == ts.size());
    for (size_t i = 0; i < ts.size(); ++i) CHECK(pts[i].isApprox(typeI_point(geo, ts[i]), 1e-14));
}

TEST_CASE("symmetry reflects typeI geodesics") {
    ConePtr K = make_lorentz(4);
    ConeMap g = inversion_map(K);
    Rng rng(41);
    for (int i = 0; i < 8; ++i) {
        Vec x = random_interior(*K, rng), z = random_interior(*K, rng);
        if (thompson(*K, x, z) < 0.05) continue;
        auto geo = typeI_through(*K, x, z);
        CHECK(reflect_residual(g, geo, {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) < 1e-6);
    }
}

TEST_CASE("boundary gauge law 1/s") {
    ConePtr K = make_lorentz(3);
    Vec eta = v3(1, 0, 1), x = K->unit();
    CHECK(boundary_gauge(*K, eta, x, 1.0) == doctest::Approx(1.0));
    CHECK(boundary_gauge(*K, eta, x, 0.2) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(boundary_gauge(*K, eta, x, 0.01) == doctest::Approx(100.0).epsilon(1e-12));
    for (ConePtr C : {make_pnorm(3, 4.0), make_lorentz(5)}) {
        Rng rng(58);
        Vec e = random_boundary(*C, rng), y = random_interior(*C, rng);
        for (double s : {0.5, 0.1, 1e-3})
            CHECK(rel_diff(boundary_gauge(*C, e, y, s), 1.0 / s) < 1e-9);
    }
    CHECK_THROWS_AS(boundary_gauge(*K, eta, x, 0.0), std::domain_error);
    CHECK_THROWS_AS(boundary_gauge(*K, x, x, 0.5), std::domain_error);  // eta not boundary
}

TEST_CASE("horofunction limit at the documented pair") {
    ConePtr K = make_lorentz(3);
    Vec eta = v3(1, 0, 1), z = v3(-1, 0, 1);
    std::vector<double> ss = {0.1, 0.01, 1e-3, 1e-4, 1e-5};
    auto H = horo_limit(*K, eta, z, ss);
    CHECK(H.phi_z == doctest::Approx(2.0).epsilon(1e-12));
    REQUIRE(H.rows.size() == ss.size());
    // closed form here: estimate = 2 - s exactly
    for (size_t i = 0; i < ss.size(); ++i)
        CHECK(H.rows[i].estimate == doctest::Approx(2.0 - ss[i]).epsilon(1e-10));
    CHECK(std::abs(H.limit_estimate - 2.0) < 1e-3);
    CHECK(H.slope > 0.8);
    // the maximizing state here is pinned at the supporting state throughout
    CHECK(H.state_monotone);
    for (const auto& r : H.rows) CHECK(std::abs(r.state_at_eta) < 1e-6);

    // skew target: the maximizing states move, sinking toward the face
    auto Hs = horo_limit(*K, eta, v3(0, 1, 1), {0.5, 0.1, 0.01});
    CHECK(Hs.phi_z == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(Hs.state_monotone);
    CHECK(Hs.rows.back().state_at_eta < Hs.rows.front().state_at_eta - 1e-3);
}

TEST_CASE("horofunction degenerate inputs") {
    ConePtr K = make_lorentz(3);
    Vec eta = v3(1, 0, 1);
    // z = u collapses the ratio to 1
    auto H = horo_limit(*K, eta, K->unit(), {0.5, 0.1, 0.01});
    for (const auto& r : H.rows) CHECK(r.estimate == doctest::Approx(1.0).epsilon(1e-12));
    // z on the supporting face has phi(z) = 0: rejected
    CHECK_THROWS_AS(horo_limit(*K, eta, eta, {0.1}), std::domain_error);
    // corner points have no unique state
    ConePtr L = make_cross_section(Body2D::lens(0.5));
    Vec corner = v3(0.0, std::sqrt(0.75), 1.0);
    CHECK_THROWS_AS(horo_limit(*L, corner, L->unit(), {0.1}), std::domain_error);
}

TEST_CASE("hilbert distance via boundary cross ratio") {
    ConePtr D = make_cross_section(Body2D::disk(1.0));
    Vec x = v3(0, 0, 1), y = v3(0.5, 0, 1);
    CHECK(hilbert_cross_ratio(*D, x, y) == doctest::Approx(std::log(3.0)).epsilon(1e-9));
    CHECK(hilbert_cross_ratio(*D, x, x) == 0.0);
    // agreement with the gauge route on random pairs, disk and lorentz(3)
    for (ConePtr K : {D, make_lorentz(3)}) {
        for (int i = 0; i < 30; ++i) {
            Rng rng(Rng::derive(99, K->name(), static_cast<std::uint64_t>(i)));
            Vec a = random_interior(*K, rng), b = random_interior(*K, rng);
            CHECK(std::abs(hilbert_cross_ratio(*K, a, b) - hilbert(*K, a, b)) < 1e-8);
        }
    }
}

TEST_CASE("gromov products: bounded for distinct targets, divergent for one") {
    ConePtr D = make_cross_section(Body2D::disk(1.0));
    std::vector<double> ss = {1.0, 0.1, 0.01, 1e-3, 1e-4, 1e-5, 1e-6};

    auto distinct = gromov_experiment(*D, {1.0, 0.0}, {-1.0, 0.0}, ss);
    REQUIRE(distinct.size() == ss.size());
    for (const auto& r : distinct) {
        CHECK(r.branch == "distinct");
        CHECK(r.value <= 3.0);
    }
    // antipodal chords through the center: the product vanishes identically
    for (const auto& r : distinct) CHECK(std::abs(r.value) < 1e-9);

    // non-antipodal distinct targets: bounded but nonzero
    auto skew = gromov_experiment(*D, {1.0, 0.0}, {0.0, 1.0}, ss);
    for (const auto& r : skew) CHECK(r.value <= 3.0);
    CHECK(std::abs(skew.back().value) > 1e-3);

    auto same = gromov_experiment(*D, {1.0, 0.0}, {1.0, 0.0}, ss);
    double at_1e4 = 0.0;
    for (const auto& r : same) {
        CHECK(r.branch == "same");
        if (r.s == 1e-4) at_1e4 = r.value;
    }
    CHECK(at_1e4 > 10.0);
    // and it keeps growing
    CHECK(same.back().value > at_1e4);
}

TEST_CASE("gromov experiment rejects off-boundary targets") {
    ConePtr D = make_cross_section(Body2D::disk(1.0));
    CHECK_THROWS_AS(gromov_experiment(*D, {0.5, 0.0}, {-1.0, 0.0}, {0.1}), std::domain_error);
}

TEST_CASE("smoothness probes") {
    ConePtr K = make_lorentz(3);
    auto rep = smoothness_probe_random(*K, 4, 50);
    CHECK(!rep.non_smooth);
    for (const auto& r : rep.rows) CHECK(r.state_count == 1);

    ConePtr P = make_pnorm(3, 4.0);
    auto repp = smoothness_probe_random(*P, 4, 50);
    CHECK(!repp.non_smooth);

    ConePtr L = make_cross_section(Body2D::lens(0.5));
    Vec corner = v3(0.0, std::sqrt(0.75), 1.0);
    auto row = smoothness_probe(*L, corner);
    CHECK(row.state_count == 2);
    CHECK(row.spread > 0.1);
    CHECK(row.spread == doctest::Approx(0.8230).epsilon(1e-3));
}
