#pragma once

/*
 * Gateaux linearization of antimorphisms.
 *
 * For an antihomogeneous order antimorphism g and interior x, the directional
 * derivative D(g)(x) exists wherever g is smooth, and
 *
 *   G_x := -D(g)(x)
 *
 * is a cone automorphism with G_x(x) = g(x). The map
 *
 *   S_x := G_x^{-1} o g
 *
 * then fixes x, is an involution, has derivative -Id at x, and is itself an
 * antimorphism: the point symmetry of the Thompson/Hilbert geometry at x.
 */

#include "conelab/cone_map.hpp"

#include <Eigen/LU>

namespace conelab {

struct GateauxOptions {
    double eps = 1e-4;  // base step scale; capped adaptively by the interior depth
    int max_shrink = 3;
};

// Central-difference directional derivative of g at interior x along z, two
// Richardson passes; shrinks the step tenfold (up to max_shrink times) when
// x +- t z leaves the interior.
Vec gateaux(const ConeMap& g, const Vec& x, const Vec& z, const GateauxOptions& opts = {});

struct LinearizedMap {
    Mat G;  // matrix of G_x = -D(g)(x)
    Vec basepoint;
    double cond;  // 1 / rcond estimate from the factorization
    Eigen::PartialPivLU<Mat> lu;

    Vec apply(const Vec& v) const { return G * v; }
    Vec solve(const Vec& v) const { return lu.solve(v); }
};

// Assembles G_x column by column and validates linearity: G_x x must equal
// g(x), and fresh random directions must match the matrix action at 1e-6
// relative. Throws when the map is not differentiable at x.
LinearizedMap linearize(const ConeMap& g, const Vec& x, const GateauxOptions& opts = {});

// S_x = G_x^{-1} o g as a ConeMap (inverse available when g has one).
ConeMap symmetry(const ConeMap& g, const Vec& x, const GateauxOptions& opts = {});

}  // namespace conelab
