#pragma once

/*
 * Spin-factor Jordan algebra on R^{n-1} (+) R e, with the last coordinate as
 * the unit direction:
 *
 *   (a + alpha e) o (b + beta e) = beta a + alpha b + ((a|b) + alpha beta) e
 *
 * Spectral data of v = x + beta e with x != 0:
 *
 *   p       = (x/|x| + e)/2,   p' = e - p        (frame idempotents)
 *   lam1    = beta + |x|,      lam2 = beta - |x|
 *   v       = lam1 p + lam2 p'
 *
 * from which inverse and square root are the usual functional calculus. The
 * positive cone of this algebra is lorentz(n).
 */

#include "conelab/common.hpp"

namespace conelab {

struct SpinElement {
    Vec h;       // R^{n-1} part
    double lam;  // coefficient of the unit e
};

SpinElement to_spin(const Vec& v);
Vec from_spin(const SpinElement& a);

SpinElement jordan_product(const SpinElement& a, const SpinElement& b);

struct SpectralDecomp {
    double lam1, lam2;  // lam1 >= lam2
    SpinElement p, pprime;
};

// Requires h != 0; multiples of the unit have no distinguished frame.
SpectralDecomp spectral(const SpinElement& v);

// Jordan inverse; singular when |lam| is within 1e-12 * (1 + |a|) of |h|_2.
SpinElement spin_inverse(const SpinElement& a);

// Square root inside the cone; requires lam2 >= -tol, tiny negatives clamp.
SpinElement sqrt_in_cone(const SpinElement& v);

}  // namespace conelab
