#include "conelab/spin.hpp"

#include <cmath>

namespace conelab {

SpinElement to_spin(const Vec& v) {
    if (v.size() < 2) throw std::invalid_argument("to_spin: need dimension >= 2");
    check_finite(v, "to_spin");
    return {v.head(v.size() - 1), v[v.size() - 1]};
}

Vec from_spin(const SpinElement& a) {
    Vec v(a.h.size() + 1);
    v.head(a.h.size()) = a.h;
    v[a.h.size()] = a.lam;
    return v;
}

SpinElement jordan_product(const SpinElement& a, const SpinElement& b) {
    if (a.h.size() != b.h.size()) throw std::invalid_argument("jordan_product: dimension mismatch");
    return {b.lam * a.h + a.lam * b.h, a.h.dot(b.h) + a.lam * b.lam};
}

SpectralDecomp spectral(const SpinElement& v) {
    double r = v.h.norm();
    double scale = r + std::abs(v.lam);
    if (r <= 1e-14 * (1.0 + scale))
        throw std::domain_error("spectral: multiples of the unit have no distinguished frame");
    Vec w = v.h / r;
    SpinElement p{w / 2.0, 0.5};
    SpinElement pp{-w / 2.0, 0.5};
    return {v.lam + r, v.lam - r, p, pp};
}

SpinElement spin_inverse(const SpinElement& a) {
    double r = a.h.norm();
    double scale = r + std::abs(a.lam);
    double det = a.lam * a.lam - r * r;  // lam1 * lam2
    if (std::abs(std::abs(a.lam) - r) <= 1e-12 * (1.0 + scale))
        throw std::domain_error("spin_inverse: element is singular (a spectral value vanishes)");
    return {-a.h / det, a.lam / det};
}

SpinElement sqrt_in_cone(const SpinElement& v) {
    double r = v.h.norm();
    double scale = r + std::abs(v.lam);
    double lam2 = v.lam - r;
    if (lam2 < -1e-12 * (1.0 + scale))
        throw std::domain_error("sqrt_in_cone: element is not in the positive cone");
    if (r <= 1e-300) return {v.h, std::sqrt(std::max(0.0, v.lam))};  // multiple of the unit
    double s1 = std::sqrt(v.lam + r);
    double s2 = std::sqrt(std::max(0.0, lam2));
    // s1 * p + s2 * p' with the spectral frame of v
    Vec w = v.h / r;
    return {0.5 * (s1 - s2) * w, 0.5 * (s1 + s2)};
}

}  // namespace conelab
