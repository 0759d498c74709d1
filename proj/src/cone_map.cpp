#include "conelab/cone_map.hpp"

#include "conelab/spin.hpp"

namespace conelab {

namespace {

ConeMap lorentz_inversion(ConePtr K) {
    ConeMap g;
    g.name = "inversion";
    g.cone = K;
    g.eval = [](const Vec& v) { return from_spin(spin_inverse(to_spin(v))); };
    g.inverse_eval = g.eval;  // involution
    return g;
}

}  // namespace

ConeMap inversion_map(ConePtr K) {
    if (is_lorentz(*K)) return lorentz_inversion(K);
    if (auto li = as_linear_image(*K); li && is_lorentz(*li->base)) {
        Mat T = *li->T;
        Mat Tinv = *li->T_inv;
        ConeMap g;
        g.name = "conjugated-inversion";
        g.cone = K;
        g.eval = [T, Tinv](const Vec& v) { return Vec(T * from_spin(spin_inverse(to_spin(Tinv * v)))); };
        g.inverse_eval = g.eval;
        return g;
    }
    throw std::domain_error("inversion_map: no antimorphism available for " + K->name());
}

ConeMap identity_map(ConePtr K) {
    ConeMap g;
    g.name = "identity";
    g.cone = std::move(K);
    g.eval = [](const Vec& v) { return v; };
    g.inverse_eval = g.eval;
    return g;
}

ConeMap resolve_map(ConePtr K, const std::string& selector) {
    if (selector == "builtin:inversion") {
        if (!is_lorentz(*K)) throw std::domain_error("builtin:inversion requires a lorentz cone");
        return inversion_map(std::move(K));
    }
    if (selector == "builtin:conjugated-inversion") {
        auto li = as_linear_image(*K);
        if (!li || !is_lorentz(*li->base))
            throw std::domain_error("builtin:conjugated-inversion requires a linear image of a lorentz cone");
        return inversion_map(std::move(K));
    }
    if (selector == "builtin:identity") return identity_map(std::move(K));
    throw parse_error("unknown map selector: " + selector);
}

}  // namespace conelab
