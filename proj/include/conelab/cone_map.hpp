#pragma once

/*
 * Maps of the cone interior. The interesting ones are the antihomogeneous
 * order antimorphisms g (g(t v) = t^{-1} g(v), v <= w  =>  g(w) <= g(v)),
 * characterized by the gauge identity M(x/y) = M(g(y)/g(x)). Jordan inversion
 * on the spin factor is the builtin example; its conjugate T o inv o T^{-1}
 * serves the linear-image cones.
 */

#include "conelab/cone.hpp"

#include <functional>
#include <string>

namespace conelab {

struct ConeMap {
    std::string name;
    ConePtr cone;
    std::function<Vec(const Vec&)> eval;
    std::function<Vec(const Vec&)> inverse_eval;  // empty when no inverse is known

    Vec operator()(const Vec& v) const { return eval(v); }
    bool has_inverse() const { return static_cast<bool>(inverse_eval); }
};

// Jordan inversion for lorentz cones, conjugated inversion for linear images
// of lorentz cones; errors for variants with no antimorphism available.
ConeMap inversion_map(ConePtr K);

ConeMap identity_map(ConePtr K);

// Selector strings accepted by the CLI: "builtin:inversion",
// "builtin:conjugated-inversion", "builtin:identity".
ConeMap resolve_map(ConePtr K, const std::string& selector);

}  // namespace conelab
