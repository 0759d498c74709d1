#pragma once

/*
 * Geodesics and boundary behavior.
 *
 * Type I lines through x:  gamma(t) = e^t r + e^{-t} s with r, s on the
 * boundary and r + s = x; along them the gauge is symmetric and
 * d_T(gamma(t1), gamma(t2)) = d_H/2-normalized |t1 - t2|. Type II lines are
 * the scaling orbits t -> e^t x. The symmetry S_x reverses type I lines:
 * S_x(gamma(t)) = gamma(-t).
 *
 * Near the boundary: M(x / (1-s) eta + s x) = 1/s for boundary eta, the
 * horofunction products converge to supporting-state values, and Gromov
 * products distinguish "same boundary target" from "different targets".
 */

#include "conelab/cone_map.hpp"
#include "conelab/gauge.hpp"

#include <string>
#include <vector>

namespace conelab {

struct TypeIGeodesic {
    Vec r, s;   // boundary generators, r + s = gamma(0)
    double t0;  // parameter of the second anchor point
    Vec x, zhat;
};

// The type I line through interior x and z (z rescaled so both points sit on
// one parameterization); errors when x and z are proportional.
TypeIGeodesic typeI_through(const Cone& K, const Vec& x, const Vec& z);

Vec typeI_point(const TypeIGeodesic& geo, double t);
std::vector<Vec> sample_typeI(const TypeIGeodesic& geo, const std::vector<double>& ts);

inline Vec typeII_point(const Vec& x, double t) { return std::exp(t) * x; }

// max over ts of |S_x(gamma(t)) - gamma(-t)|_u / (1 + |gamma(-t)|_u)
double reflect_residual(const ConeMap& g, const TypeIGeodesic& geo, const std::vector<double>& ts);

// M(x / (1-s) eta + s x) for boundary eta, interior x, s in (0,1]; asserts
// the exact value 1/s at 1e-9 relative and returns the computed gauge.
double boundary_gauge(const Cone& K, const Vec& eta, const Vec& x, double s);

struct HoroSample {
    double s;
    double estimate;      // M(z_s/y_s) / M(u/y_s)
    double state_at_eta;  // maximizing state of the step, evaluated at eta
};

struct HoroResult {
    std::vector<HoroSample> rows;  // in the given s order
    double phi_z;                  // supporting-state value the estimates approach
    double limit_estimate;         // estimate at the smallest s
    double slope;                  // log-log convergence order (NaN when exact)
    bool state_monotone;           // maximizing states sink toward the face
};

// Horofunction limit along y_s = (1-s) eta + s u, z_s = (1-s) z + s u.
// Requires a unique supporting state phi at eta with phi(z) > 0.
HoroResult horo_limit(const Cone& K, const Vec& eta, const Vec& z, const std::vector<double>& s_seq,
                      int state_grid = 4096);

// Hilbert distance via the boundary chord cross ratio in the 2-d section
// picture; only for cones with a section body (cross sections, lorentz(3)).
double hilbert_cross_ratio(const Cone& K, const Vec& x, const Vec& y);

struct GromovRow {
    double s;
    double value;  // d_H(x_s, u) + d_H(y_s, u) - d_H(x_s, y_s)
    std::string branch;
};

// Walks x_s, y_s toward boundary targets eta1, eta2 of the section body:
// straight from the center for distinct targets, along two distinct chords
// when eta1 = eta2. Bounded values vs. divergence separates the two cases.
std::vector<GromovRow> gromov_experiment(const Cone& K, const Eigen::Vector2d& eta1,
                                         const Eigen::Vector2d& eta2, const std::vector<double>& s_values);

struct SmoothnessRow {
    int state_count;
    double spread;  // largest pairwise angle between supporting covectors
};

SmoothnessRow smoothness_probe(const Cone& K, const Vec& b);

struct SmoothnessReport {
    std::vector<SmoothnessRow> rows;
    bool non_smooth;  // some point carries >= 2 states with spread > 1e-3
};

SmoothnessReport smoothness_probe_random(const Cone& K, std::uint64_t seed, int samples);

}  // namespace conelab
