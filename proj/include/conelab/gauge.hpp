#pragma once

/*
 * Gauge and the metric layer.
 *
 *   M(x/y) = inf{ b > 0 : x <= b y }          (y interior)
 *
 * Two independent routes compute it: closed forms / membership bisection
 * (gauge), and maximization of phi(x)/phi(y) over extreme states
 * (gauge_variational). The second is the oracle the first is tested against.
 *
 * Thompson and Hilbert metrics on the interior:
 *   d_T(x,y) = max(log M(x/y), log M(y/x))
 *   d_H(x,y) = log M(x/y) + log M(y/x)
 *
 * The order unit norm is |v|_u = inf{ t > 0 : -t u <= v <= t u }.
 */

#include "conelab/cone.hpp"
#include "conelab/rng.hpp"

#include <optional>

namespace conelab {

// Largest t >= 0 with from + t*dir still in C; nullopt when the ray never
// leaves (dir in the recession cone). from must be a member of C.
std::optional<double> ray_exit(const Cone& K, const Vec& from, const Vec& dir);

// inf{ b : b*y - x in C } for arbitrary x (may be negative for x <= 0);
// y must be interior. No membership checks on x.
double gauge_raw(const Cone& K, const Vec& x, const Vec& y);

// M(x/y) with the documented preconditions: x in C, y interior. M(0/y) = 0.
double gauge(const Cone& K, const Vec& x, const Vec& y, double boundary_tol = 1e-9);

struct VariationalGauge {
    double value;
    State argmax;
};

// Grid maximization of phi(x)/phi(y) over >= grid extreme states, refined by
// a derivative-free compass search from the best grid node. Independent of
// the closed forms; this is the oracle.
VariationalGauge gauge_variational(const Cone& K, const Vec& x, const Vec& y, int grid = 10000,
                                   double boundary_tol = 1e-9);

double thompson(const Cone& K, const Vec& x, const Vec& y, double boundary_tol = 1e-9);
double hilbert(const Cone& K, const Vec& x, const Vec& y, double boundary_tol = 1e-9);

double order_unit_norm(const Cone& K, const Vec& v);

// Supporting states at a boundary point b != 0: analytic active-set states,
// deduplicated at angular tolerance 1e-6, positivity spot-checked on `probes`
// deterministic cone points.
std::vector<State> supporting_states(const Cone& K, const Vec& b, int probes = 16,
                                     double boundary_tol = 1e-9);

// Strictly positive state rho (rho > 0 on C \ {0}), validated on a sample of
// boundary points.
State strictly_positive_state(const Cone& K, int validate_samples = 64);

// Seeded samplers. Interior points spread over directions, depth in the
// section, and scale; boundary points are polished ray exits from u.
Vec random_interior(const Cone& K, Rng& rng, double max_depth = 0.95);
Vec random_boundary(const Cone& K, Rng& rng);

// The 2-d subcone C(x,y) = span(x,y) cap C for interior x and independent y:
// boundary generators r (on y's side of x) and s, plus a 2 x n map A with
// A r = (1,0), A s = (0,1), so A maps C(x,y) onto the closed first quadrant.
struct Subcone2D {
    Vec r, s;
    Mat A;
    Eigen::Vector2d x_coords;  // A x, both entries positive
};
Subcone2D subcone2d(const Cone& K, const Vec& x, const Vec& y);

}  // namespace conelab
