#pragma once

/*
 * Finite-dimensional order unit spaces (V, C, u).
 *
 * A cone model carries a closed, pointed, generating cone C in R^n together
 * with a distinguished interior point u (the order unit). Everything the
 * metric layer needs is derived from one scalar field per model:
 *
 *   margin(v)   signed slack of the defining inequality, positively
 *               homogeneous of degree 1, with
 *                 margin(v) > 0   <=>  v interior
 *                 margin(v) = 0   <=>  v boundary
 *                 margin(v) < 0   <=>  v outside
 *
 * Models also expose their extreme normalized states phi (phi >= 0 on C,
 * phi(u) = 1), which drive the variational gauge oracle
 *
 *   M(x/y) = max_phi phi(x)/phi(y),
 *
 * and the supporting states at boundary points, which drive the smoothness
 * diagnostics and the spin-factor reconstruction.
 *
 * Variants:
 *   lorentz(n)                 C = {(h,t) : t >= |h|_2},  u = (0,..,0,1)
 *   pnorm(n,p)                 C = {(h,t) : t >= |h|_p},  p > 1
 *   linear_image(T, base)      C = T(base cone), T invertible, u = T u_base
 *   cross_section(body)        C = {(x,t) : t > 0, x/t in body} in R^3
 *   orthant2                   C = R^2_{>=0}, u = (1,1)
 */

#include "conelab/common.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace conelab {

enum class Region { Interior, Boundary, Outside };

struct MembershipVerdict {
    Region region;
    double margin;
};

// Normalized positive functional: covector c with c.dot(u) == 1.
struct State {
    Vec covector;
    double operator()(const Vec& v) const { return covector.dot(v); }
};

// Planar cross-section bodies for the 3-d section cones. The lens is the
// intersection of the two unit disks centered at (+-c, 0); it is strictly
// convex but has two corners at (0, +-sqrt(1-c^2)).
struct Body2D {
    enum class Kind { Disk, Lens };
    Kind kind;
    double radius = 1.0;         // Disk
    double center_offset = 0.5;  // Lens, must lie in (0,1)

    static Body2D disk(double r);
    static Body2D lens(double c);

    double section_margin(const Eigen::Vector2d& z) const;
    // degree-1 homogeneous margin of the associated cone point (x, t)
    double cone_margin(const Eigen::Vector2d& x, double t) const;
    // argmax_{z in body} w.z for a unit direction w
    Eigen::Vector2d support_point(const Eigen::Vector2d& w) const;
    // outward unit normals of the active constraints at a boundary point
    std::vector<Eigen::Vector2d> normals_at(const Eigen::Vector2d& omega, double tol) const;
    bool strictly_convex() const { return true; }
    std::vector<Eigen::Vector2d> corners() const;
};

class Cone {
public:
    virtual ~Cone() = default;

    int dim() const { return dim_; }
    const Vec& unit() const { return unit_; }
    virtual std::string name() const = 0;

    virtual double margin(const Vec& v) const = 0;

    // Closed-form fast paths; absent means the caller falls back to bisection.
    virtual std::optional<double> gauge_closed(const Vec& x, const Vec& y) const;
    virtual std::optional<double> norm_closed(const Vec& v) const;

    // Extreme states are parameterized by a nonzero direction vector, except
    // for polyhedral models whose extreme states form a finite family.
    virtual int state_param_dim() const = 0;
    virtual State state_from_direction(const Vec& w) const;
    virtual std::vector<State> finite_extreme_states() const;

    // Analytic supporting states at a boundary point b != 0 (no boundary or
    // dedup checks here; use conelab::supporting_states).
    virtual std::vector<State> states_at_boundary(const Vec& b, double tol) const = 0;

    virtual Vec strictly_positive_covector() const = 0;

    // Non-null for models with a 2-d section picture (cross sections, and
    // lorentz(3) whose section is the unit disk).
    virtual const Body2D* section_body() const { return nullptr; }

    void check_dim(const Vec& v, const char* what) const;

protected:
    Cone(int dim, Vec unit) : dim_(dim), unit_(std::move(unit)) {}
    int dim_;
    Vec unit_;
};

using ConePtr = std::shared_ptr<const Cone>;

ConePtr make_lorentz(int n);
ConePtr make_pnorm(int n, double p);
ConePtr make_linear_image(const Mat& T, ConePtr base);
ConePtr make_cross_section(const Body2D& body);
ConePtr make_orthant2();

// Accessors used by maps and serialization; return nullptr / nullopt when the
// cone is not of that shape.
struct LinearImageView {
    const Mat* T;
    const Mat* T_inv;
    ConePtr base;
};
std::optional<LinearImageView> as_linear_image(const Cone& K);
bool is_lorentz(const Cone& K);
double pnorm_exponent(const Cone& K);  // NaN if not a pnorm model

// Membership with the scaled tolerance band |margin| <= tol * (1 + |v|_2).
MembershipVerdict contains(const Cone& K, const Vec& v, double boundary_tol = 1e-9);

void require_interior(const Cone& K, const Vec& v, const char* what, double tol = 1e-9);
void require_member(const Cone& K, const Vec& v, const char* what, double tol = 1e-9);

// Deterministic direction sets: antipodal pair for d=1, uniform angles for
// d=2, Fibonacci sphere for d=3, fixed-stream Gaussian directions above that.
std::vector<Vec> direction_grid(int d, int count);

std::vector<State> extreme_state_grid(const Cone& K, int count);

}  // namespace conelab
