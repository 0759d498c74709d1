#pragma once

/*
 * Jordan structure from cone data.
 *
 * On the normalized boundary P = { p in boundary(C) : M(p/u) = 1 } of a
 * smooth strictly convex cone, each p has a unique supporting state phi_p and
 * a complement p' = u - p. The two-argument form
 *
 *   B(p, v) = phi_{p'}(v),
 *
 * extended linearly through v = alpha p + beta p' representations, is the
 * candidate polarized square norm: when B is symmetric and positive definite
 * on H = ker(B(., u)), the product
 *
 *   (h + b u) o (k + c u) = c h + b k + (B(h,k)/2 + b c) u
 *
 * is a spin-factor Jordan product whose positive cone is C, with
 * |h + b u|_u = sqrt(B(h,h)/2) + |b|. Asymmetric B certifies that no such
 * structure exists (the p-norm cones for p != 2 are the counterexamples).
 */

#include "conelab/cone_map.hpp"
#include "conelab/gauge.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace conelab {

struct PPoint {
    Vec p;
    State support;  // the unique supporting state at p
};

// r / M(r/u) for boundary r != 0; errors when the supporting state at the
// normalized point is not unique.
PPoint project_to_P(const Cone& K, const Vec& r);

// u - p, which must land back in P.
PPoint complement(const Cone& K, const PPoint& p);

// v = alpha p + beta p' with alpha >= beta, p in P; multiples of u get a
// fixed deterministic frame with alpha = beta.
struct PRepresentation {
    PPoint p, pprime;
    double alpha, beta;
};
PRepresentation represent_in_P(const Cone& K, const Vec& v);

double bform(const Cone& K, const PPoint& p, const Vec& v);

// B extended to arbitrary first arguments through represent_in_P.
double bform_general(const Cone& K, const Vec& x, const Vec& y);

struct BSymmetryResult {
    double asymmetry;  // max |B(p,q) - B(q,p)| over the sampled pairs
    Vec p, q;          // witness pair attaining it
    double b_pq, b_qp;
};

// Pairs come from a deterministic direction pool (axes and diagonals first)
// plus seeded random boundary points.
BSymmetryResult check_b_symmetry(const Cone& K, std::uint64_t seed, int samples);

// B evaluated over a pool of P points; diagonal must be 1 since
// B(p,p) = phi_{p'}(u - p') = phi_{p'}(u) = 1.
struct BGram {
    std::vector<PPoint> points;
    Mat matrix;        // (i,j) = B(p_i, p_j)
    double asymmetry;  // max |matrix - matrix^T|
};

BGram build_bgram(const Cone& K, std::vector<PPoint> points);

struct HalflineCheck {
    double map_residual;  // |S_u(p_s) - (1/s)((1-s)p' + s u)|_u relative
    double dt_error;      // |d_T(u, p_s) + log s|
};

// S_u sends p_s = (1-s)p + s u to (1/s)((1-s)p' + s u); also d_T(u, p_s) = -log s.
HalflineCheck su_halfline_check(const Cone& K, const ConeMap& S_u, const PPoint& p, double s);

struct SplitH {
    Vec h;
    double beta;
    double psi_residual;  // |B(h, u)| after the split
};

// v = h + beta u with h in H = ker(B(., u)).
SplitH split_H(const Cone& K, const Vec& v);

enum class Verdict { SpinFactor, NotSpinFactor, Inconclusive };

std::string to_string(Verdict v);

struct ReconstructionReport {
    Verdict verdict = Verdict::Inconclusive;
    std::string note;
    double b_asymmetry = std::numeric_limits<double>::quiet_NaN();
    BSymmetryResult witness;
    Mat gram_H;             // Gram matrix of (.|.) = B/2 on the H basis
    Mat h_basis;            // columns span H
    double gram_condition = std::numeric_limits<double>::quiet_NaN();
    double gram_min_eig = std::numeric_limits<double>::quiet_NaN();
    double unit_b_value = std::numeric_limits<double>::quiet_NaN();  // B(u,u), must be 2
    double norm_identity_residual = std::numeric_limits<double>::quiet_NaN();
    double squares_residual = std::numeric_limits<double>::quiet_NaN();
    double squares_cone_violation = std::numeric_limits<double>::quiet_NaN();
    double sqrt_residual = std::numeric_limits<double>::quiet_NaN();
    double jordan_identity_residual = std::numeric_limits<double>::quiet_NaN();
    double su_halfline_residual = std::numeric_limits<double>::quiet_NaN();  // NaN without a map
    std::uint64_t seed = 0;
    int samples = 0;
};

// Full detector: B symmetry, Gram positivity, norm identity, squares law,
// square-root round trip, Jordan identity; the half-line law when an
// antimorphism is supplied. Thresholds come from tol.reconstruction (with the
// fixed 1e6 bound on the Gram condition number).
ReconstructionReport reconstruct_jordan(const Cone& K, const ConeMap* g, std::uint64_t seed,
                                        int samples, const Tolerances& tol = {});

// The reconstructed product itself (usable once the report says SpinFactor).
Vec reconstructed_product(const Cone& K, const Mat& h_basis, const Vec& a, const Vec& b);

}  // namespace conelab
