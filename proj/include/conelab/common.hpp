#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace conelab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Thrown by the wire-format layer only; the CLI maps it to exit code 2.
// Everything math-precondition shaped is std::domain_error (exit code 3).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Knobs shared across modules. Values are the documented defaults; the CLI
// can override each one by name.
struct Tolerances {
    double boundary = 1e-9;        // membership band, scaled by (1 + |v|_2)
    double gauge_rel = 1e-9;       // relative agreement required of gauge identities
    double symmetry = 1e-6;        // residual band for symmetry checks
    double reconstruction = 1e-6;  // verdict thresholds in the reconstruction report
};

inline double rel_diff(double a, double b) {
    double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline void check_finite(const Vec& v, const char* what) {
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace conelab
