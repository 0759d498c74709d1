#include "conelab/cone.hpp"

#include "conelab/rng.hpp"

#include <Eigen/LU>
#include <cmath>

namespace conelab {

namespace {

Vec with_last(const Vec& h, double t) {
    Vec v(h.size() + 1);
    v.head(h.size()) = h;
    v[h.size()] = t;
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Body2D

Body2D Body2D::disk(double r) {
    if (!(r > 0.0)) throw std::domain_error("disk body: radius must be positive");
    Body2D b;
    b.kind = Kind::Disk;
    b.radius = r;
    return b;
}

Body2D Body2D::lens(double c) {
    if (!(c > 0.0 && c < 1.0)) throw std::domain_error("lens body: center offset must lie in (0,1)");
    Body2D b;
    b.kind = Kind::Lens;
    b.center_offset = c;
    return b;
}

double Body2D::section_margin(const Eigen::Vector2d& z) const {
    if (kind == Kind::Disk) return radius - z.norm();
    Eigen::Vector2d c1(center_offset, 0.0), c2(-center_offset, 0.0);
    return std::min(1.0 - (z - c1).norm(), 1.0 - (z - c2).norm());
}

double Body2D::cone_margin(const Eigen::Vector2d& x, double t) const {
    if (kind == Kind::Disk) return radius * t - x.norm();
    Eigen::Vector2d c1(center_offset, 0.0), c2(-center_offset, 0.0);
    return std::min(t - (x - t * c1).norm(), t - (x - t * c2).norm());
}

Eigen::Vector2d Body2D::support_point(const Eigen::Vector2d& w) const {
    Eigen::Vector2d wh = w.normalized();
    if (kind == Kind::Disk) return radius * wh;
    Eigen::Vector2d c1(center_offset, 0.0), c2(-center_offset, 0.0);
    Eigen::Vector2d z1 = c1 + wh, z2 = c2 + wh;
    // circle support point counts only if it stays inside the other disk;
    // otherwise the supporting point is the corner on w's side
    if ((z1 - c2).norm() <= 1.0 + 1e-14) return z1;
    if ((z2 - c1).norm() <= 1.0 + 1e-14) return z2;
    double y = std::sqrt(std::max(0.0, 1.0 - center_offset * center_offset));
    return Eigen::Vector2d(0.0, wh.y() >= 0.0 ? y : -y);
}

std::vector<Eigen::Vector2d> Body2D::normals_at(const Eigen::Vector2d& omega, double tol) const {
    std::vector<Eigen::Vector2d> out;
    if (kind == Kind::Disk) {
        double r = omega.norm();
        if (r > 0.0 && std::abs(r - radius) <= tol * radius) out.push_back(omega / r);
        return out;
    }
    Eigen::Vector2d c1(center_offset, 0.0), c2(-center_offset, 0.0);
    for (const auto& c : {c1, c2}) {
        Eigen::Vector2d d = omega - c;
        double r = d.norm();
        if (r > 0.0 && std::abs(r - 1.0) <= tol) out.push_back(d / r);
    }
    return out;
}

std::vector<Eigen::Vector2d> Body2D::corners() const {
    if (kind == Kind::Disk) return {};
    double y = std::sqrt(std::max(0.0, 1.0 - center_offset * center_offset));
    return {Eigen::Vector2d(0.0, y), Eigen::Vector2d(0.0, -y)};
}

// ---------------------------------------------------------------------------
// Cone base

std::optional<double> Cone::gauge_closed(const Vec&, const Vec&) const { return std::nullopt; }
std::optional<double> Cone::norm_closed(const Vec&) const { return std::nullopt; }

State Cone::state_from_direction(const Vec&) const {
    throw std::domain_error(name() + ": extreme states form a finite family, not a direction family");
}

std::vector<State> Cone::finite_extreme_states() const {
    throw std::domain_error(name() + ": extreme states are direction-parameterized");
}

void Cone::check_dim(const Vec& v, const char* what) const {
    if (v.size() != dim_)
        throw std::invalid_argument(std::string(what) + ": expected dimension " + std::to_string(dim_) +
                                    ", got " + std::to_string(v.size()));
    check_finite(v, what);
}

// ---------------------------------------------------------------------------
// Lorentz

namespace {

class LorentzCone final : public Cone {
public:
    explicit LorentzCone(int n) : Cone(n, make_unit(n)) {
        if (n < 2) throw std::domain_error("lorentz cone needs dimension >= 2");
        if (n == 3) disk_section_ = Body2D::disk(1.0);
    }

    std::string name() const override { return "lorentz(" + std::to_string(dim_) + ")"; }

    double margin(const Vec& v) const override {
        check_dim(v, "lorentz margin");
        return v[dim_ - 1] - v.head(dim_ - 1).norm();
    }

    // bilinear form of the defining quadric: Q(v,w) = v_t w_t - v_h . w_h
    static double lform(const Vec& v, const Vec& w) {
        int n = static_cast<int>(v.size());
        return v[n - 1] * w[n - 1] - v.head(n - 1).dot(w.head(n - 1));
    }

    // Largest root of Q(b*y - x) = 0 in b. For y interior this is exactly
    // inf{b : b*y - x in C}, for every x (the linear branch can never bind:
    // at the zero of the t-part the quadric is <= 0, so the parabola in b
    // always has real roots and the cone is entered at the larger one).
    std::optional<double> gauge_closed(const Vec& x, const Vec& y) const override {
        // max root of q(b y - x) = 0 as b = c + sqrt(-q(w,w)/qyy) with w the
        // q-orthogonal part of x; the direct discriminant q(x,y)^2 - qxx qyy
        // cancels catastrophically for near-proportional x, y
        double qyy = lform(y, y);
        double c = lform(x, y) / qyy;
        Vec w = x - c * y;  // spacelike: q(w,w) <= 0
        double disc = -lform(w, w);
        if (disc < 0.0) disc = 0.0;  // roundoff: x on the quadric
        return c + std::sqrt(disc / qyy);
    }

    std::optional<double> norm_closed(const Vec& v) const override {
        return v.head(dim_ - 1).norm() + std::abs(v[dim_ - 1]);
    }

    int state_param_dim() const override { return dim_ - 1; }

    State state_from_direction(const Vec& w) const override {
        if (w.size() != dim_ - 1) throw std::invalid_argument("lorentz state direction: bad dimension");
        double s = w.norm();
        if (s <= 0.0) throw std::domain_error("lorentz state direction: zero vector");
        return State{with_last(w / s, 1.0)};
    }

    std::vector<State> states_at_boundary(const Vec& b, double tol) const override {
        (void)tol;
        Vec h = b.head(dim_ - 1);
        double s = h.norm();
        if (s <= 0.0) throw std::domain_error("lorentz supporting state: apex has no supporting state");
        return {State{with_last(-h / s, 1.0)}};
    }

    Vec strictly_positive_covector() const override {
        Vec c = Vec::Zero(dim_);
        c[dim_ - 1] = 1.0;
        return c;
    }

    const Body2D* section_body() const override { return dim_ == 3 ? &disk_section_ : nullptr; }

private:
    static Vec make_unit(int n) {
        Vec u = Vec::Zero(n);
        u[n - 1] = 1.0;
        return u;
    }
    Body2D disk_section_{};
};

// ---------------------------------------------------------------------------
// PNorm

class PNormCone final : public Cone {
public:
    PNormCone(int n, double p) : Cone(n, make_unit(n)), p_(p), q_(p / (p - 1.0)) {
        if (n < 2) throw std::domain_error("pnorm cone needs dimension >= 2");
        if (!(p > 1.0)) throw std::domain_error("pnorm cone needs p > 1");
    }

    std::string name() const override {
        return "pnorm(" + std::to_string(dim_) + ", p=" + std::to_string(p_) + ")";
    }

    double p() const { return p_; }

    double pnorm(const Vec& h) const {
        double s = 0.0;
        for (int i = 0; i < h.size(); ++i) s += std::pow(std::abs(h[i]), p_);
        return std::pow(s, 1.0 / p_);
    }

    double margin(const Vec& v) const override {
        check_dim(v, "pnorm margin");
        return v[dim_ - 1] - pnorm(v.head(dim_ - 1));
    }

    std::optional<double> norm_closed(const Vec& v) const override {
        return pnorm(v.head(dim_ - 1)) + std::abs(v[dim_ - 1]);
    }

    int state_param_dim() const override { return dim_ - 1; }

    // extreme states are (a, 1) with |a|_q = 1, q the conjugate exponent
    State state_from_direction(const Vec& w) const override {
        if (w.size() != dim_ - 1) throw std::invalid_argument("pnorm state direction: bad dimension");
        double s = 0.0;
        for (int i = 0; i < w.size(); ++i) s += std::pow(std::abs(w[i]), q_);
        s = std::pow(s, 1.0 / q_);
        if (s <= 0.0) throw std::domain_error("pnorm state direction: zero vector");
        return State{with_last(w / s, 1.0)};
    }

    // gradient of t - |h|_p at b: weights sign(b_i) |b_i|^{p-1} / |h|_p^{p-1}
    std::vector<State> states_at_boundary(const Vec& b, double tol) const override {
        (void)tol;
        Vec h = b.head(dim_ - 1);
        double s = pnorm(h);
        if (s <= 0.0) throw std::domain_error("pnorm supporting state: apex has no supporting state");
        Vec a(dim_ - 1);
        for (int i = 0; i < a.size(); ++i) {
            double r = std::abs(h[i]) / s;
            a[i] = -(h[i] < 0 ? -1.0 : 1.0) * std::pow(r, p_ - 1.0);
        }
        return {State{with_last(a, 1.0)}};
    }

    Vec strictly_positive_covector() const override {
        Vec c = Vec::Zero(dim_);
        c[dim_ - 1] = 1.0;
        return c;
    }

private:
    static Vec make_unit(int n) {
        Vec u = Vec::Zero(n);
        u[n - 1] = 1.0;
        return u;
    }
    double p_, q_;
};

// ---------------------------------------------------------------------------
// Linear image: C = T(base), everything pulled back through the factored T

class LinearImageCone final : public Cone {
public:
    LinearImageCone(Mat T, ConePtr base)
        : Cone(static_cast<int>(T.rows()), Vec()), T_(std::move(T)), base_(std::move(base)) {
        if (T_.rows() != T_.cols()) throw std::invalid_argument("linear image: matrix must be square");
        if (T_.rows() != base_->dim()) throw std::invalid_argument("linear image: matrix does not match base dimension");
        Eigen::FullPivLU<Mat> lu(T_);
        if (!lu.isInvertible()) throw std::invalid_argument("linear image: matrix is singular");
        T_inv_ = lu.inverse();
        unit_ = T_ * base_->unit();
    }

    std::string name() const override { return "linear_image(" + base_->name() + ")"; }

    double margin(const Vec& v) const override {
        check_dim(v, "linear image margin");
        return base_->margin(T_inv_ * v);
    }

    std::optional<double> gauge_closed(const Vec& x, const Vec& y) const override {
        return base_->gauge_closed(T_inv_ * x, T_inv_ * y);
    }

    std::optional<double> norm_closed(const Vec& v) const override {
        return base_->norm_closed(T_inv_ * v);
    }

    int state_param_dim() const override { return base_->state_param_dim(); }

    State state_from_direction(const Vec& w) const override {
        return pull_back(base_->state_from_direction(w));
    }

    std::vector<State> finite_extreme_states() const override {
        auto states = base_->finite_extreme_states();
        for (auto& s : states) s = pull_back(s);
        return states;
    }

    std::vector<State> states_at_boundary(const Vec& b, double tol) const override {
        auto states = base_->states_at_boundary(T_inv_ * b, tol);
        for (auto& s : states) s = pull_back(s);
        return states;
    }

    Vec strictly_positive_covector() const override {
        return T_inv_.transpose() * base_->strictly_positive_covector();
    }

    const Mat& matrix() const { return T_; }
    const Mat& matrix_inverse() const { return T_inv_; }
    ConePtr base() const { return base_; }

private:
    // phi(base point) = 1 at u_base transports to (T^-T c)(u) = 1
    State pull_back(const State& s) const { return State{T_inv_.transpose() * s.covector}; }

    Mat T_, T_inv_;
    ConePtr base_;
};

// ---------------------------------------------------------------------------
// Cross section cone over a planar body, ambient R^3

class CrossSectionCone final : public Cone {
public:
    explicit CrossSectionCone(const Body2D& body) : Cone(3, Vec(3)), body_(body) {
        unit_ << 0.0, 0.0, 1.0;
        if (body_.section_margin(Eigen::Vector2d::Zero()) <= 0.0)
            throw std::domain_error("cross section: body must contain the origin in its interior");
    }

    std::string name() const override {
        return body_.kind == Body2D::Kind::Disk ? "cross_section(disk)" : "cross_section(lens)";
    }

    double margin(const Vec& v) const override {
        check_dim(v, "cross section margin");
        return body_.cone_margin(v.head<2>(), v[2]);
    }

    int state_param_dim() const override { return 2; }

    // phi_w(x, t) = t - w.x / h(w) with h the body support function
    State state_from_direction(const Vec& w) const override {
        if (w.size() != 2) throw std::invalid_argument("cross section state direction: bad dimension");
        double s = w.norm();
        if (s <= 0.0) throw std::domain_error("cross section state direction: zero vector");
        Eigen::Vector2d wh = w.head<2>() / s;
        double h = wh.dot(body_.support_point(wh));
        Vec c(3);
        c << -wh.x() / h, -wh.y() / h, 1.0;
        return State{c};
    }

    std::vector<State> states_at_boundary(const Vec& b, double tol) const override {
        if (b[2] <= 0.0) throw std::domain_error("cross section supporting state: apex has no supporting state");
        Eigen::Vector2d omega = b.head<2>() / b[2];
        auto normals = body_.normals_at(omega, std::max(tol, 1e-12) * 10.0 * (1.0 + omega.norm()));
        if (normals.empty()) throw std::domain_error("cross section supporting state: point is not on the boundary");
        std::vector<State> out;
        for (const auto& nu : normals) {
            double h = nu.dot(omega);
            Vec c(3);
            c << -nu.x() / h, -nu.y() / h, 1.0;
            out.push_back(State{c});
        }
        return out;
    }

    Vec strictly_positive_covector() const override {
        Vec c(3);
        c << 0.0, 0.0, 1.0;
        return c;
    }

    const Body2D* section_body() const override { return &body_; }

private:
    Body2D body_;
};

// ---------------------------------------------------------------------------
// Orthant in R^2, u = (1,1)

class Orthant2Cone final : public Cone {
public:
    Orthant2Cone() : Cone(2, Vec::Ones(2)) {}

    std::string name() const override { return "orthant2"; }

    double margin(const Vec& v) const override {
        check_dim(v, "orthant2 margin");
        return std::min(v[0], v[1]);
    }

    std::optional<double> gauge_closed(const Vec& x, const Vec& y) const override {
        return std::max(x[0] / y[0], x[1] / y[1]);
    }

    std::optional<double> norm_closed(const Vec& v) const override {
        return std::max(std::abs(v[0]), std::abs(v[1]));
    }

    int state_param_dim() const override { return 0; }

    std::vector<State> finite_extreme_states() const override {
        Vec e1(2), e2(2);
        e1 << 1.0, 0.0;
        e2 << 0.0, 1.0;
        return {State{e1}, State{e2}};
    }

    std::vector<State> states_at_boundary(const Vec& b, double tol) const override {
        double scale = tol * (1.0 + b.norm());
        bool z0 = std::abs(b[0]) <= scale;
        bool z1 = std::abs(b[1]) <= scale;
        if (z0 && z1) throw std::domain_error("orthant2 supporting state: apex has no supporting state");
        Vec c(2);
        if (z0)
            c << 1.0, 0.0;
        else
            c << 0.0, 1.0;
        return {State{c}};
    }

    Vec strictly_positive_covector() const override { return Vec::Constant(2, 0.5); }
};

}  // namespace

// ---------------------------------------------------------------------------
// Factories and shape accessors

ConePtr make_lorentz(int n) { return std::make_shared<LorentzCone>(n); }
ConePtr make_pnorm(int n, double p) { return std::make_shared<PNormCone>(n, p); }
ConePtr make_linear_image(const Mat& T, ConePtr base) {
    return std::make_shared<LinearImageCone>(T, std::move(base));
}
ConePtr make_cross_section(const Body2D& body) { return std::make_shared<CrossSectionCone>(body); }
ConePtr make_orthant2() { return std::make_shared<Orthant2Cone>(); }

std::optional<LinearImageView> as_linear_image(const Cone& K) {
    auto* li = dynamic_cast<const LinearImageCone*>(&K);
    if (!li) return std::nullopt;
    return LinearImageView{&li->matrix(), &li->matrix_inverse(), li->base()};
}

bool is_lorentz(const Cone& K) { return dynamic_cast<const LorentzCone*>(&K) != nullptr; }

double pnorm_exponent(const Cone& K) {
    auto* pc = dynamic_cast<const PNormCone*>(&K);
    return pc ? pc->p() : std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------

MembershipVerdict contains(const Cone& K, const Vec& v, double boundary_tol) {
    double m = K.margin(v);
    double band = boundary_tol * (1.0 + v.norm());
    if (m > band) return {Region::Interior, m};
    if (m < -band) return {Region::Outside, m};
    return {Region::Boundary, m};
}

void require_interior(const Cone& K, const Vec& v, const char* what, double tol) {
    if (contains(K, v, tol).region != Region::Interior)
        throw std::domain_error(std::string(what) + ": point is not in the interior of " + K.name());
}

void require_member(const Cone& K, const Vec& v, const char* what, double tol) {
    if (contains(K, v, tol).region == Region::Outside)
        throw std::domain_error(std::string(what) + ": point is not in " + K.name());
}

std::vector<Vec> direction_grid(int d, int count) {
    std::vector<Vec> out;
    if (d <= 0) return out;
    if (d == 1) {
        Vec a(1), b(1);
        a << 1.0;
        b << -1.0;
        out = {a, b};
        return out;
    }
    out.reserve(count);
    if (d == 2) {
        for (int k = 0; k < count; ++k) {
            double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(count);
            Vec w(2);
            w << std::cos(th), std::sin(th);
            out.push_back(w);
        }
        return out;
    }
    if (d == 3) {
        // Fibonacci sphere: latitudes uniform in z, longitudes by golden angle
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (int k = 0; k < count; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / static_cast<double>(count);
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double th = ga * static_cast<double>(k);
            Vec w(3);
            w << r * std::cos(th), r * std::sin(th), z;
            out.push_back(w);
        }
        return out;
    }
    // no uniform lattice in higher dimensions; a fixed-stream Gaussian set is
    // still deterministic for a given (d, count)
    Rng rng(Rng::derive(0x5EEDED5EEDED5EEDull, "direction-grid", static_cast<std::uint64_t>(d) * 1000003ull + count));
    for (int k = 0; k < count; ++k) out.push_back(rng.unit_vec(d));
    return out;
}

std::vector<State> extreme_state_grid(const Cone& K, int count) {
    if (K.state_param_dim() == 0) return K.finite_extreme_states();
    auto dirs = direction_grid(K.state_param_dim(), count);
    std::vector<State> out;
    out.reserve(dirs.size());
    for (const auto& w : dirs) out.push_back(K.state_from_direction(w));
    return out;
}

}  // namespace conelab
