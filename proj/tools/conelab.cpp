// conelab: metrics, verification suites, and boundary experiments for
// structured cones, over JSON descriptors.
//
// Exit codes: 0 all good, 1 a check failed, 2 bad input, 3 a math
// precondition was violated.

#include "conelab/derivative.hpp"
#include "conelab/geodesic.hpp"
#include "conelab/json_io.hpp"
#include "conelab/reconstruct.hpp"
#include "conelab/rng.hpp"
#include "conelab/verify.hpp"

#include <CLI11.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace conelab;

// 15 significant digits; exact zero stays "0"
std::string format_scalar(double v) {
    if (!std::isfinite(v)) throw std::domain_error("result is not finite");
    if (v == 0.0) return "0";
    int decimals = 14 - static_cast<int>(std::floor(std::log10(std::abs(v))));
    char buf[64];
    if (decimals < 0 || decimals > 17)
        std::snprintf(buf, sizeof buf, "%.14e", v);
    else
        std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::uint64_t resolve_seed(std::uint64_t flag_seed) {
    const char* env = std::getenv("CONELAB_SEED");
    if (!env || !*env) return flag_seed;
    char* end = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (errno != 0 || end == env || *end != '\0')
        throw parse_error(std::string("CONELAB_SEED is not a valid integer: ") + env);
    return static_cast<std::uint64_t>(v);
}

Tolerances parse_tols(const std::vector<std::string>& specs) {
    Tolerances tol;
    for (const auto& s : specs) {
        auto eq = s.find('=');
        if (eq == std::string::npos) throw parse_error("--tol expects NAME=VALUE, got: " + s);
        std::string name = s.substr(0, eq);
        double value = 0.0;
        try {
            size_t used = 0;
            value = std::stod(s.substr(eq + 1), &used);
            if (used != s.size() - eq - 1) throw std::invalid_argument("trailing junk");
        } catch (const std::exception&) {
            throw parse_error("--tol value is not a number: " + s);
        }
        if (!(value > 0.0)) throw parse_error("--tol values must be positive: " + s);
        if (name == "boundary")
            tol.boundary = value;
        else if (name == "gauge_rel")
            tol.gauge_rel = value;
        else if (name == "symmetry")
            tol.symmetry = value;
        else if (name == "reconstruction")
            tol.reconstruction = value;
        else
            throw parse_error("unknown tolerance \"" + name + "\"");
    }
    return tol;
}

// descending geometric sequence s_max -> s_min
std::vector<double> geometric_s(double s_max, double s_min, int steps) {
    if (!(s_min > 0.0 && s_min < s_max)) throw parse_error("--s-min must lie in (0, s_max)");
    if (steps < 2) throw parse_error("--steps must be at least 2");
    std::vector<double> out(static_cast<size_t>(steps));
    for (int i = 0; i < steps; ++i)
        out[static_cast<size_t>(i)] =
            s_max * std::pow(s_min / s_max, double(i) / double(steps - 1));
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw parse_error("cannot open file for writing: " + out_path);
        f << text;
    }
}

Eigen::Vector2d load_vec2(const std::string& path) {
    Json j = read_json_file(path);
    if (!j.is_object() || !j.contains("coords") || !j["coords"].is_array() ||
        j["coords"].size() != 2 || !j["coords"][0].is_number() || !j["coords"][1].is_number())
        throw parse_error(path + ": expected {\"coords\":[x,y]} with two numbers");
    return {j["coords"][0].get<double>(), j["coords"][1].get<double>()};
}

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void append_check(VerificationReport& R, std::string name, int samples, double residual,
                  double tolerance) {
    CheckResult c;
    c.name = std::move(name);
    c.samples = samples;
    c.max_residual = residual;
    c.tolerance = tolerance;
    c.pass = residual <= tolerance;
    R.checks.push_back(std::move(c));
}

// the full lemma suite over one cone, optionally with an antimorphism
VerificationReport run_verify_suite(ConePtr K, const ConeMap* g, std::uint64_t seed, int samples,
                                    const Tolerances& tol, bool expect_negative,
                                    ReconstructionReport* rec_out) {
    VerificationReport R;
    R.suite = "conelab-verify";
    R.seed = seed;

    if (g) {
        VerificationReport A = verify_antimorphism(*g, seed, samples, tol.gauge_rel);
        for (auto& c : A.checks) R.checks.push_back(std::move(c));

        int basepoints = std::max(2, std::min(samples / 16, 12));
        double fix_res = 0.0, invol_res = 0.0, deriv_res = 0.0, refl_res = 0.0;
        const std::vector<double> ts = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
        for (int b = 0; b < basepoints; ++b) {
            Rng rng(Rng::derive(seed, "suite-basepoints", static_cast<std::uint64_t>(b)));
            Vec x = random_interior(*K, rng);
            try {
                ConeMap S = symmetry(*g, x);
                fix_res = std::max(fix_res,
                                   order_unit_norm(*K, S(x) - x) / (1.0 + order_unit_norm(*K, x)));
                for (int k = 0; k < 8; ++k) {
                    Vec y = random_interior(*K, rng);
                    invol_res = std::max(invol_res, order_unit_norm(*K, S(S(y)) - y) /
                                                        (1.0 + order_unit_norm(*K, y)));
                }
                LinearizedMap L = linearize(
                    ConeMap{"symmetry-as-map", K, S.eval, S.inverse_eval}, x);
                deriv_res = std::max(
                    deriv_res, (L.G - Mat::Identity(K->dim(), K->dim())).cwiseAbs().maxCoeff());
                Vec z = random_interior(*K, rng);
                if (thompson(*K, x, z) > 1e-6) {
                    TypeIGeodesic geo = typeI_through(*K, x, z);
                    refl_res = std::max(refl_res, reflect_residual(*g, geo, ts));
                }
            } catch (const std::domain_error&) {
                // the map does not admit the calculus here; record as failure, not a crash
                const double huge = 1e300;
                fix_res = invol_res = deriv_res = refl_res = huge;
                break;
            }
        }
        append_check(R, "symmetry-fixes-basepoint", basepoints, fix_res, tol.symmetry);
        append_check(R, "symmetry-involution", basepoints * 8, invol_res, tol.symmetry);
        append_check(R, "symmetry-derivative-is-minus-id", basepoints, deriv_res, 1e-5);
        append_check(R, "geodesic-reflection", basepoints, refl_res, tol.symmetry);
    }

    {
        int cases = std::max(4, std::min(samples / 8, 64));
        double geo_res = 0.0;
        for (int i = 0; i < cases; ++i) {
            Rng rng(Rng::derive(seed, "typeI-gauge", static_cast<std::uint64_t>(i)));
            Vec x = random_interior(*K, rng);
            Vec z = random_interior(*K, rng);
            if (thompson(*K, x, z) <= 1e-6) continue;
            TypeIGeodesic geo = typeI_through(*K, x, z);
            for (double t1 : {-1.5, 0.0, 0.8})
                for (double t2 : {-0.7, 0.4, 2.0}) {
                    double m = gauge(*K, typeI_point(geo, t1), typeI_point(geo, t2));
                    geo_res = std::max(geo_res, rel_diff(m, std::exp(std::abs(t1 - t2))));
                }
        }
        append_check(R, "typeI-gauge-symmetry", cases, geo_res, tol.gauge_rel);

        double bg_res = 0.0;
        for (int i = 0; i < cases; ++i) {
            Rng rng(Rng::derive(seed, "boundary-gauge", static_cast<std::uint64_t>(i)));
            Vec eta = random_boundary(*K, rng);
            Vec x = random_interior(*K, rng);
            for (double s : {0.5, 0.1, 0.01, 1e-4}) {
                try {
                    double m = boundary_gauge(*K, eta, x, s);
                    bg_res = std::max(bg_res, rel_diff(m, 1.0 / s));
                } catch (const std::domain_error&) {
                    bg_res = std::numeric_limits<double>::infinity();
                }
            }
        }
        append_check(R, "boundary-gauge-law", cases, bg_res, tol.gauge_rel);
    }

    if (K->dim() >= 3) {
        ReconstructionReport rec = reconstruct_jordan(*K, g, seed, samples, tol);
        if (rec_out) *rec_out = rec;
        Verdict want = expect_negative ? Verdict::NotSpinFactor : Verdict::SpinFactor;
        CheckResult c;
        c.name = expect_negative ? "reconstruction-verdict-negative" : "reconstruction-verdict";
        c.samples = samples;
        c.max_residual = rec.b_asymmetry;
        c.tolerance = expect_negative ? std::numeric_limits<double>::infinity() : tol.reconstruction;
        c.pass = rec.verdict == want;
        R.checks.push_back(std::move(c));

        if (g && std::isfinite(rec.su_halfline_residual))
            append_check(R, "su-halfline", std::min(samples, 16), rec.su_halfline_residual,
                         tol.symmetry);
    }

    return R;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cone geometry workbench: gauges, metrics, antimorphisms, reconstruction"};
    app.require_subcommand(1);

    std::string cone_path, x_path, y_path, out_path, quantity = "M", map_sel;
    std::uint64_t seed = 1;
    int samples = 500;
    std::vector<std::string> tol_specs;
    bool expect_negative = false;
    double gromov_s_min = 1e-6, horo_s_min = 1e-5;
    int gromov_steps = 13, horo_steps = 11, geo_steps = 13;
    int geo_type = 1;
    double t_min = -3.0, t_max = 3.0;

    auto add_common = [&](CLI::App* c, bool needs_x, bool needs_y) {
        c->add_option("--cone", cone_path, "cone descriptor JSON file")->required();
        if (needs_x) c->add_option("--x", x_path, "point JSON file")->required();
        if (needs_y) c->add_option("--y", y_path, "point JSON file")->required();
        c->add_option("--seed", seed, "master seed (CONELAB_SEED overrides)");
        c->add_option("--samples", samples, "sample count for randomized checks");
        c->add_option("--tol", tol_specs, "tolerance override NAME=VALUE");
        c->add_option("--out", out_path, "also write the report/artifact to this file");
    };

    CLI::App* cmd_metric = app.add_subcommand("metric", "print one metric quantity");
    add_common(cmd_metric, true, false);
    cmd_metric->add_option("--y", y_path, "point JSON file (required for M, dH, dT)");
    cmd_metric->add_option("--quantity", quantity, "M | dH | dT | norm")
        ->check(CLI::IsMember({"M", "dH", "dT", "norm"}));

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the lemma suite, report JSON");
    add_common(cmd_verify, false, false);
    cmd_verify->add_option("--map", map_sel, "antimorphism selector (builtin:...)");
    cmd_verify->add_flag("--expect-negative", expect_negative,
                         "reconstruction must conclude NotSpinFactor");

    CLI::App* cmd_reconstruct =
        app.add_subcommand("reconstruct", "spin-factor reconstruction report JSON");
    add_common(cmd_reconstruct, false, false);
    cmd_reconstruct->add_option("--map", map_sel, "antimorphism selector (builtin:...)");
    cmd_reconstruct->add_flag("--expect-negative", expect_negative,
                              "expect verdict NotSpinFactor");

    CLI::App* cmd_gromov =
        app.add_subcommand("gromov", "Gromov products toward two boundary targets, CSV");
    add_common(cmd_gromov, true, true);
    cmd_gromov->add_option("--s-min", gromov_s_min, "smallest boundary parameter");
    cmd_gromov->add_option("--steps", gromov_steps, "number of s values");

    CLI::App* cmd_horo = app.add_subcommand("horo", "horofunction limit estimates, CSV");
    add_common(cmd_horo, true, true);
    cmd_horo->add_option("--s-min", horo_s_min, "smallest boundary parameter");
    cmd_horo->add_option("--steps", horo_steps, "number of s values");

    CLI::App* cmd_geodesic =
        app.add_subcommand("geodesic", "sample a geodesic, JSON array of points");
    add_common(cmd_geodesic, true, false);
    cmd_geodesic->add_option("--y", y_path, "second point (type 1 only)");
    cmd_geodesic->add_option("--type", geo_type, "1 = boundary-generator line, 2 = scaling orbit")
        ->check(CLI::IsMember({1, 2}));
    cmd_geodesic->add_option("--t-min", t_min, "parameter range start");
    cmd_geodesic->add_option("--t-max", t_max, "parameter range end");
    cmd_geodesic->add_option("--steps", geo_steps, "grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        seed = resolve_seed(seed);
        Tolerances tol = parse_tols(tol_specs);
        ConePtr K = load_cone(cone_path);

        if (app.got_subcommand(cmd_metric)) {
            Vec x = load_point(x_path, *K);
            double v = 0.0;
            if (quantity == "norm") {
                v = order_unit_norm(*K, x);
            } else {
                if (y_path.empty())
                    throw parse_error("--y is required for quantity " + quantity);
                Vec y = load_point(y_path, *K);
                if (quantity == "M")
                    v = gauge(*K, x, y, tol.boundary);
                else if (quantity == "dH")
                    v = hilbert(*K, x, y, tol.boundary);
                else
                    v = thompson(*K, x, y, tol.boundary);
            }
            emit(format_scalar(v) + "\n", out_path);
            return 0;
        }

        if (app.got_subcommand(cmd_verify)) {
            std::optional<ConeMap> g;
            if (!map_sel.empty()) g = resolve_map(K, map_sel);
            VerificationReport R =
                run_verify_suite(K, g ? &*g : nullptr, seed, samples, tol, expect_negative, nullptr);
            emit(to_json(R).dump(2) + "\n", out_path);
            return R.pass() ? 0 : 1;
        }

        if (app.got_subcommand(cmd_reconstruct)) {
            std::optional<ConeMap> g;
            if (!map_sel.empty()) g = resolve_map(K, map_sel);
            ReconstructionReport rec = reconstruct_jordan(*K, g ? &*g : nullptr, seed, samples, tol);
            emit(to_json(rec).dump(2) + "\n", out_path);
            Verdict want = expect_negative ? Verdict::NotSpinFactor : Verdict::SpinFactor;
            return rec.verdict == want ? 0 : 1;
        }

        if (app.got_subcommand(cmd_gromov)) {
            Eigen::Vector2d eta1 = load_vec2(x_path), eta2 = load_vec2(y_path);
            auto rows = gromov_experiment(*K, eta1, eta2, geometric_s(1.0, gromov_s_min, gromov_steps));
            std::ostringstream csv;
            csv << "s,value,branch\n";
            for (const auto& r : rows)
                csv << csv_double(r.s) << ',' << csv_double(r.value) << ',' << r.branch << '\n';
            emit(csv.str(), out_path);
            return 0;
        }

        if (app.got_subcommand(cmd_horo)) {
            Vec eta = load_point(x_path, *K);
            Vec z = load_point(y_path, *K);
            HoroResult H = horo_limit(*K, eta, z, geometric_s(0.5, horo_s_min, horo_steps));
            std::ostringstream csv;
            csv << "s,estimate\n";
            for (const auto& r : H.rows)
                csv << csv_double(r.s) << ',' << csv_double(r.estimate) << '\n';
            emit(csv.str(), out_path);
            return 0;
        }

        if (app.got_subcommand(cmd_geodesic)) {
            Vec x = load_point(x_path, *K);
            if (geo_steps < 2) throw parse_error("--steps must be at least 2");
            std::vector<double> ts(static_cast<size_t>(geo_steps));
            for (int i = 0; i < geo_steps; ++i)
                ts[static_cast<size_t>(i)] =
                    t_min + (t_max - t_min) * double(i) / double(geo_steps - 1);
            std::vector<Vec> pts;
            if (geo_type == 1) {
                if (y_path.empty()) throw parse_error("--y is required for type 1 geodesics");
                Vec y = load_point(y_path, *K);
                TypeIGeodesic geo = typeI_through(*K, x, y);
                pts = sample_typeI(geo, ts);
            } else {
                pts.reserve(ts.size());
                for (double t : ts) pts.push_back(typeII_point(x, t));
            }
            Json arr = Json::array();
            for (const auto& p : pts) {
                Json pj;
                Json coords = Json::array();
                for (Eigen::Index i = 0; i < p.size(); ++i) coords.push_back(p[i]);
                pj["coords"] = coords;
                arr.push_back(pj);
            }
            emit(arr.dump(2) + "\n", out_path);
            return 0;
        }

        throw parse_error("no subcommand dispatched");
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
