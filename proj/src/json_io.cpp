#include "conelab/json_io.hpp"

#include "conelab/spin.hpp"

#include <cmath>
#include <fstream>

namespace conelab {

namespace {

double need_number(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        throw parse_error(std::string("expected numeric field \"") + key + "\"");
    return j[key].get<double>();
}

int need_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw parse_error(std::string("expected integer field \"") + key + "\"");
    return j[key].get<int>();
}

Vec vec_from(const Json& arr, const char* what) {
    if (!arr.is_array()) throw parse_error(std::string(what) + " must be an array of numbers");
    Vec v(static_cast<Eigen::Index>(arr.size()));
    Eigen::Index i = 0;
    for (const auto& e : arr) {
        if (!e.is_number()) throw parse_error(std::string(what) + " must be an array of numbers");
        v[i++] = e.get<double>();
    }
    return v;
}

Json vec_to(const Vec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json mat_to(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vec_to(m.row(i)));
    return rows;
}

void set_if_finite(Json& j, const char* key, double v) {
    if (std::isfinite(v)) j[key] = v;
}

}  // namespace

ConePtr cone_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw parse_error("cone descriptor must be an object with a \"type\" string");
    std::string type = j["type"].get<std::string>();
    try {
        if (type == "lorentz") return make_lorentz(need_int(j, "dim"));
        if (type == "pnorm") return make_pnorm(need_int(j, "dim"), need_number(j, "p"));
        if (type == "orthant2") return make_orthant2();
        if (type == "linear_image") {
            if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].empty())
                throw parse_error("linear_image needs a nonempty \"matrix\" of rows");
            const Json& rows = j["matrix"];
            Mat T(static_cast<Eigen::Index>(rows.size()),
                  static_cast<Eigen::Index>(rows.front().size()));
            Eigen::Index r = 0;
            for (const auto& row : rows) {
                Vec v = vec_from(row, "matrix row");
                if (v.size() != T.cols()) throw parse_error("matrix rows have unequal length");
                T.row(r++) = v;
            }
            if (!j.contains("base")) throw parse_error("linear_image needs a \"base\" cone");
            return make_linear_image(T, cone_from_json(j["base"]));
        }
        if (type == "cross_section") {
            if (!j.contains("body") || !j["body"].is_object() || !j["body"].contains("type"))
                throw parse_error("cross_section needs a \"body\" object with a \"type\"");
            const Json& b = j["body"];
            std::string bt = b["type"].get<std::string>();
            if (bt == "disk") return make_cross_section(Body2D::disk(need_number(b, "radius")));
            if (bt == "lens")
                return make_cross_section(Body2D::lens(need_number(b, "center_offset")));
            throw parse_error("unknown body type \"" + bt + "\"");
        }
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("bad cone parameters: ") + e.what());
    }
    throw parse_error("unknown cone type \"" + type + "\"");
}

Vec point_from_json(const Json& j, const Cone& K) {
    if (!j.is_object()) throw parse_error("point must be a JSON object");
    if (j.contains("coords")) {
        Vec v = vec_from(j["coords"], "\"coords\"");
        if (v.size() != K.dim())
            throw parse_error("point has " + std::to_string(v.size()) + " coordinates, cone needs " +
                              std::to_string(K.dim()));
        return v;
    }
    if (j.contains("h") && j.contains("lam")) {
        if (!is_lorentz(K))
            throw parse_error("{\"h\",\"lam\"} points are only accepted for lorentz cones");
        Vec h = vec_from(j["h"], "\"h\"");
        if (h.size() + 1 != K.dim())
            throw parse_error("spin element has wrong dimension for this cone");
        return from_spin({h, need_number(j, "lam")});
    }
    throw parse_error("point needs either \"coords\" or {\"h\",\"lam\"}");
}

Json to_json(const VerificationReport& r) {
    Json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["checks"] = Json::array();
    for (const auto& c : r.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["samples"] = c.samples;
        cj["max_residual"] = c.max_residual;
        cj["tolerance"] = c.tolerance;
        cj["pass"] = c.pass;
        j["checks"].push_back(cj);
    }
    j["pass"] = r.pass();
    return j;
}

Json to_json(const ReconstructionReport& r) {
    Json j;
    j["verdict"] = to_string(r.verdict);
    j["note"] = r.note;
    set_if_finite(j, "b_asymmetry", r.b_asymmetry);
    if (r.witness.p.size() > 0) {
        Json w;
        w["p"] = vec_to(r.witness.p);
        w["q"] = vec_to(r.witness.q);
        w["B_pq"] = r.witness.b_pq;
        w["B_qp"] = r.witness.b_qp;
        j["witness"] = w;
    }
    if (r.gram_H.size() > 0) j["gram_H"] = mat_to(r.gram_H);
    set_if_finite(j, "gram_condition", r.gram_condition);
    set_if_finite(j, "gram_min_eig", r.gram_min_eig);
    set_if_finite(j, "unit_b_value", r.unit_b_value);
    set_if_finite(j, "norm_identity_residual", r.norm_identity_residual);
    set_if_finite(j, "squares_residual", r.squares_residual);
    set_if_finite(j, "squares_cone_violation", r.squares_cone_violation);
    set_if_finite(j, "sqrt_residual", r.sqrt_residual);
    set_if_finite(j, "jordan_identity_residual", r.jordan_identity_residual);
    set_if_finite(j, "su_halfline_residual", r.su_halfline_residual);
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    return j;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error("invalid JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open file for writing: " + path);
    out << j.dump(2) << '\n';
}

ConePtr load_cone(const std::string& path) { return cone_from_json(read_json_file(path)); }

Vec load_point(const std::string& path, const Cone& K) {
    return point_from_json(read_json_file(path), K);
}

}  // namespace conelab
