#include "fslgeom/io.hpp"

#include <string>

namespace fslgeom {

using nlohmann::json;

namespace {

Error bad(const std::string& msg) { return Error(ErrorKind::InvalidInput, msg); }

int as_int(const json& j, const char* what) {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == s.size() && used > 0) return v;
    }
    throw bad(std::string(what) + " must be an integer");
}

FaceRef face_ref(const json& j) {
    if (!j.is_array() || j.size() != 2) throw bad("face reference must be [block, face]");
    return {as_int(j[0], "block") - 1, as_int(j[1], "face") - 1};
}

json matrix_to_json(const Eigen::MatrixXi& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return rows;
}

Eigen::MatrixXi matrix_from_json(const json& j, int n, const char* what) {
    if (!j.is_array() || int(j.size()) != n) throw bad(std::string(what) + " must be an n x n integer matrix");
    Eigen::MatrixXi m(n, n);
    for (int r = 0; r < n; ++r) {
        if (!j[r].is_array() || int(j[r].size()) != n) throw bad(std::string(what) + " must be an n x n integer matrix");
        for (int c = 0; c < n; ++c) m(r, c) = as_int(j[r][c], what);
    }
    return m;
}

json vector_to_json(const Eigen::VectorXi& v) { return json(std::vector<int>(v.data(), v.data() + v.size())); }

Eigen::VectorXi vector_from_json(const json& j, int n, const char* what) {
    if (!j.is_array() || int(j.size()) != n) throw bad(std::string(what) + " must have n entries");
    Eigen::VectorXi v(n);
    for (int i = 0; i < n; ++i) v[i] = as_int(j[i], what);
    return v;
}

}  // namespace

json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw bad("complex numbers are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

FslComplex fsl_from_json(const json& doc) {
    if (!doc.is_object()) throw bad("document must be a JSON object");
    for (const char* key : {"blocks", "gluings", "holonomies"})
        if (!doc.contains(key)) throw bad(std::string("missing key \"") + key + "\"");
    const int c = as_int(doc["blocks"], "blocks");
    if (!doc["gluings"].is_array()) throw bad("gluings must be an array");
    std::vector<FaceGluing> gluings;
    for (const json& g : doc["gluings"]) {
        if (!g.is_object() || !g.contains("from") || !g.contains("to") || !g.contains("edge_map"))
            throw bad("each gluing needs from, to and edge_map");
        FaceGluing fg;
        fg.from = face_ref(g["from"]);
        fg.to = face_ref(g["to"]);
        const json& em = g["edge_map"];
        if (!em.is_object() || em.size() != 3) throw bad("edge_map must map three edges");
        int i = 0;
        for (auto it = em.begin(); it != em.end(); ++it, ++i)
            fg.edge_map[i] = {as_int(json(it.key()), "edge") - 1, as_int(it.value(), "edge") - 1};
        gluings.push_back(fg);
    }
    if (!doc["holonomies"].is_array()) throw bad("holonomies must be an array");
    std::vector<cplx> h;
    for (const json& v : doc["holonomies"]) h.push_back(cplx_from_json(v));
    return FslComplex(c, gluings, h);
}

json fsl_to_json(const FslComplex& x) {
    json g = json::array();
    for (const FaceGluing& fg : x.gluings()) {
        json em = json::object();
        for (const auto& [s, t] : fg.edge_map) em[std::to_string(s + 1)] = t + 1;
        g.push_back({{"from", {fg.from.block + 1, fg.from.face + 1}}, {"to", {fg.to.block + 1, fg.to.face + 1}}, {"edge_map", em}});
    }
    json h = json::array();
    for (cplx v : x.holonomies()) h.push_back(cplx_to_json(v));
    return {{"blocks", x.blocks()}, {"gluings", g}, {"holonomies", h}};
}

json nz_to_json(const NzDatum& d) {
    json shapes = json::array();
    for (cplx w : d.z) shapes.push_back(cplx_to_json(w));
    return {{"n", d.n},
            {"k", d.k},
            {"G", matrix_to_json(d.G)},
            {"Gp", matrix_to_json(d.Gp)},
            {"Gpp", matrix_to_json(d.Gpp)},
            {"shapes", shapes},
            {"winding", vector_to_json(d.winding)},
            {"flattening", {{"f2", vector_to_json(d.flat.f2)}, {"fp2", vector_to_json(d.flat.fp2)}, {"fpp2", vector_to_json(d.flat.fpp2)}}}};
}

NzDatum nz_from_json(const json& doc) {
    if (!doc.is_object()) throw bad("NZ datum must be a JSON object");
    for (const char* key : {"n", "k", "G", "Gp", "Gpp", "shapes", "flattening"})
        if (!doc.contains(key)) throw bad(std::string("missing key \"") + key + "\"");
    NzDatum d;
    d.n = as_int(doc["n"], "n");
    d.k = as_int(doc["k"], "k");
    if (d.n < 1 || d.k < 0 || d.k > d.n) throw bad("need n >= 1 and 0 <= k <= n");
    d.G = matrix_from_json(doc["G"], d.n, "G");
    d.Gp = matrix_from_json(doc["Gp"], d.n, "Gp");
    d.Gpp = matrix_from_json(doc["Gpp"], d.n, "Gpp");
    if (!doc["shapes"].is_array() || int(doc["shapes"].size()) != d.n) throw bad("shapes must have n entries");
    for (const json& s : doc["shapes"]) d.z.push_back(cplx_from_json(s));
    d.winding = doc.contains("winding") ? vector_from_json(doc["winding"], d.n, "winding") : Eigen::VectorXi::Zero(d.n);
    const json& f = doc["flattening"];
    if (!f.is_object()) throw bad("flattening must be an object");
    d.flat.f2 = vector_from_json(f.value("f2", json()), d.n, "f2");
    d.flat.fp2 = vector_from_json(f.value("fp2", json()), d.n, "fp2");
    d.flat.fpp2 = vector_from_json(f.value("fpp2", json()), d.n, "fpp2");
    return d;
}

}  // namespace fslgeom
