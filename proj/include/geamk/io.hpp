// io.hpp: JSON documents for GEAMs, witnesses and certification reports; CSV detection tables
//
// Complex matrices are stored as flat row-major arrays of [re, im] pairs. Doubles are written
// with round-trip precision, so export -> import -> export is byte-identical.

#pragma once

#include "geamk/fingerprint.hpp"
#include "geamk/geam.hpp"
#include "geamk/map_builder.hpp"
#include "geamk/positivity.hpp"
#include "geamk/witness_lab.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace geamk::io {

using json = nlohmann::ordered_json;

inline json matrix_to_json(const Matrix& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) arr.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return arr;
}

inline Matrix matrix_from_json(const json& arr, int rows, int cols) {
    if (!arr.is_array() || static_cast<int>(arr.size()) != rows * cols)
        throw Error(ErrorKind::io, "matrix must be an array of " + std::to_string(rows * cols) + " [re, im] pairs");
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const auto& e = arr[static_cast<std::size_t>(i * cols + j)];
            if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::io, "matrix entries must be [re, im]");
            m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

inline json geam_to_json(const Geam& g, bool with_operators = true) {
    json j;
    j["d"] = g.params.d;
    j["m"] = g.params.m;
    j["gamma"] = g.params.gamma;
    j["b"] = g.params.b;
    j["tau_sign"] = g.params.tau_sign;
    json basis;
    basis["kind"] = g.basis.kind;
    if (g.basis.unitary_seed) basis["unitary_seed"] = *g.basis.unitary_seed;
    j["basis"] = basis;
    if (with_operators) {
        json ops = json::array();
        for (const auto& grp : g.ops) {
            json jg = json::array();
            for (const auto& p : grp) jg.push_back(matrix_to_json(p));
            ops.push_back(jg);
        }
        j["operators"] = ops;
    }
    return j;
}

inline std::string geam_fingerprint(const Geam& g) { return fingerprint(geam_to_json(g).dump()); }

/// Reads a GEAM document. Stored operators are taken verbatim; otherwise the GEAM is rebuilt
/// from the basis description.
inline Geam geam_from_json(const json& j) {
    try {
        GeamParams p;
        p.d = j.at("d").get<int>();
        p.m = j.at("m").get<std::vector<int>>();
        p.gamma = j.at("gamma").get<std::vector<double>>();
        p.b = j.at("b").get<std::vector<double>>();
        if (j.contains("tau_sign")) p.tau_sign = j.at("tau_sign").get<std::vector<int>>();
        BasisSpec basis;
        if (j.contains("basis")) {
            const auto& jb = j.at("basis");
            basis.kind = jb.value("kind", std::string("gell_mann"));
            if (jb.contains("unitary_seed") && !jb.at("unitary_seed").is_null())
                basis.unitary_seed = jb.at("unitary_seed").get<std::uint64_t>();
        }
        if (basis.kind != "gell_mann") throw Error(ErrorKind::io, "unsupported basis kind '" + basis.kind + "'");
        if (!j.contains("operators")) return build_geam(p, basis.unitary_seed);

        Geam g;
        g.derived = derive_params(p);
        if (p.tau_sign.empty()) throw Error(ErrorKind::io, "operators present but tau_sign missing");
        g.params = p;
        g.basis = basis;
        for (int a = 0; a < p.n_groups(); ++a) g.derived.tau[a] *= p.tau_sign[a];
        const auto& ops = j.at("operators");
        if (!ops.is_array() || static_cast<int>(ops.size()) != p.n_groups())
            throw Error(ErrorKind::io, "operators must hold one array per group");
        for (int a = 0; a < p.n_groups(); ++a) {
            const auto& jg = ops[static_cast<std::size_t>(a)];
            if (static_cast<int>(jg.size()) != p.m[a]) throw Error(ErrorKind::io, "group size does not match m");
            std::vector<Matrix> grp;
            for (const auto& jm : jg) grp.push_back(matrix_from_json(jm, p.d, p.d));
            g.ops.push_back(std::move(grp));
        }
        return g;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, std::string("malformed GEAM document: ") + e.what());
    }
}

inline json validation_to_json(const ValidationReport& rep) {
    json arr = json::array();
    for (const auto& c : rep.conditions)
        arr.push_back({{"name", c.name}, {"max_deviation", c.max_deviation}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    return {{"pass", rep.ok()}, {"conditions", arr}};
}

inline json witness_to_json(const Witness& w) {
    json meta;
    meta["k"] = w.meta.k;
    meta["L"] = w.meta.l;
    meta["K"] = w.meta.kk;
    meta["A_k"] = w.meta.a_k;
    meta["rotation_seed"] = w.meta.rotation_seed ? json(*w.meta.rotation_seed) : json(nullptr);
    meta["rotation_fingerprint"] = w.meta.rotation_fingerprint;
    meta["geam_fingerprint"] = w.meta.geam_fingerprint;
    json j;
    j["d"] = w.meta.d;
    j["meta"] = meta;
    j["matrix"] = matrix_to_json(w.w);
    return j;
}

inline Witness witness_from_json(const json& j) {
    try {
        Witness w;
        w.meta.d = j.at("d").get<int>();
        const auto& meta = j.at("meta");
        w.meta.k = meta.at("k").get<int>();
        w.meta.l = meta.at("L").get<int>();
        w.meta.kk = meta.at("K").get<int>();
        w.meta.a_k = meta.at("A_k").get<double>();
        if (!meta.at("rotation_seed").is_null()) w.meta.rotation_seed = meta.at("rotation_seed").get<std::uint64_t>();
        w.meta.rotation_fingerprint = meta.at("rotation_fingerprint").get<std::string>();
        w.meta.geam_fingerprint = meta.at("geam_fingerprint").get<std::string>();
        w.w = matrix_from_json(j.at("matrix"), w.meta.d * w.meta.d, w.meta.d * w.meta.d);
        return w;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, std::string("malformed witness document: ") + e.what());
    }
}

inline std::string witness_fingerprint(const Witness& w) { return fingerprint(witness_to_json(w).dump()); }

inline json report_to_json(const CertificationReport& r) {
    json j;
    j["verdict"] = to_string(r.verdict);
    j["min_value"] = r.min_value;
    j["argmin"] = matrix_to_json(r.argmin.c);
    j["k"] = r.k;
    j["samples"] = r.samples;
    j["restarts"] = r.restarts;
    j["iters"] = r.iters;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    return j;
}

inline json purity_ratio_to_json(const PurityRatioReport& m) {
    json j;
    j["max_ratio"] = m.max_ratio;
    j["threshold"] = m.threshold;
    j["rank_aware_threshold"] = m.rank_aware_threshold;
    j["within_threshold"] = m.within_threshold();
    j["within_rank_aware_threshold"] = m.within_rank_aware_threshold();
    j["samples"] = m.samples;
    j["skipped"] = m.skipped;
    return j;
}

// Shortest decimal that reads back to the same double.
inline std::string format_double(double x) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << x;
    double back = 0.0;
    for (int prec = 1; prec <= std::numeric_limits<double>::max_digits10; ++prec) {
        std::ostringstream t;
        t << std::setprecision(prec) << x;
        std::istringstream(t.str()) >> back;
        if (back == x) return t.str();
    }
    return os.str();
}

inline const char* csv_header() { return "family,parameter,k,L,K,expectation,detected"; }

inline std::string csv_row(const DetectionRow& r) {
    std::ostringstream os;
    os << r.family << ',' << format_double(r.parameter) << ',' << r.meta.k << ',' << r.meta.l << ',' << r.meta.kk
       << ',' << format_double(r.expectation) << ',' << (r.detected ? "true" : "false");
    return os.str();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::io, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(ErrorKind::io, "failed writing '" + path + "'");
}

inline json read_json_file(const std::string& path) {
    const auto text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::io, "'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace geamk::io
