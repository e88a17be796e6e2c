#pragma once

// JSON report building. Complex numbers travel as [re, im] pairs, matrices
// as row-major arrays of such pairs. Serialization through nlohmann::json
// is round-trip exact for doubles.

#include <string>
#include <vector>

#include <json.hpp>

#include "garding/classify.hpp"
#include "garding/cxcalc.hpp"
#include "garding/cxlinalg.hpp"
#include "garding/harness.hpp"

namespace garding::report {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

inline json to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const CPoint& p) {
    json a = json::array();
    for (const auto& c : p) a.push_back(to_json(c));
    return a;
}

inline json to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw domain_error("expected a complex number as an [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline CPoint cpoint_from_json(const json& j) {
    if (!j.is_array()) throw domain_error("expected an array of [re, im] pairs");
    CPoint p;
    for (const auto& e : j) p.push_back(complex_from_json(e));
    return p;
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw domain_error("expected a matrix as an array of rows of [re, im] pairs");
    const int rows = int(j.size());
    const int cols = int(j[0].size());
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (int(j[std::size_t(r)].size()) != cols)
            throw domain_error("matrix rows have inconsistent lengths");
        for (int c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(j[std::size_t(r)][std::size_t(c)]);
    }
    return m;
}

inline json to_json(const ConeMembership& cm) {
    return json{{"verdict", to_string(cm.verdict)}, {"sigmas", cm.sigmas}, {"margin", cm.margin}};
}

inline json to_json(const WitnessFunction& w) {
    return json{{"H", to_json(w.H.mat())},
                {"center", to_json(w.center)},
                {"h_spectrum", w.h_spectrum},
                {"composed_spectrum", w.composed_spectrum},
                {"construction", w.construction},
                {"certificate",
                 json{{"z", to_json(w.certificate.z)},
                      {"level", w.certificate.level},
                      {"sigma_value", w.certificate.sigma_value}}}};
}

inline json to_json(const MorphismVerdict& v) {
    json j{{"kind", to_string(v.kind)},
           {"scale", v.scale},
           {"singular_values", v.singular_values.as_given()},
           {"rank", v.rank},
           {"theorem_branch", std::string(1, v.theorem_branch)}};
    if (v.witness) j["witness"] = to_json(*v.witness);
    return j;
}

inline json to_json(const CRReport& cr) {
    return json{{"kind", to_string(cr.kind)},
                {"max_dzbar", cr.max_dzbar},
                {"max_dz", cr.max_dz},
                {"max_mixed_product", cr.max_mixed_product},
                {"tol", cr.tol}};
}

inline json to_json(const ProbeReport& p) {
    return json{{"harmonic_trace", p.r_harmonic},
                {"grad_sym", p.r_grad_sym},
                {"mixed_hessian", p.r_mixed_hessian},
                {"pairs", p.r_pairs},
                {"tol", p.tol},
                {"pass_harmonic", p.pass_harmonic},
                {"pass_grad_sym", p.pass_grad_sym},
                {"pass_mixed_hessian", p.pass_mixed_hessian},
                {"pass_pairs", p.pass_pairs},
                {"cr", to_json(p.cr)}};
}

inline json to_json(const SuiteReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items)
        items.push_back(json{{"name", it.name},
                             {"pass", it.pass},
                             {"margin", it.margin},
                             {"fd_limited", it.fd_limited},
                             {"detail", it.detail},
                             {"ms", it.ms}});
    return json{{"seed", rep.seed}, {"items", std::move(items)}, {"all_pass", rep.all_pass}};
}

/// Top-level report envelope. `argv` echoes the invocation so a report can
/// be replayed; rerunning it reproduces the same report modulo timing.
inline json make_report(const std::string& command, const std::vector<std::string>& argv,
                        json result, double timing_ms) {
    return json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"args", json{{"argv", argv}}},
                {"result", std::move(result)},
                {"timing_ms", timing_ms}};
}

} // namespace garding::report
