#pragma once

// JSON wire formats.
//
// Conventions, shared by the CLI and the tests:
//   * signed spectra:   {"values": [4, 2.5, -1], "signs": [1, -1, 1]}
//   * lattice values:   numbers for integers, exact strings for proper
//                       half-integers ("3/2", "-5/2"); readers accept both
//                       forms (and integer strings like "3") everywhere
//   * discrete params:  spectrum fields plus "lattice": "Z" | "Z+1/2"
//   * windows:          {"lo": -5, "hi": 5}
//   * complex matrices: row-major arrays of [re, im] pairs
//   * reports/results:  object mirrors of the C++ structs; non-finite
//                       diagnostics serialize as null
//
// Every document emitted here parses back through the matching *_from_json
// reader — the test suite round-trips each type.

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "upq/enumeration.hpp"
#include "upq/matrix_lab.hpp"
#include "upq/preimage.hpp"

namespace upq {

using Json = nlohmann::json;

// ───────────────────────── scalars ────────────────────────────────────────

// Exact text for a lattice value: integers as JSON numbers, proper
// half-integers as "n/2" strings.
inline Json lattice_value_to_json(double v) {
    const double twice = 2.0 * v;
    if (std::nearbyint(twice) != twice || std::abs(twice) > 9.0e15)
        throw LatticeViolation("lattice_value_to_json: " + std::to_string(v) +
                               " is not a lattice value");
    const long long d = static_cast<long long>(twice);
    if (d % 2 == 0) return Json(d / 2);
    return Json(std::to_string(d) + "/2");
}

// Accepts numbers, integer strings ("3"), and halves ("-5/2").
inline double value_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_string()) throw Error("value_from_json: expected number or string");
    const std::string s = j.get<std::string>();
    std::size_t used = 0;
    long long num = 0;
    try {
        num = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw Error("value_from_json: cannot parse \"" + s + "\"");
    }
    if (used == s.size()) return static_cast<double>(num);
    if (s.substr(used) != "/2")
        throw Error("value_from_json: cannot parse \"" + s + "\" (expected n or n/2)");
    return static_cast<double>(num) / 2.0;
}

inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline double finite_from_json(const Json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

// ───────────────────────── spectra ────────────────────────────────────────

inline Json spectrum_to_json(const SignedSpectrum& s) {
    return Json{{"values", s.values()}, {"signs", s.signs()}};
}

// Variant with exact lattice value encoding for discrete spectra.
inline Json spectrum_to_json_exact(const SignedSpectrum& s) {
    Json values = Json::array();
    for (double v : s.values()) values.push_back(lattice_value_to_json(v));
    return Json{{"values", values}, {"signs", s.signs()}};
}

inline SignedSpectrum spectrum_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("values") || !j.contains("signs"))
        throw Error("spectrum_from_json: expected {\"values\": [...], \"signs\": [...]}");
    std::vector<double> values;
    for (const Json& v : j.at("values")) values.push_back(value_from_json(v));
    std::vector<int> signs = j.at("signs").get<std::vector<int>>();
    return SignedSpectrum(std::move(values), std::move(signs));
}

inline Json hc_to_json(const HarishChandraParameter& h) {
    Json j = spectrum_to_json_exact(h.spectrum);
    j["lattice"] = lattice_to_string(h.lattice);
    return j;
}

inline HarishChandraParameter hc_from_json(const Json& j) {
    auto h = HarishChandraParameter::from_spectrum(spectrum_from_json(j));
    if (j.contains("lattice") && lattice_from_string(j.at("lattice").get<std::string>()) != h.lattice)
        throw LatticeViolation("hc_from_json: declared lattice " +
                               j.at("lattice").get<std::string>() +
                               " does not match the rank parity (" +
                               lattice_to_string(h.lattice) + ")");
    return h;
}

// ───────────────────────── windows and matrices ───────────────────────────

inline Json window_to_json(ValueWindow w) { return Json{{"lo", w.lo}, {"hi", w.hi}}; }

inline ValueWindow window_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("lo") || !j.contains("hi"))
        throw Error("window_from_json: expected {\"lo\": ..., \"hi\": ...}");
    return ValueWindow(value_from_json(j.at("lo")), value_from_json(j.at("hi")));
}

inline Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw Error("matrix_from_json: expected non-empty array");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols)
            throw Error("matrix_from_json: ragged rows");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const Json& z = row.at(static_cast<std::size_t>(c));
            if (!z.is_array() || z.size() != 2)
                throw Error("matrix_from_json: entries must be [re, im] pairs");
            m(r, c) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return m;
}

// ───────────────────────── reports ────────────────────────────────────────

inline Json ellipticity_to_json(const EllipticityReport& r) {
    Json j{{"verdict", to_string(r.verdict)},
           {"spectrum", nullptr},
           {"diagnostics",
            {{"max_re", r.max_re},
             {"min_gap", finite_or_null(r.min_gap)},
             {"min_definiteness", finite_or_null(r.min_definiteness)}}}};
    if (r.spectrum) j["spectrum"] = spectrum_to_json(*r.spectrum);
    return j;
}

inline EllipticityReport ellipticity_from_json(const Json& j) {
    EllipticityReport r;
    const std::string v = j.at("verdict").get<std::string>();
    if (v == "ELLIPTIC_REGULAR") r.verdict = Ellipticity::elliptic_regular;
    else if (v == "NON_ELLIPTIC") r.verdict = Ellipticity::non_elliptic;
    else if (v == "NEAR_DEGENERATE") r.verdict = Ellipticity::near_degenerate;
    else throw Error("ellipticity_from_json: unknown verdict \"" + v + "\"");
    if (!j.at("spectrum").is_null()) r.spectrum = spectrum_from_json(j.at("spectrum"));
    const Json& d = j.at("diagnostics");
    r.max_re = d.at("max_re").get<double>();
    r.min_gap = finite_from_json(d.at("min_gap"));
    r.min_definiteness = finite_from_json(d.at("min_definiteness"));
    return r;
}

inline Json witness_to_json(const TrialWitness& w) {
    return Json{{"trial", w.trial},
                {"conjugated", matrix_to_json(w.conjugated)},
                {"projected", matrix_to_json(w.projected)},
                {"spectrum", spectrum_to_json(w.spectrum)}};
}

inline TrialWitness witness_from_json(const Json& j) {
    return TrialWitness{j.at("trial").get<std::uint64_t>(),
                        matrix_from_json(j.at("conjugated")),
                        matrix_from_json(j.at("projected")),
                        spectrum_from_json(j.at("spectrum"))};
}

inline Json projection_report_to_json(const ProjectionReport& r) {
    Json hist = Json::array();
    for (const auto& [spec, count] : r.histogram)
        hist.push_back(Json{{"spectrum", spectrum_to_json(spec)}, {"count", count}});
    Json fails = Json::array();
    for (const auto& w : r.failures) fails.push_back(witness_to_json(w));
    return Json{{"trials", r.trials},
                {"elliptic", r.elliptic},
                {"non_elliptic", r.non_elliptic},
                {"near_degenerate", r.near_degenerate},
                {"interlacing_pass", r.interlacing_pass},
                {"interlacing_fail", r.interlacing_fail},
                {"seed", r.seed},
                {"scale", r.scale},
                {"tol", r.tol},
                {"histogram", std::move(hist)},
                {"failures", std::move(fails)}};
}

inline ProjectionReport projection_report_from_json(const Json& j) {
    ProjectionReport r;
    r.trials = j.at("trials").get<std::uint64_t>();
    r.elliptic = j.at("elliptic").get<std::uint64_t>();
    r.non_elliptic = j.at("non_elliptic").get<std::uint64_t>();
    r.near_degenerate = j.at("near_degenerate").get<std::uint64_t>();
    r.interlacing_pass = j.at("interlacing_pass").get<std::uint64_t>();
    r.interlacing_fail = j.at("interlacing_fail").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.scale = j.at("scale").get<double>();
    r.tol = j.at("tol").get<double>();
    for (const Json& h : j.at("histogram"))
        r.histogram.emplace_back(spectrum_from_json(h.at("spectrum")),
                                 h.at("count").get<std::uint64_t>());
    for (const Json& w : j.at("failures")) r.failures.push_back(witness_from_json(w));
    return r;
}

inline Json search_result_to_json(const SearchResult& r) {
    return Json{{"status", to_string(r.status)},
                {"objective", finite_or_null(r.objective)},
                {"evaluations", r.evaluations},
                {"iterations", r.iterations},
                {"restarts_used", r.restarts_used},
                {"found_restart", r.found_restart},
                {"theta", r.theta}};
}

inline SearchResult search_result_from_json(const Json& j) {
    SearchResult r;
    const std::string s = j.at("status").get<std::string>();
    if (s == "FOUND") r.status = SearchStatus::found;
    else if (s == "NOT_FOUND") r.status = SearchStatus::not_found;
    else throw Error("search_result_from_json: unknown status \"" + s + "\"");
    r.objective = finite_from_json(j.at("objective"));
    r.evaluations = j.at("evaluations").get<std::uint64_t>();
    r.iterations = j.at("iterations").get<std::uint64_t>();
    r.restarts_used = j.at("restarts_used").get<int>();
    r.found_restart = j.at("found_restart").get<int>();
    r.theta = j.at("theta").get<std::vector<double>>();
    return r;
}

}  // namespace upq
