#pragma once

// JSON schemas.
//
//   complex   [re, im]
//   matrix    {"rows": r, "cols": c, "entries": [complex, ...]}        row-major
//   state     {"d": D, "amplitudes": [complex, ...]}                   D^2 entries, mu = i + D j
//   schmidt   {"probs": [p, ...]}  or  {"coeffs": [c, ...]}            coeffs are squared on load
//   pair      {"family": s, "d": D, "seed": n, "states": [state, state, ...], "planted_T": matrix}
//   protocol  {"d": D, "blank": state, "A": matrix, "B": matrix, "phases": [theta, ...],
//              "wiring": "A:(1,3) B:(2,4)"}
//   spectrum  {"eigenphases": [...], "clusters": [{"phase", "multiplicity"}], "rotation",
//              "detected_m": n | null, "equally_spaced", "equal_multiplicities", "copyable",
//              "trace": complex}

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "locc/config.hpp"
#include "locc/copy.hpp"
#include "locc/protocol.hpp"
#include "locc/states.hpp"

namespace locc {

using Json = nlohmann::json;

/// Input document does not follow the expected schema. The message carries the JSON path.
class FormatError : public Error {
public:
    using Error::Error;
};

namespace io {

inline const Json& member(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) {
        throw FormatError(path + ": expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw FormatError(path + ": missing field \"" + key + "\"");
    }
    return *it;
}

inline double number(const Json& j, const std::string& path) {
    if (!j.is_number()) {
        throw FormatError(path + ": expected a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        throw FormatError(path + ": non-finite number");
    }
    return x;
}

inline std::size_t count(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw FormatError(path + ": expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

inline Json complex_to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw FormatError(path + ": expected [re, im]");
    }
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

inline std::vector<Complex> complex_array(const Json& j, const std::string& path) {
    if (!j.is_array()) {
        throw FormatError(path + ": expected an array of [re, im] pairs");
    }
    std::vector<Complex> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

inline std::vector<double> real_array(const Json& j, const std::string& path) {
    if (!j.is_array()) {
        throw FormatError(path + ": expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

/// Re-throws library validation errors with the JSON location prepended.
template <typename F>
auto at_path(const std::string& path, F&& make) {
    try {
        return make();
    } catch (const FormatError&) {
        throw;
    } catch (const Error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

}  // namespace io

inline Json matrix_to_json(const ComplexMatrix& m) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            entries.push_back(io::complex_to_json(m(i, j)));
        }
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "$") {
    const auto rows = io::count(io::member(j, "rows", path), path + ".rows");
    const auto cols = io::count(io::member(j, "cols", path), path + ".cols");
    const auto entries = io::complex_array(io::member(j, "entries", path), path + ".entries");
    if (entries.size() != rows * cols) {
        throw FormatError(path + ".entries: expected " + std::to_string(rows * cols) + " entries, got " +
                          std::to_string(entries.size()));
    }
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = entries[i * cols + k];
        }
    }
    return m;
}

inline Json state_to_json(const BipartiteState& s) {
    Json amplitudes = Json::array();
    const auto flat = s.flat();
    for (Eigen::Index k = 0; k < flat.size(); ++k) {
        amplitudes.push_back(io::complex_to_json(flat(k)));
    }
    return {{"d", s.d()}, {"amplitudes", std::move(amplitudes)}};
}

inline BipartiteState state_from_json(const Json& j, const std::string& path = "$",
                                      const NumericConfig& config = default_config()) {
    const auto d = io::count(io::member(j, "d", path), path + ".d");
    const auto amplitudes = io::complex_array(io::member(j, "amplitudes", path), path + ".amplitudes");
    if (d < 1 || amplitudes.size() != d * d) {
        throw FormatError(path + ".amplitudes: expected d^2 = " + std::to_string(d * d) + " entries, got " +
                          std::to_string(amplitudes.size()));
    }
    const Eigen::Map<const ComplexVector> flat(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size()));
    return io::at_path(path, [&] { return BipartiteState::from_flat(flat, config); });
}

inline Json schmidt_to_json(const SchmidtVector& v) {
    return {{"probs", v.probs()}};
}

inline SchmidtVector schmidt_from_json(const Json& j, const std::string& path = "$",
                                       const NumericConfig& config = default_config()) {
    if (j.is_object() && j.contains("probs")) {
        const auto probs = io::real_array(j.at("probs"), path + ".probs");
        return io::at_path(path + ".probs", [&] { return SchmidtVector(probs, config); });
    }
    if (j.is_object() && j.contains("coeffs")) {
        const auto coeffs = io::real_array(j.at("coeffs"), path + ".coeffs");
        return io::at_path(path + ".coeffs", [&] { return SchmidtVector::from_coeffs(coeffs, config); });
    }
    throw FormatError(path + ": expected a \"probs\" or \"coeffs\" array");
}

/// Accepts a pair document ({"states": [...]}) or a single state.
inline std::vector<BipartiteState> states_from_json(const Json& j, const std::string& path = "$",
                                                    const NumericConfig& config = default_config()) {
    std::vector<BipartiteState> out;
    if (j.is_object() && j.contains("states")) {
        const auto& arr = j.at("states");
        if (!arr.is_array()) {
            throw FormatError(path + ".states: expected an array");
        }
        for (std::size_t i = 0; i < arr.size(); ++i) {
            out.push_back(state_from_json(arr[i], path + ".states[" + std::to_string(i) + "]", config));
        }
        return out;
    }
    out.push_back(state_from_json(j, path, config));
    return out;
}

inline Json protocol_to_json(const CopyProtocol& p) {
    return {{"d", p.d},
            {"blank", state_to_json(p.blank)},
            {"A", matrix_to_json(p.a_op.matrix())},
            {"B", matrix_to_json(p.b_op.matrix())},
            {"phases", p.phases},
            {"wiring", p.wiring}};
}

inline CopyProtocol protocol_from_json(const Json& j, const std::string& path = "$",
                                       const NumericConfig& config = default_config()) {
    const auto d = io::count(io::member(j, "d", path), path + ".d");
    auto blank = state_from_json(io::member(j, "blank", path), path + ".blank", config);
    if (blank.d() != d) {
        throw FormatError(path + ".blank: d=" + std::to_string(blank.d()) + " does not match protocol d=" +
                          std::to_string(d));
    }
    auto load_op = [&](const char* key) {
        const std::string where = path + "." + key;
        auto m = matrix_from_json(io::member(j, key, path), where);
        if (static_cast<std::size_t>(m.rows()) != d * d || m.rows() != m.cols()) {
            throw FormatError(where + ": expected a " + std::to_string(d * d) + "x" + std::to_string(d * d) +
                              " matrix");
        }
        return io::at_path(where, [&] { return UnitaryMatrix(std::move(m), config); });
    };
    auto a = load_op("A");
    auto b = load_op("B");
    std::vector<double> phases;
    if (j.contains("phases")) {
        phases = io::real_array(j.at("phases"), path + ".phases");
    }
    std::string wiring = kWiring;
    if (j.contains("wiring")) {
        if (!j.at("wiring").is_string()) {
            throw FormatError(path + ".wiring: expected a string");
        }
        wiring = j.at("wiring").get<std::string>();
        if (wiring != kWiring) {
            throw FormatError(path + ".wiring: unsupported wiring \"" + wiring + "\", expected \"" + kWiring + "\"");
        }
    }
    return CopyProtocol{d, std::move(blank), std::move(a), std::move(b), std::move(phases), std::move(wiring)};
}

inline Json spectrum_to_json(const SpectrumReport& r) {
    Json clusters = Json::array();
    for (const auto& c : r.clusters) {
        clusters.push_back({{"phase", c.phase}, {"multiplicity", c.multiplicity}});
    }
    Json out = {{"eigenphases", r.eigenphases},
                {"clusters", std::move(clusters)},
                {"rotation", r.rotation},
                {"equally_spaced", r.equally_spaced},
                {"equal_multiplicities", r.equal_multiplicities},
                {"copyable", r.copyable},
                {"trace", io::complex_to_json(r.trace)}};
    out["detected_m"] = r.detected_m ? Json(*r.detected_m) : Json(nullptr);
    return out;
}

/// Reads a whole file, or stdin when path is "-".
inline std::string read_text(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in) {
        throw FormatError(path + ": cannot open file");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline Json parse_document(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline Json load_document(const std::string& path) {
    return parse_document(read_text(path), path == "-" ? std::string("<stdin>") : path);
}

}  // namespace locc
