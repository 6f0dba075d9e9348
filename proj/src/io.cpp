// io.cpp: problem/schedule parsing and number formatting

#include "ergokit/io.hpp"

#include "ergokit/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

namespace ergokit::io {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const std::string& what) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) throw ParseError(where + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
    return *it;
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ParseError(where + ": expected a number");
    return v.get<double>();
}

std::vector<double> number_array(const json& v, const std::string& where) {
    if (!v.is_array()) throw ParseError(where + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

// {"re": [[...]], "im": [[...]]} → d×d complex matrix
ComplexMatrix complex_matrix(const json& v, const std::string& where) {
    const json& re = require(v, "re", where);
    const json& im = require(v, "im", where);
    if (!re.is_array() || re.empty()) throw ParseError(where + ".re: expected a non-empty array of rows");
    if (!im.is_array()) throw ParseError(where + ".im: expected an array of rows");
    const std::size_t d = re.size();
    if (im.size() != d) {
        throw ParseError(where + ".im: has " + std::to_string(im.size()) + " rows, expected " + std::to_string(d));
    }
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        const auto re_row = number_array(re[r], where + ".re[" + std::to_string(r) + "]");
        const auto im_row = number_array(im[r], where + ".im[" + std::to_string(r) + "]");
        if (re_row.size() != d || im_row.size() != d) {
            throw ParseError(where + " row " + std::to_string(r) + ": expected " + std::to_string(d) + " columns");
        }
        for (std::size_t c = 0; c < d; ++c) m(r, c) = cplx(re_row[c], im_row[c]);
    }
    return m;
}

} // namespace

Problem parse_problem(std::string_view json_text) {
    const json doc = parse_json(json_text, "problem");
    if (!doc.is_object()) throw ParseError("problem: top level must be an object");

    std::vector<double> energies = number_array(require(doc, "energies", "problem"), "energies");
    std::optional<BatterySpec> battery;
    try {
        battery.emplace(std::move(energies));
    } catch (const ValidationError& e) {
        throw ParseError(std::string("energies: ") + e.what());
    }

    const json& state = require(doc, "state", "problem");
    if (!state.is_object()) throw ParseError("state: expected an object");
    const bool has_pops = state.contains("populations");
    const bool has_matrix = state.contains("matrix");
    if (has_pops == has_matrix) {
        throw ParseError("state: exactly one of 'populations' or 'matrix' is required");
    }

    std::optional<QuantumState> rho;
    const std::string where = has_pops ? "state.populations" : "state.matrix";
    try {
        if (has_pops) {
            auto pops = number_array(state["populations"], where);
            if (pops.size() != battery->dim()) {
                throw ParseError(where + ": has " + std::to_string(pops.size()) + " entries but energies has " +
                                 std::to_string(battery->dim()));
            }
            rho.emplace(QuantumState::diagonal(std::move(pops)));
        } else {
            ComplexMatrix m = complex_matrix(state["matrix"], where);
            if (m.dim() != battery->dim()) {
                throw ParseError(where + ": is " + std::to_string(m.dim()) + "x" + std::to_string(m.dim()) +
                                 " but energies has " + std::to_string(battery->dim()) + " levels");
            }
            rho.emplace(QuantumState::full(std::move(m)));
        }
    } catch (const ValidationError& e) {
        throw ParseError(where + ": " + e.what());
    }

    std::vector<std::string> labels;
    if (const auto it = doc.find("labels"); it != doc.end()) {
        if (!it->is_array()) throw ParseError("labels: expected an array of strings");
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string()) throw ParseError("labels[" + std::to_string(i) + "]: expected a string");
            labels.push_back((*it)[i].get<std::string>());
        }
    }
    return Problem{std::move(*battery), std::move(*rho), std::move(labels)};
}

Problem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

std::vector<ControlSegment> parse_schedule(std::string_view json_text) {
    const json doc = parse_json(json_text, "schedule");
    if (!doc.is_array()) throw ParseError("schedule: top level must be an array of segments");
    std::vector<ControlSegment> segments;
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const std::string where = "schedule[" + std::to_string(k) + "]";
        const double duration = number(require(doc[k], "duration", where), where + ".duration");
        segments.push_back(ControlSegment{duration, complex_matrix(require(doc[k], "control", where), where + ".control")});
    }
    return segments;
}

std::vector<ControlSegment> load_schedule(const std::string& path) { return parse_schedule(read_file(path)); }

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

} // namespace ergokit::io
