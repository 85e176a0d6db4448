#pragma once

// Report rows and serialization: JSON reports carry complex values as
// [re, im] pairs; trajectory CSV uses paired re/im columns, '.' decimals
// and ',' separators, printed at round-trip precision.

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "painlax/path.hpp"
#include "painlax/systems.hpp"

namespace painlax {

using nlohmann::json;

struct ReportRow {
    std::string label;
    cplx value{};
    double tolerance = 0.0;
    bool pass = false;

    static ReportRow residual(const std::string& label, cplx value, double tol) {
        return {label, value, tol, std::abs(value) <= tol};
    }
};

struct Report {
    std::string scenario;
    json parameters = json::object();
    std::vector<ReportRow> rows;

    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }

    json to_json() const {
        json out;
        out["spec_version"] = 1;
        out["scenario"] = scenario;
        out["parameters"] = parameters;
        out["rows"] = json::array();
        for (const auto& r : rows) {
            out["rows"].push_back({{"label", r.label},
                                   {"value", {r.value.real(), r.value.imag()}},
                                   {"tolerance", r.tolerance},
                                   {"pass", r.pass}});
        }
        out["summary"] = {{"total", rows.size()},
                          {"passed", std::count_if(rows.begin(), rows.end(),
                                                   [](const ReportRow& r) { return r.pass; })},
                          {"all_pass", all_pass()}};
        return out;
    }
};

inline json cplx_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(ErrorCode::ConfigError, "complex values must be two-element [re, im] arrays");
    return {j[0].get<double>(), j[1].get<double>()};
}

// trajectory CSV: header, then re(t), im(t) followed by interleaved re/im
// state columns
inline std::string trajectory_to_csv(const Trajectory& traj,
                                     const std::vector<std::string>& state_names) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "re_t,im_t";
    for (const auto& n : state_names) os << ",re_" << n << ",im_" << n;
    os << "\n";
    for (const auto& s : traj.samples) {
        os << s.t.real() << "," << s.t.imag();
        for (int i = 0; i < s.state.size(); ++i)
            os << "," << s.state(i).real() << "," << s.state(i).imag();
        os << "\n";
    }
    return os.str();
}

inline Trajectory trajectory_from_csv(const std::string& csv) {
    Trajectory traj;
    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line)) fail(ErrorCode::ConfigError, "trajectory CSV: empty input");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> vals;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() < 2 || vals.size() % 2 != 0)
            fail(ErrorCode::ConfigError, "trajectory CSV: malformed row");
        Trajectory::Sample s;
        s.t = {vals[0], vals[1]};
        s.state.resize((vals.size() - 2) / 2);
        for (size_t k = 2; k + 1 < vals.size(); k += 2)
            s.state((k - 2) / 2) = {vals[k], vals[k + 1]};
        traj.samples.push_back(std::move(s));
    }
    if (traj.samples.empty()) fail(ErrorCode::ConfigError, "trajectory CSV: no samples");
    return traj;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::ConfigError, "cannot open output file: " + path);
    f << content;
}

}  // namespace painlax
