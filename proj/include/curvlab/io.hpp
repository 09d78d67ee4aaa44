#pragma once

/**
 * @file io.hpp
 * @brief File formats: tensor JSON {"n", "components"}, frame JSON
 *        {"n", "vectors"}, condition reports, and the flow trace CSV.
 *
 * All reals are written with 17 significant digits ("%.17g"), which round
 * trips every double exactly.
 */

#include "conditions.hpp"
#include "curvature.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "frames.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace curvlab::io {

using json = nlohmann::json;

inline std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_string(std::ostream& os, const std::string& s) { os << json(s).dump(); }

inline void write(std::ostream& os, const json& j, int indent, int depth) {
    const auto pad = [&](int d) {
        if (indent > 0) os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ',';
                first = false;
                pad(depth + 1);
                write_string(os, it.key());
                os << (indent > 0 ? ": " : ":");
                write(os, it.value(), indent, depth + 1);
            }
            pad(depth);
            os << '}';
            return;
        }
        case json::value_t::array: {
            // Arrays of scalars stay on one line.
            bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << (flat && indent > 0 ? ", " : ",");
                if (!flat) pad(depth + 1);
                write(os, j[i], indent, depth + 1);
            }
            if (!flat && !j.empty()) pad(depth);
            os << ']';
            return;
        }
        case json::value_t::number_float: os << format_real(j.get<double>()); return;
        default: os << j.dump(); return;
    }
}

} // namespace detail

/// Serializes like json::dump but with 17-significant-digit reals.
inline std::string dump(const json& j, int indent = 2) {
    std::ostringstream os;
    detail::write(os, j, indent, 0);
    return os.str();
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(Errc::io, path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::io, "cannot write " + path);
    out << text;
    if (!out) throw Error(Errc::io, "write failed for " + path);
}

// ---------------------------------------------------------------------------
// Tensors and frames

inline json to_json(const CurvatureTensor& r) {
    json comps = json::array();
    for (double v : r.components()) comps.push_back(v);
    return {{"n", r.dim()}, {"components", std::move(comps)}};
}

inline CurvatureTensor tensor_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const auto& arr = j.at("components");
        if (!arr.is_array()) throw Error(Errc::io, "components must be an array");
        std::vector<double> comps;
        comps.reserve(arr.size());
        for (const auto& v : arr) {
            if (!v.is_number()) throw Error(Errc::non_finite, "component is not a number");
            comps.push_back(v.get<double>());
        }
        return CurvatureTensor::from_components(n, std::move(comps));
    } catch (const json::exception& e) {
        throw Error(Errc::io, std::string("tensor json: ") + e.what());
    }
}

inline std::string tensor_to_string(const CurvatureTensor& r) { return dump(to_json(r), 0) + "\n"; }

inline void write_tensor_file(const std::string& path, const CurvatureTensor& r) {
    write_text_file(path, tensor_to_string(r));
}

inline CurvatureTensor read_tensor_file(const std::string& path) { return tensor_from_json(read_json_file(path)); }

inline json frame_to_json(const Eigen::Ref<const Eigen::MatrixXd>& rows) {
    json vecs = json::array();
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < rows.cols(); ++c) row.push_back(rows(i, c));
        vecs.push_back(std::move(row));
    }
    return {{"n", rows.cols()}, {"vectors", std::move(vecs)}};
}

inline Frame4 frame_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const auto& vecs = j.at("vectors");
        if (!vecs.is_array() || vecs.size() != 4) throw Error(Errc::io, "frame needs 4 vectors");
        Eigen::MatrixXd m(4, n);
        for (int i = 0; i < 4; ++i) {
            if (vecs[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(n))
                throw Error(Errc::dimension_mismatch, "frame vector length != n");
            for (int c = 0; c < n; ++c) m(i, c) = vecs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].get<double>();
        }
        return Frame4::from_rows(m);
    } catch (const json::exception& e) {
        throw Error(Errc::io, std::string("frame json: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Reports

inline json weights_to_json(const std::optional<Weights>& w) {
    if (!w) return nullptr;
    return {{"lambda", w->lambda()}, {"mu", w->mu()}};
}

inline json report_to_json(const ConditionReport& rep) {
    return {{"min_value", rep.min_value},
            {"frame", frame_to_json(rep.argmin_frame)},
            {"weights", weights_to_json(rep.argmin_weights)},
            {"restarts", rep.restarts},
            {"iterations", rep.iterations},
            {"grad_norm", rep.grad_norm},
            {"converged", rep.converged},
            {"best_restart", rep.best_restart}};
}

/// {condition, decision, min_value, margin, frame, weights, restarts, seed} plus diagnostics.
inline json check_report(const std::string& condition, bool decision, const ConditionReport& rep,
                         const MinimizeOpts& opts) {
    return {{"condition", condition},
            {"decision", decision},
            {"min_value", rep.min_value},
            {"margin", opts.margin},
            {"frame", frame_to_json(rep.argmin_frame)},
            {"weights", weights_to_json(rep.argmin_weights)},
            {"restarts", opts.restarts},
            {"seed", opts.seed},
            {"converged", rep.converged},
            {"grad_norm", rep.grad_norm},
            {"certificate", "heuristic: multistart local minimization, min_value is an upper bound"}};
}

// ---------------------------------------------------------------------------
// Flow trace CSV

inline constexpr const char* trace_header = "t,kmin,kmax,min_iso,min_pic2,scalar,dt,err_est";

inline void write_trace_csv(std::ostream& os, const FlowTrace& trace) {
    os << trace_header << '\n';
    for (const auto& r : trace.rows)
        os << format_real(r.t) << ',' << format_real(r.kmin) << ',' << format_real(r.kmax) << ','
           << format_real(r.min_iso) << ',' << format_real(r.min_pic2) << ',' << format_real(r.scalar) << ','
           << format_real(r.dt) << ',' << format_real(r.err_est) << '\n';
}

inline std::vector<TraceRow> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::io, "empty trace");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != trace_header) throw Error(Errc::io, "unexpected trace header: " + line);
    std::vector<TraceRow> rows;
    double last_t = -std::numeric_limits<double>::infinity();
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::istringstream ls(line);
        std::array<double, 8> v{};
        for (std::size_t i = 0; i < v.size(); ++i) {
            std::string cell;
            if (!std::getline(ls, cell, ',')) throw Error(Errc::io, "short trace row: " + line);
            try {
                std::size_t used = 0;
                v[i] = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw Error(Errc::io, "bad number in trace: " + cell);
            }
            if (!std::isfinite(v[i])) throw Error(Errc::non_finite, "trace entry");
        }
        if (!(v[0] > last_t)) throw Error(Errc::io, "trace times must be strictly increasing");
        last_t = v[0];
        rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
    }
    return rows;
}

} // namespace curvlab::io
