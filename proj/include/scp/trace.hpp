#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "scp/config.hpp"
#include "scp/errors.hpp"
#include "scp/record.hpp"

namespace scp {

/// A parsed trace: the run configuration followed by the iteration records.
struct Trace {
    std::string problem;
    SolverConfig config;
    std::vector<IterationRecord> records;
};

namespace trace_detail {

using nlohmann::json;

inline json to_json(const Vector& v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

inline json to_json(const Matrix& M) {
    json out = json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        out.push_back(std::move(row));
    }
    return out;
}

inline json to_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline const json& field(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw TraceParseError(std::string("trace record lacks field '") + key + "'");
    }
    return *it;
}

inline double number(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number()) {
        throw TraceParseError(std::string("trace field '") + key + "' is not a number");
    }
    return v.get<double>();
}

inline bool boolean(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) {
        throw TraceParseError(std::string("trace field '") + key + "' is not a boolean");
    }
    return v.get<bool>();
}

inline std::optional<double> optional_number(const json& j, const char* key) {
    const json& v = field(j, key);
    if (v.is_null()) return std::nullopt;
    return number(j, key);
}

inline Vector vector(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) {
        throw TraceParseError(std::string("trace field '") + key + "' is not an array");
    }
    Vector out(static_cast<Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) {
            throw TraceParseError(std::string("trace field '") + key + "' has a non-number entry");
        }
        out(static_cast<Index>(i)) = v[i].get<double>();
    }
    return out;
}

inline Matrix matrix(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) {
        throw TraceParseError(std::string("trace field '") + key + "' is not an array");
    }
    const std::size_t rows = v.size();
    const std::size_t cols = rows == 0 ? 0 : v[0].size();
    Matrix out(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols) {
            throw TraceParseError(std::string("trace field '") + key + "' is not rectangular");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            if (!v[i][k].is_number()) {
                throw TraceParseError(std::string("trace field '") + key +
                                      "' has a non-number entry");
            }
            out(static_cast<Index>(i), static_cast<Index>(k)) = v[i][k].get<double>();
        }
    }
    return out;
}

}  // namespace trace_detail

inline nlohmann::json config_to_json(SolverConfig config) {
    nlohmann::json j;
    for (auto& [name, field] : config.numeric_fields()) {
        j[std::string(name)] = *field;
    }
    j["max_iter"] = config.max_iter;
    j["audit"] = config.audit;
    j["corrections_enabled"] = config.corrections_enabled;
    return j;
}

inline SolverConfig config_from_json(const nlohmann::json& j) {
    using namespace trace_detail;
    SolverConfig config;
    for (auto& [name, field] : config.numeric_fields()) {
        *field = number(j, std::string(name).c_str());
    }
    const json& max_iter = trace_detail::field(j, "max_iter");
    if (!max_iter.is_number_integer()) {
        throw TraceParseError("trace field 'max_iter' is not an integer");
    }
    config.max_iter = max_iter.get<int>();
    config.audit = boolean(j, "audit");
    config.corrections_enabled = boolean(j, "corrections_enabled");
    return config;
}

inline nlohmann::json record_to_json(const IterationRecord& rec) {
    using trace_detail::to_json;
    nlohmann::json j;
    j["type"] = "iteration";
    j["k"] = rec.k;
    j["x"] = to_json(rec.x);
    j["f"] = rec.f;
    j["c_l1"] = rec.c_l1;
    j["grad_lagrangian_norm"] = rec.grad_lagrangian_norm;
    j["lambda_min_red"] = rec.lambda_min_red;
    j["sigma"] = rec.sigma;
    j["mu"] = rec.mu;
    j["beta"] = rec.beta;
    j["norm_vc"] = rec.norm_vc;
    j["norm_v"] = rec.norm_v;
    j["norm_u"] = rec.norm_u;
    j["norm_d"] = rec.norm_d;
    j["norm_w"] = rec.norm_w;
    j["delta_q"] = rec.delta_q;
    j["delta_m_u"] = rec.delta_m_u;
    j["rho"] = rec.rho;
    j["rho_corr"] = to_json(rec.rho_corr);
    j["classification"] = std::string(to_string(rec.classification));
    j["correction_computed"] = rec.correction_computed;
    j["accepted"] = rec.accepted;

    const IterationContext& ctx = rec.context;
    nlohmann::json c;
    c["g"] = to_json(ctx.g);
    c["c"] = to_json(ctx.c);
    c["A"] = to_json(ctx.A);
    c["Z"] = to_json(ctx.Z);
    c["H"] = to_json(ctx.H);
    c["lambda"] = to_json(ctx.lambda);
    c["v_c"] = to_json(ctx.v_c);
    c["v"] = to_json(ctx.v);
    c["u"] = to_json(ctx.u);
    c["w"] = to_json(ctx.w);
    c["c_trial"] = to_json(ctx.c_trial);
    c["residual_l1"] = ctx.residual_l1;
    c["mu_prev"] = ctx.mu_prev;
    c["mu_candidate"] = ctx.mu_candidate;
    c["sigma_next"] = ctx.sigma_next;
    c["phi_x"] = ctx.phi_x;
    c["phi_trial"] = ctx.phi_trial;
    c["phi_corr"] = to_json(ctx.phi_corr);
    c["x_next"] = to_json(ctx.x_next);
    j["context"] = std::move(c);

    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : rec.violations) {
        violations.push_back({{"check", v.check}, {"detail", v.detail}});
    }
    j["violations"] = std::move(violations);
    j["warnings"] = rec.warnings;
    return j;
}

inline IterationRecord record_from_json(const nlohmann::json& j) {
    using namespace trace_detail;
    IterationRecord rec;
    const json& k = field(j, "k");
    if (!k.is_number_integer()) throw TraceParseError("trace field 'k' is not an integer");
    rec.k = k.get<int>();
    rec.x = vector(j, "x");
    rec.f = number(j, "f");
    rec.c_l1 = number(j, "c_l1");
    rec.grad_lagrangian_norm = number(j, "grad_lagrangian_norm");
    rec.lambda_min_red = number(j, "lambda_min_red");
    rec.sigma = number(j, "sigma");
    rec.mu = number(j, "mu");
    rec.beta = number(j, "beta");
    rec.norm_vc = number(j, "norm_vc");
    rec.norm_v = number(j, "norm_v");
    rec.norm_u = number(j, "norm_u");
    rec.norm_d = number(j, "norm_d");
    rec.norm_w = number(j, "norm_w");
    rec.delta_q = number(j, "delta_q");
    rec.delta_m_u = number(j, "delta_m_u");
    rec.rho = number(j, "rho");
    rec.rho_corr = optional_number(j, "rho_corr");
    const json& cls = field(j, "classification");
    const auto parsed = cls.is_string() ? parse_classification(cls.get<std::string>())
                                        : std::nullopt;
    if (!parsed) throw TraceParseError("trace field 'classification' is not a classification");
    rec.classification = *parsed;
    rec.correction_computed = boolean(j, "correction_computed");
    rec.accepted = boolean(j, "accepted");

    const json& c = field(j, "context");
    if (!c.is_object()) throw TraceParseError("trace field 'context' is not an object");
    IterationContext& ctx = rec.context;
    ctx.g = vector(c, "g");
    ctx.c = vector(c, "c");
    ctx.A = matrix(c, "A");
    ctx.Z = matrix(c, "Z");
    ctx.H = matrix(c, "H");
    ctx.lambda = vector(c, "lambda");
    ctx.v_c = vector(c, "v_c");
    ctx.v = vector(c, "v");
    ctx.u = vector(c, "u");
    ctx.w = vector(c, "w");
    ctx.c_trial = vector(c, "c_trial");
    ctx.residual_l1 = number(c, "residual_l1");
    ctx.mu_prev = number(c, "mu_prev");
    ctx.mu_candidate = number(c, "mu_candidate");
    ctx.sigma_next = number(c, "sigma_next");
    ctx.phi_x = number(c, "phi_x");
    ctx.phi_trial = number(c, "phi_trial");
    ctx.phi_corr = optional_number(c, "phi_corr");
    ctx.x_next = vector(c, "x_next");

    const json& violations = field(j, "violations");
    if (!violations.is_array()) throw TraceParseError("trace field 'violations' is not an array");
    for (const auto& v : violations) {
        if (!v.is_object() || !v.contains("check") || !v.contains("detail") ||
            !v["check"].is_string() || !v["detail"].is_string()) {
            throw TraceParseError("malformed violation entry");
        }
        rec.violations.push_back({v["check"].get<std::string>(), v["detail"].get<std::string>()});
    }
    const json& warnings = field(j, "warnings");
    if (!warnings.is_array()) throw TraceParseError("trace field 'warnings' is not an array");
    for (const auto& w : warnings) {
        if (!w.is_string()) throw TraceParseError("malformed warning entry");
        rec.warnings.push_back(w.get<std::string>());
    }
    return rec;
}

/// Writes one JSON object per line: a "config" header, then one "iteration" line per record.
inline void write_trace(std::ostream& out, const std::string& problem, const SolverConfig& config,
                        const std::vector<IterationRecord>& records) {
    nlohmann::json header;
    header["type"] = "config";
    header["problem"] = problem;
    header["config"] = config_to_json(config);
    out << header.dump() << '\n';
    for (const auto& rec : records) {
        out << record_to_json(rec).dump() << '\n';
    }
}

inline Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    bool have_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw TraceParseError("trace line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
            throw TraceParseError("trace line " + std::to_string(lineno) + ": missing type");
        }
        const std::string type = j["type"].get<std::string>();
        if (type == "config") {
            if (have_header) {
                throw TraceParseError("trace line " + std::to_string(lineno) +
                                      ": duplicate config record");
            }
            const auto& problem = trace_detail::field(j, "problem");
            if (!problem.is_string()) throw TraceParseError("trace field 'problem' is not a string");
            trace.problem = problem.get<std::string>();
            trace.config = config_from_json(trace_detail::field(j, "config"));
            have_header = true;
        } else if (type == "iteration") {
            if (!have_header) {
                throw TraceParseError("trace line " + std::to_string(lineno) +
                                      ": iteration record before config record");
            }
            trace.records.push_back(record_from_json(j));
        } else {
            throw TraceParseError("trace line " + std::to_string(lineno) + ": unknown type '" +
                                  type + "'");
        }
    }
    if (!have_header) {
        throw TraceParseError("trace has no config record");
    }
    return trace;
}

}  // namespace scp
