#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "scp/scp.hpp"

namespace scp::cli {
namespace {

struct RunOptions {
    std::string problem;
    std::string x0;
    std::optional<double> eps;
    std::optional<double> eps_g;
    std::optional<double> eps_c;
    std::optional<double> eps_h;
    std::optional<int> max_iter;
    std::string trace;
    bool no_corrections = false;
    bool audit = false;
    std::vector<std::string> overrides;
};

int exit_code(SolveStatus status) {
    switch (status) {
        case SolveStatus::ConvergedSOSP: return kConvergedSOSP;
        case SolveStatus::ConvergedFOSP: return kConvergedFOSP;
        case SolveStatus::MaxIterations: return kMaxIterations;
        case SolveStatus::LicqFailure: return kLicqFailure;
        case SolveStatus::NumericalError: return kNumericalError;
    }
    return kNumericalError;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::exception();
        } catch (const std::exception&) {
            throw ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (values.empty()) throw ConfigError(std::string("empty ") + what);
    return values;
}

SolverConfig build_config(const RunOptions& opt) {
    SolverConfig config;
    if (opt.eps) config.set_tolerance(*opt.eps);
    if (opt.eps_g) config.eps_g = *opt.eps_g;
    if (opt.eps_c) config.eps_c = *opt.eps_c;
    if (opt.eps_h) config.eps_h = *opt.eps_h;
    if (opt.max_iter) config.max_iter = *opt.max_iter;
    if (opt.no_corrections) config.corrections_enabled = false;
    if (opt.audit) config.audit = true;
    for (const auto& kv : opt.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("override '" + kv + "' is not key=value");
        const auto values = parse_list(kv.substr(eq + 1), "override value");
        if (values.size() != 1) throw ConfigError("override '" + kv + "' has several values");
        config.set(kv.substr(0, eq), values.front());
    }
    config.validate();
    return config;
}

Vector start_point(const Problem& problem, const std::string& x0) {
    if (x0.empty()) return problem.default_start;
    const auto values = parse_list(x0, "--x0");
    if (static_cast<Index>(values.size()) != problem.n) {
        throw ConfigError("--x0 has " + std::to_string(values.size()) + " entries, problem '" +
                          problem.name + "' has n = " + std::to_string(problem.n));
    }
    return Eigen::Map<const Vector>(values.data(), problem.n);
}

void print_violations(std::ostream& out, const std::vector<IterationRecord>& records) {
    for (const auto& rec : records) {
        for (const auto& v : rec.violations) {
            out << "violation k=" << rec.k << ' ' << v.check << ": " << v.detail << '\n';
        }
    }
}

void add_run_options(CLI::App& cmd, RunOptions& opt) {
    cmd.add_option("--problem", opt.problem, "catalog problem name")->required();
    cmd.add_option("--x0", opt.x0, "start point as a comma list");
    cmd.add_option("--eps", opt.eps, "sets eps_g, eps_c and eps_h");
    cmd.add_option("--eps-g", opt.eps_g);
    cmd.add_option("--eps-c", opt.eps_c);
    cmd.add_option("--eps-h", opt.eps_h);
    cmd.add_option("--max-iter", opt.max_iter);
    cmd.add_flag("--no-corrections", opt.no_corrections, "disable second-order corrections");
    cmd.add_option("--set", opt.overrides, "config override key=value")->take_all();
}

int cmd_solve(const RunOptions& opt, std::ostream& out, std::ostream& err) {
    const Problem problem = builtin_problem(opt.problem);
    const SolverConfig config = build_config(opt);
    const SolveResult result = solve(problem, start_point(problem, opt.x0), config);

    if (!opt.trace.empty()) {
        std::ofstream file(opt.trace);
        if (!file) {
            err << "error: cannot open trace file '" << opt.trace << "'\n";
            return kIoError;
        }
        write_trace(file, problem.name, config, result.history);
    }

    const auto& rep = result.final_report;
    out << std::setprecision(6) << "status=" << to_string(result.status)
        << " iterations=" << result.iterations() << " successful=" << result.counts.successful
        << " corrections=" << result.counts.corrections
        << " grad_lagrangian=" << rep.grad_lagrangian_norm << " c_l1=" << rep.c_l1
        << " lambda_min=" << rep.lambda_min_red << '\n';
    if (result.status != SolveStatus::ConvergedSOSP && !result.message.empty()) {
        err << "note: " << result.message << '\n';
    }
    if (config.audit) {
        print_violations(out, result.history);
        for (const auto& rec : result.history) {
            for (const auto& w : rec.warnings) out << "warning k=" << rec.k << ' ' << w << '\n';
        }
        if (result.audit_violations > 0 && result.status == SolveStatus::ConvergedSOSP) {
            return kAuditViolations;
        }
    }
    return exit_code(result.status);
}

int cmd_sweep(const RunOptions& opt, const std::string& sweep, std::ostream& out) {
    const Problem problem = builtin_problem(opt.problem);
    const SolverConfig config = build_config(opt);
    const auto eps = parse_list(sweep, "--sweep");
    const auto rows = run_sweep(problem, start_point(problem, opt.x0), config, eps);

    out << "eps,status,successful,total,max_sigma,final_mu\n" << std::setprecision(17);
    int code = kConvergedSOSP;
    for (const auto& row : rows) {
        out << row.eps << ',' << to_string(row.status) << ',' << row.successful << ','
            << row.total << ',' << row.max_sigma << ',' << row.final_mu << '\n';
        if (code == kConvergedSOSP) code = exit_code(row.status);
    }
    const auto slope = loglog_slope(rows);
    out << "slope,";
    if (slope) {
        out << std::setprecision(6) << *slope;
    } else {
        out << "absent";
    }
    out << '\n';
    return code;
}

int cmd_audit(const std::string& trace_path, std::ostream& out, std::ostream& err) {
    std::ifstream file(trace_path);
    if (!file) {
        err << "error: cannot open trace file '" << trace_path << "'\n";
        return kIoError;
    }
    Trace trace = read_trace(file);
    for (auto& rec : trace.records) {
        rec.violations = audit_iteration(rec, trace.config);
    }
    print_violations(out, trace.records);
    int count = 0;
    for (const auto& rec : trace.records) count += static_cast<int>(rec.violations.size());
    out << "audited " << trace.records.size() << " iterations, " << count << " violations\n";
    return count == 0 ? kConvergedSOSP : kAuditViolations;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sequential cubic programming on the built-in problem catalog", "scp"};
    app.require_subcommand(1);

    RunOptions solve_opt;
    auto* solve_cmd = app.add_subcommand("solve", "solve one catalog problem");
    add_run_options(*solve_cmd, solve_opt);
    solve_cmd->add_option("--trace", solve_opt.trace, "write a line-delimited JSON trace");
    solve_cmd->add_flag("--audit", solve_opt.audit, "audit every iteration");

    RunOptions sweep_opt;
    std::string sweep_list;
    auto* sweep_cmd = app.add_subcommand("sweep", "solve at several tolerances, print CSV");
    add_run_options(*sweep_cmd, sweep_opt);
    sweep_cmd->add_option("--sweep", sweep_list, "tolerances as a comma list")->required();

    std::string audit_trace;
    auto* audit_cmd = app.add_subcommand("audit", "re-audit every iteration of a trace");
    audit_cmd->add_option("--trace", audit_trace, "trace file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        if (*solve_cmd) return cmd_solve(solve_opt, out, err);
        if (*sweep_cmd) return cmd_sweep(sweep_opt, sweep_list, out);
        return cmd_audit(audit_trace, out, err);
    } catch (const TraceParseError& e) {
        err << "error: " << e.what() << '\n';
        return kTraceParseError;
    } catch (const UnknownProblem& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

}  // namespace scp::cli
