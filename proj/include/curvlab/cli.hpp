#pragma once

// Command-line front end. Exit codes: 0 pass, 1 condition violated or
// identity failed, 2 usage / input / I/O error.

#include "conditions.hpp"
#include "curvature.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "identities.hpp"
#include "io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace curvlab::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_violated = 1;
inline constexpr int exit_usage = 2;

/// "n=4,kappa=1" -> {{"n", 4}, {"kappa", 1}}.
inline std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(Errc::invalid_argument, "bad parameter '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(val, &used);
            if (used != val.size() || !std::isfinite(v)) throw std::invalid_argument(val);
            out[key] = v;
        } catch (const std::exception&) {
            throw Error(Errc::invalid_argument, "bad value for parameter '" + key + "'");
        }
    }
    return out;
}

/// --seed when given, else CURVLAB_SEED, else 0.
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CURVLAB_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw Error(Errc::invalid_argument, "CURVLAB_SEED is not an unsigned integer");
        }
    }
    return 0;
}

namespace detail {

class Params {
  public:
    explicit Params(std::map<std::string, double> p) : p_(std::move(p)) {}

    double real(const std::string& key, double fallback) {
        used_.push_back(key);
        const auto it = p_.find(key);
        return it == p_.end() ? fallback : it->second;
    }

    int integer(const std::string& key, int fallback) {
        const double v = real(key, fallback);
        if (v != std::floor(v) || std::abs(v) > 1e9) throw Error(Errc::invalid_argument, key + " must be an integer");
        return static_cast<int>(v);
    }

    void require_all_used() const {
        for (const auto& [k, v] : p_)
            if (std::find(used_.begin(), used_.end(), k) == used_.end())
                throw Error(Errc::invalid_argument, "unknown parameter '" + k + "' for this model kind");
    }

  private:
    std::map<std::string, double> p_;
    std::vector<std::string> used_;
};

struct ModelArgs {
    std::string kind;
    std::string params;
    std::string tensor;
    std::string tensor2;
    std::string out;
};

inline int run_model(const ModelArgs& a, std::ostream& out) {
    Params p(parse_params(a.params));
    ModelSpec spec;
    std::vector<CurvatureTensor> operands;
    auto operand = [&](const std::string& file, const std::string& prefix) {
        if (!file.empty()) return io::read_tensor_file(file);
        return model_sphere(p.integer("n" + prefix, 2), p.real("kappa" + prefix, 1.0));
    };
    if (a.kind == "sphere") {
        spec.kind = ModelKind::sphere;
        spec.n = p.integer("n", 4);
        spec.scale = p.real("kappa", 1.0);
    } else if (a.kind == "cpm") {
        spec.kind = ModelKind::complex_projective;
        spec.m = p.integer("m", 2);
        spec.scale = p.real("c", 4.0);
    } else if (a.kind == "product") {
        // Operands from --tensor/--tensor2, else spheres n1,kappa1 and n2,kappa2.
        spec.kind = ModelKind::product;
        operands.push_back(operand(a.tensor, "1"));
        operands.push_back(operand(a.tensor2, "2"));
    } else if (a.kind == "pad") {
        spec.kind = ModelKind::pad_euclidean;
        spec.k = p.integer("k", 2);
        operands.push_back(a.tensor.empty() ? model_sphere(p.integer("n", 4), p.real("kappa", 1.0))
                                            : io::read_tensor_file(a.tensor));
    } else if (a.kind == "combine") {
        if (a.tensor.empty() || a.tensor2.empty())
            throw Error(Errc::invalid_argument, "combine needs --tensor and --tensor2");
        spec.kind = ModelKind::combination;
        spec.a = p.real("a", 1.0);
        spec.b = p.real("b", 1.0);
        operands.push_back(io::read_tensor_file(a.tensor));
        operands.push_back(io::read_tensor_file(a.tensor2));
    } else {
        spec.kind = ModelKind::random;
        spec.n = p.integer("n", 4);
        const int seed = p.integer("seed", 0);
        if (seed < 0) throw Error(Errc::invalid_argument, "seed must be >= 0");
        spec.seed = static_cast<std::uint64_t>(seed);
    }
    p.require_all_used();
    const CurvatureTensor r = build_model(spec, operands);
    if (a.out.empty())
        out << io::tensor_to_string(r);
    else
        io::write_tensor_file(a.out, r);
    return exit_pass;
}

struct SearchArgs {
    std::string tensor;
    int restarts = 64;
    int max_iters = 500;
    std::optional<std::uint64_t> seed;
    double margin = 1e-7;

    MinimizeOpts opts() const {
        MinimizeOpts o;
        o.restarts = restarts;
        o.max_iters = max_iters;
        o.seed = resolve_seed(seed);
        o.margin = margin;
        o.validate();
        return o;
    }
};

inline int run_check(const std::string& condition, const SearchArgs& a, std::ostream& out) {
    const MinimizeOpts opts = a.opts();
    const CurvatureTensor r = io::read_tensor_file(a.tensor);
    io::json j;
    bool holds = false;
    if (condition == "nic") {
        const auto res = check_nic(r, opts);
        holds = res.holds;
        j = io::check_report(condition, holds, res.report, opts);
        j["boundary"] = res.boundary;
    } else if (condition == "pic2") {
        const auto res = check_pic2(r, opts);
        holds = res.holds;
        j = io::check_report(condition, holds, res.report, opts);
        j["boundary"] = res.boundary;
        j["family"] = res.family ? io::report_to_json(*res.family) : io::json(nullptr);
        j["lift_consistent"] = res.lift_consistent;
    } else {
        const auto res = check_quarter_pinched(r, opts);
        holds = res.holds;
        j = io::check_report(condition, holds, res.min_report, opts);
        j["kmin"] = res.kmin;
        j["kmax"] = res.kmax;
        j["kmax_frame"] = io::frame_to_json(res.max_report.argmin_frame);
    }
    out << io::dump(j) << '\n';
    return holds ? exit_pass : exit_violated;
}

inline int run_minimize(const std::string& objective, double lambda, double mu, const SearchArgs& a,
                        std::ostream& out) {
    const MinimizeOpts opts = a.opts();
    const CurvatureTensor r = io::read_tensor_file(a.tensor);
    Objective obj = Objective::isotropic();
    if (objective == "sectional") obj = Objective::sectional();
    if (objective == "lambda-mu") obj = Objective::lambda_mu(Weights::make(lambda, mu));
    io::json j = io::report_to_json(minimize_frame(r, obj, opts));
    j["objective"] = objective;
    j["seed"] = opts.seed;
    out << io::dump(j) << '\n';
    return exit_pass;
}

inline int run_identity(const std::string& suite, int trials, const std::optional<std::uint64_t>& seed_flag,
                        std::ostream& out) {
    const IdentitySuite s = suite == "lift"     ? IdentitySuite::lift
                            : suite == "cyclic" ? IdentitySuite::cyclic
                                                : IdentitySuite::decomposition;
    const std::uint64_t seed = resolve_seed(seed_flag);
    const BatteryResult res = run_identity_battery(s, trials, seed);
    const io::json j = {{"suite", suite},      {"trials", res.trials},       {"seed", seed},
                        {"max_residual", res.max_residual}, {"tolerance", res.tolerance}, {"pass", res.pass}};
    out << io::dump(j) << '\n';
    return res.pass ? exit_pass : exit_violated;
}

struct FlowArgs {
    std::string tensor;
    double t_end = 0.0;
    double dt = 1e-3;
    bool normalize = false;
    bool fixed_step = false;
    int stride = 1;
    int restarts = 8;
    std::optional<std::uint64_t> seed;
    std::string out;
};

inline int run_flow(const FlowArgs& a, std::ostream& out) {
    FlowOpts opts;
    opts.dt = a.dt;
    opts.normalize = a.normalize;
    opts.adaptive = !a.fixed_step;
    opts.stride = a.stride;
    opts.diag.restarts = a.restarts;
    opts.diag.seed = resolve_seed(a.seed);
    const CurvatureTensor r = io::read_tensor_file(a.tensor);
    const FlowTrace trace = integrate(r, a.t_end, opts);
    if (a.out.empty()) {
        io::write_trace_csv(out, trace);
    } else {
        std::ostringstream csv;
        io::write_trace_csv(csv, trace);
        io::write_text_file(a.out, csv.str());
    }
    return exit_pass;
}

inline int run_report(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io, "cannot open " + path);
    const auto rows = io::read_trace_csv(in);
    if (rows.empty()) throw Error(Errc::io, "trace has no rows");
    io::json j;
    double kmin = rows[0].kmin, kmax = rows[0].kmax, iso = rows[0].min_iso, pic2 = rows[0].min_pic2;
    for (const auto& r : rows) {
        kmin = std::min(kmin, r.kmin);
        kmax = std::max(kmax, r.kmax);
        iso = std::min(iso, r.min_iso);
        pic2 = std::min(pic2, r.min_pic2);
    }
    const bool ok = pic2 >= -cone_margin_tol;
    j = {{"rows", rows.size()},
         {"t_start", rows.front().t},
         {"t_end", rows.back().t},
         {"min_kmin", kmin},
         {"max_kmax", kmax},
         {"min_isotropic", iso},
         {"min_pic2", pic2},
         {"scalar_start", rows.front().scalar},
         {"scalar_end", rows.back().scalar},
         {"pic2_margin", cone_margin_tol},
         {"pic2_preserved", ok}};
    out << io::dump(j) << '\n';
    return ok ? exit_pass : exit_violated;
}

} // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"curvlab: algebraic curvature operators, curvature conditions and the reaction ODE", "curvlab"};
    app.require_subcommand(1);

    detail::ModelArgs model_args;
    auto* model = app.add_subcommand("model", "write a model curvature tensor as JSON");
    model->add_option("--kind", model_args.kind, "model kind")
        ->required()
        ->check(CLI::IsMember({"sphere", "cpm", "product", "pad", "random", "combine"}));
    model->add_option("--params", model_args.params, "comma-separated key=value parameters");
    model->add_option("--tensor", model_args.tensor, "operand tensor file (product, pad, combine)");
    model->add_option("--tensor2", model_args.tensor2, "second operand tensor file (product, combine)");
    model->add_option("--out", model_args.out, "output file (default: stdout)");

    auto add_search = [](CLI::App* sub, detail::SearchArgs& a) {
        sub->add_option("--tensor", a.tensor, "tensor JSON file")->required();
        sub->add_option("--restarts", a.restarts, "multistart restarts")->check(CLI::PositiveNumber);
        sub->add_option("--max-iters", a.max_iters, "iterations per restart")->check(CLI::PositiveNumber);
        sub->add_option("--seed", a.seed, "seed (default: CURVLAB_SEED or 0)");
        sub->add_option("--margin", a.margin, "decision margin")->check(CLI::PositiveNumber);
    };

    std::string condition;
    detail::SearchArgs check_args;
    auto* check = app.add_subcommand("check", "decide a curvature condition; exit 0 holds, 1 violated");
    check->add_option("--condition", condition)->required()->check(CLI::IsMember({"nic", "pic2", "quarter-pinch"}));
    add_search(check, check_args);

    std::string objective;
    double lambda = 1.0, mu = 1.0;
    detail::SearchArgs min_args;
    auto* minimize = app.add_subcommand("minimize", "minimize a frame objective");
    minimize->add_option("--objective", objective)
        ->required()
        ->check(CLI::IsMember({"isotropic", "sectional", "lambda-mu"}));
    minimize->add_option("--lambda", lambda)->check(CLI::Range(-1.0, 1.0));
    minimize->add_option("--mu", mu)->check(CLI::Range(-1.0, 1.0));
    add_search(minimize, min_args);

    std::string suite;
    int trials = 100;
    std::optional<std::uint64_t> identity_seed;
    auto* identity = app.add_subcommand("identity", "run a randomized identity battery");
    identity->add_option("--suite", suite)->required()->check(CLI::IsMember({"lift", "cyclic", "decomposition"}));
    identity->add_option("--trials", trials)->check(CLI::PositiveNumber);
    identity->add_option("--seed", identity_seed);

    detail::FlowArgs flow_args;
    auto* flow = app.add_subcommand("flow", "integrate dR/dt = Q(R) and write a trace CSV");
    flow->add_option("--tensor", flow_args.tensor)->required();
    flow->add_option("--t-end", flow_args.t_end)->required()->check(CLI::PositiveNumber);
    flow->add_option("--dt", flow_args.dt)->check(CLI::PositiveNumber);
    flow->add_flag("--normalize", flow_args.normalize, "hold the scalar curvature fixed");
    flow->add_flag("--fixed-step", flow_args.fixed_step, "disable step halving");
    flow->add_option("--stride", flow_args.stride, "diagnostics every N steps")->check(CLI::PositiveNumber);
    flow->add_option("--restarts", flow_args.restarts, "restarts per diagnostic minimization")
        ->check(CLI::PositiveNumber);
    flow->add_option("--seed", flow_args.seed);
    flow->add_option("--out", flow_args.out, "output CSV (default: stdout)");

    std::string trace_path;
    auto* report = app.add_subcommand("report", "summarize a trace CSV");
    report->add_option("--trace", trace_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (model->parsed()) return detail::run_model(model_args, out);
        if (check->parsed()) return detail::run_check(condition, check_args, out);
        if (minimize->parsed()) return detail::run_minimize(objective, lambda, mu, min_args, out);
        if (identity->parsed()) return detail::run_identity(suite, trials, identity_seed, out);
        if (flow->parsed()) return detail::run_flow(flow_args, out);
        if (report->parsed()) return detail::run_report(trace_path, out);
    } catch (const Error& e) {
        err << "curvlab: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "curvlab: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace curvlab::cli
