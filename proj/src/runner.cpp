#include "lambert/runner.hpp"

#include "lambert/norm_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace lambert {

namespace {

std::string format_text(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string num(double x, OutputFormat fmt) {
    return fmt == OutputFormat::csv ? format_number(x) : format_text(x);
}

CriteriaOptions criteria_options(const RunOptions& o) {
    CriteriaOptions c;
    c.n_max = o.n_max;
    c.zero_tol = o.tol;
    c.printed_exponent = o.printed_exponent;
    return c;
}

PowerOptions power_options(const RunOptions& o) {
    PowerOptions p;
    p.tol = o.tol;
    p.restarts = o.restarts;
    p.seed = o.seed;
    return p;
}

AggregateMode aggregate_mode(const Exponents& exps) {
    return exps.p() > 1.0 ? AggregateMode::source_conjugate : AggregateMode::target_conjugate;
}

Instance require_points(const RunConfig& cfg, const char* command) {
    std::optional<Instance> inst = build_instance(cfg);
    if (!inst) {
        throw DomainError(std::string(command) + " needs a point-level instance, not an atom profile");
    }
    return std::move(*inst);
}

/// Profile for tables and norms: the materialized atoms of the instance.
AtomProfile finite_profile(const RunConfig& cfg) {
    if (const auto* spec = std::get_if<ProfileSpec>(&cfg.instance)) return build_profile(*spec);
    const Instance inst = require_points(cfg, "profile");
    return profile_from_points(inst.space, inst.partition, inst.u, inst.w, cfg.exponents,
                               aggregate_mode(cfg.exponents));
}

std::string instance_label(const RunConfig& cfg) {
    if (std::holds_alternative<ProfileSpec>(cfg.instance)) return "profile";
    return require_points(cfg, "label").label;
}

MeasurableFunction input_function(const RunConfig& cfg, const PointSpace& space) {
    if (!cfg.options.f) throw DomainError("options.f: an input function is required");
    if (cfg.options.f->size() != space.size()) {
        throw DomainError("options.f: " + std::to_string(cfg.options.f->size()) +
                          " values for " + std::to_string(space.size()) + " points");
    }
    return MeasurableFunction(*cfg.options.f);
}

std::string pointwise_report(const PointSpace& space, const MeasurableFunction& f,
                             const MeasurableFunction& g, const char* column, OutputFormat fmt) {
    std::ostringstream out;
    out << (fmt == OutputFormat::csv ? "" : "# ") << "id," << "f," << column << "\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        out << space.id(i) << ',' << num(f[i], fmt) << ',' << num(g[i], fmt) << '\n';
    }
    return out.str();
}

double relative_difference(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

RunResult check_result(const RunConfig& cfg) {
    const Verdict v = run_check(cfg);
    RunResult r;
    r.exit_code = exit_code_for(v);
    std::string header = "instance: " + instance_label(cfg) + "\nexponents: p=" +
                         format_text(cfg.exponents.p()) + " q=" + format_text(cfg.exponents.q()) +
                         "\n";
    if (cfg.options.format == OutputFormat::csv) {
        std::vector<AtomRow> rows;
        if (!(cfg.exponents.p() == 1.0 && cfg.exponents.q() == 1.0)) {
            rows = atom_rows(finite_profile(cfg), cfg.exponents, criteria_options(cfg.options));
        }
        r.report = atom_table_csv(rows);
        r.notes = header + verdict_text(v);
    } else {
        r.report = header + verdict_text(v);
    }
    return r;
}

RunResult norm_result(const RunConfig& cfg) {
    const OutputFormat fmt = cfg.options.format;
    const double closed = closed_form_norm(finite_profile(cfg), cfg.exponents);
    std::optional<NormEstimate> est;
    if (std::optional<Instance> inst = build_instance(cfg)) {
        est = power_method_norm(inst->op(), cfg.exponents, power_options(cfg.options));
    }
    RunResult r;
    std::ostringstream out;
    if (fmt == OutputFormat::csv) {
        out << "closed_form_norm,power_method_norm,relative_difference,iterations,converged\n";
        out << format_number(closed) << ',';
        if (est) {
            out << format_number(est->value) << ','
                << format_number(relative_difference(closed, est->value)) << ','
                << est->iterations << ',' << (est->converged ? "true" : "false");
        } else {
            out << ",,,";
        }
        out << '\n';
    } else {
        out << "closed_form_norm: " << format_text(closed) << '\n';
        if (est) {
            out << "power_method_norm: " << format_text(est->value) << '\n'
                << "relative_difference: " << format_text(relative_difference(closed, est->value))
                << '\n'
                << "iterations: " << est->iterations << '\n'
                << "converged: " << (est->converged ? "yes" : "no") << '\n'
                << "restarts: " << est->restarts_used << " (best " << est->best_restart << ")\n";
        } else {
            out << "power_method_norm: unavailable for atom profiles\n";
        }
    }
    r.report = out.str();
    return r;
}

RunResult truncate_result(const RunConfig& cfg, std::size_t keep) {
    const OutputFormat fmt = cfg.options.format;
    const AtomProfile profile = finite_profile(cfg);
    if (keep > profile.head_size()) {
        throw DomainError("truncate: --keep " + std::to_string(keep) + " exceeds the " +
                          std::to_string(profile.head_size()) + " atoms");
    }
    std::optional<Instance> inst = build_instance(cfg);
    std::ostringstream out;
    out << (fmt == OutputFormat::csv ? "" : "# ") << "keep,tail_norm,power_method_tail_norm\n";
    for (std::size_t k = 0; k <= keep; ++k) {
        out << k << ',' << num(tail_norm(profile, cfg.exponents, k), fmt) << ',';
        if (inst) {
            const LambertOperator rest = remainder(inst->op(), k);
            out << num(power_method_norm(rest, cfg.exponents, power_options(cfg.options)).value, fmt);
        }
        out << '\n';
    }
    return RunResult{kExitDecided, out.str(), ""};
}

RunResult witness_result(const RunConfig& cfg, std::size_t count) {
    const OutputFormat fmt = cfg.options.format;
    const Instance inst = require_points(cfg, "witness");
    const LambertOperator T = inst.op();
    if (count == 0 || count > T.partition().block_count()) {
        throw DomainError("witness: --count must lie in 1.." +
                          std::to_string(T.partition().block_count()));
    }
    std::ostringstream out;
    out << (fmt == OutputFormat::csv ? "" : "# ") << 'm';
    for (std::size_t n = 1; n <= count; ++n) out << ',' << n;
    out << '\n';
    for (std::size_t m = 1; m <= count; ++m) {
        out << m;
        for (std::size_t n = 1; n <= count; ++n) {
            out << ',' << num(witness_image_distance(T, cfg.exponents, m, n), fmt);
        }
        out << '\n';
    }
    return RunResult{kExitDecided, out.str(), ""};
}

RunResult decay_result(const RunConfig& cfg, std::size_t horizon) {
    const Instance inst = require_points(cfg, "decay");
    const std::vector<double> probe = approximation_decay_probe(inst.op(), cfg.exponents, horizon);
    std::ostringstream out;
    out << "k,tail_norm\n";
    for (std::size_t k = 0; k < probe.size(); ++k) out << k << ',' << format_number(probe[k]) << '\n';
    return RunResult{kExitDecided, out.str(), ""};
}

struct DemoCase {
    std::string name;
    RunConfig config;
};

RunConfig demo_config(InstanceSpec spec, double p, double q, const RunOptions& options) {
    RunConfig c;
    c.instance = std::move(spec);
    c.exponents = Exponents(p, q);
    c.options = options;
    return c;
}

std::vector<DemoCase> demo_cases(const std::string& name, const RunOptions& options) {
    std::vector<DemoCase> cases;
    if (name == "example_2_5_c") {
        const GrowingBlocksSpec spec{12};
        for (const auto& [p, q] : {std::pair{1.5, 2.0}, std::pair{2.0, 3.0}, std::pair{3.0, 5.0}}) {
            cases.push_back({"L" + format_text(p) + "->L" + format_text(q), demo_config(spec, p, q, options)});
        }
        for (double q : {1.5, 2.0, 4.0}) {
            cases.push_back({"L1->L" + format_text(q), demo_config(spec, 1.0, q, options)});
        }
    } else if (name == "example_2_5_b") {
        const auto merged = [](double w_exp) {
            return MergedPairSpec{200, PowerRule{1.0, 0.0}, PowerRule{1.0, w_exp}};
        };
        cases.push_back({"L3->L2 wu=n^-1/3", demo_config(merged(-1.0 / 3.0), 3.0, 2.0, options)});
        cases.push_back({"L3->L2 wu=n^-1/6", demo_config(merged(-1.0 / 6.0), 3.0, 2.0, options)});
        cases.push_back({"L2->L3 wu=n^-0.1", demo_config(merged(-0.1), 2.0, 3.0, options)});
        cases.push_back({"L2->L3 wu=1", demo_config(merged(0.0), 2.0, 3.0, options)});
    } else {
        throw DomainError("demo: unknown instance '" + name +
                          "' (expected example_2_5_b or example_2_5_c)");
    }
    return cases;
}

}  // namespace

int exit_code_for(const Verdict& v) noexcept {
    return v.status == Status::Inconclusive ? kExitInconclusive : kExitDecided;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string atom_table_csv(const std::vector<AtomRow>& rows) {
    std::ostringstream out;
    out << "n,mu,eu,ew,gauge,term,partial_sum\n";
    for (const AtomRow& r : rows) {
        out << r.n << ',' << format_number(r.stat.mu) << ',' << format_number(r.stat.eu) << ','
            << format_number(r.stat.ew) << ',' << format_number(r.gauge) << ','
            << format_number(r.term) << ',' << format_number(r.partial_sum) << '\n';
    }
    return out.str();
}

std::string verdict_text(const Verdict& v) {
    std::ostringstream out;
    out << "status: " << to_string(v.status) << '\n'
        << "certainty: " << to_string(v.certainty) << '\n'
        << "case: " << to_string(v.case_tag) << '\n';
    if (v.violation_index) out << "violation_index: " << *v.violation_index << '\n';
    if (v.violating_sample) {
        out << "violating_sample: mass=" << format_text(v.violating_sample->mass)
            << " ew=" << format_text(v.violating_sample->ew)
            << " eu=" << format_text(v.violating_sample->eu) << '\n';
    }
    for (const ConditionOutcome& c : v.conditions) {
        out << "condition " << c.name << ": " << to_string(c.truth)
            << (c.certified ? " (certified)" : " (heuristic)");
        if (!c.detail.empty()) out << " - " << c.detail;
        out << '\n';
        for (const auto& [key, value] : c.diagnostics) {
            out << "  " << key << " = " << format_text(value) << '\n';
        }
    }
    return out.str();
}

Verdict run_check(const RunConfig& cfg) {
    const Exponents& exps = cfg.exponents;
    const CriteriaOptions opts = criteria_options(cfg.options);
    if (const auto* spec = std::get_if<ProfileSpec>(&cfg.instance)) {
        return check_compactness(ProfileInput{build_profile(*spec)}, cfg.region, exps, opts);
    }
    const Instance inst = require_points(cfg, "check");
    if (inst.model && !(exps.p() == 1.0 && exps.q() == 1.0)) {
        if (exps.p() > 1.0) {
            return check_compactness(ProfileInput{inst.model->profile(exps)}, cfg.region, exps, opts);
        }
        return check_compactness(PointInput{inst.op(), inst.model->l1_atom_tail(exps.q()),
                                            inst.model->l1_point_tail(exps.q())},
                                 cfg.region, exps, opts);
    }
    return check_compactness(PointInput{inst.op(), std::nullopt, std::nullopt}, cfg.region, exps,
                             opts);
}

RunResult run(const RunConfig& cfg, const RunRequest& req) {
    switch (req.command) {
        case Command::check:
            return check_result(cfg);
        case Command::norm:
            return norm_result(cfg);
        case Command::expect: {
            const Instance inst = require_points(cfg, "expect");
            const MeasurableFunction f = input_function(cfg, inst.space);
            const ConditionalExpectation E(inst.space, inst.partition);
            return RunResult{kExitDecided,
                             pointwise_report(inst.space, f, cond_expect(E, f), "Ef",
                                              cfg.options.format),
                             ""};
        }
        case Command::apply: {
            const Instance inst = require_points(cfg, "apply");
            const MeasurableFunction f = input_function(cfg, inst.space);
            return RunResult{kExitDecided,
                             pointwise_report(inst.space, f, apply(inst.op(), f), "Tf",
                                              cfg.options.format),
                             ""};
        }
        case Command::truncate:
            return truncate_result(cfg, req.keep);
        case Command::witness:
            return witness_result(cfg, req.count);
        case Command::decay:
            return decay_result(cfg, req.horizon);
        case Command::demo:
            return run_demo(req.demo, cfg.options);
    }
    throw DomainError("unknown command");
}

RunResult run_demo(const std::string& name, const RunOptions& options) {
    const OutputFormat fmt = options.format;
    std::ostringstream out;
    if (fmt == OutputFormat::csv) {
        out << "case,p,q,status,certainty,closed_form_norm,power_method_norm\n";
    } else {
        out << "demo: " << name << '\n';
    }
    int exit_code = kExitDecided;
    for (const DemoCase& c : demo_cases(name, options)) {
        const Verdict v = run_check(c.config);
        if (exit_code_for(v) != kExitDecided) exit_code = kExitInconclusive;
        std::string closed;
        std::string power;
        if (c.config.exponents.p() > 1.0 && c.config.exponents.q() > 1.0) {
            closed = num(closed_form_norm(finite_profile(c.config), c.config.exponents), fmt);
            const Instance inst = require_points(c.config, "demo");
            power = num(power_method_norm(inst.op(), c.config.exponents, power_options(options)).value,
                        fmt);
        }
        if (fmt == OutputFormat::csv) {
            out << c.name << ',' << format_number(c.config.exponents.p()) << ','
                << format_number(c.config.exponents.q()) << ',' << to_string(v.status) << ','
                << to_string(v.certainty) << ',' << closed << ',' << power << '\n';
        } else {
            out << "  " << c.name << ": " << to_string(v.status) << " (" << to_string(v.certainty)
                << ", " << to_string(v.case_tag) << ")";
            if (!closed.empty()) out << "  closed_form_norm=" << closed << " power_method_norm=" << power;
            out << '\n';
        }
    }
    return RunResult{exit_code, out.str(), ""};
}

}  // namespace lambert
