// lambert_lab: compactness verdicts and norm oracles for weighted Lambert
// type operators.
#include "lambert/config.hpp"
#include "lambert/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw lambert::ConfigError("<file>", "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t parse_nmax(const std::string& text, const char* source) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || v == 0 || text.front() == '-') {
        throw lambert::ConfigError(source, "expected a positive integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compactness and norm lab for T = M_w E M_u between L^p spaces"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string format;
    std::optional<std::string> nmax;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--nmax", nmax, "Atom evaluation budget (env LAMBERT_LAB_NMAX)");
    app.add_option("--tol", tol, "Numerical tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--out", out_path, "Write the report here instead of stdout");

    lambert::RunRequest req;
    auto* check = app.add_subcommand("check", "Compactness verdict");
    auto* norm = app.add_subcommand("norm", "Closed-form and power-method norms");
    auto* expect = app.add_subcommand("expect", "Print E(f) for options.f");
    auto* apply = app.add_subcommand("apply", "Print Tf for options.f");
    auto* truncate = app.add_subcommand("truncate", "Tail norm table");
    truncate->add_option("--keep", req.keep, "Atoms kept")->required();
    auto* witness = app.add_subcommand("witness", "Pairwise witness image distances");
    witness->add_option("--count", req.count, "Number of witnesses")->required();
    auto* decay = app.add_subcommand("decay", "Approximation decay CSV");
    decay->add_option("--horizon", req.horizon, "Largest rank probed")->required();
    auto* demo = app.add_subcommand("demo", "Gallery walkthrough");
    demo->add_option("name", req.demo, "example_2_5_b or example_2_5_c")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : lambert::kExitError;
    }

    const std::pair<CLI::App*, lambert::Command> commands[] = {
        {check, lambert::Command::check},     {norm, lambert::Command::norm},
        {expect, lambert::Command::expect},   {apply, lambert::Command::apply},
        {truncate, lambert::Command::truncate}, {witness, lambert::Command::witness},
        {decay, lambert::Command::decay},     {demo, lambert::Command::demo}};
    for (const auto& [sub, cmd] : commands) {
        if (sub->parsed()) req.command = cmd;
    }

    try {
        lambert::RunConfig cfg;
        if (req.command != lambert::Command::demo || !config_path.empty()) {
            if (config_path.empty()) throw lambert::ConfigError("--config", "required for this command");
            cfg = lambert::parse_config(read_file(config_path));
        }
        lambert::RunOptions& o = cfg.options;
        if (nmax) {
            o.n_max = parse_nmax(*nmax, "--nmax");
        } else if (const char* env = std::getenv("LAMBERT_LAB_NMAX"); env && *env) {
            o.n_max = parse_nmax(env, "LAMBERT_LAB_NMAX");
        }
        if (tol) o.tol = *tol;
        if (seed) o.seed = *seed;
        if (!format.empty()) o.format = format == "csv" ? lambert::OutputFormat::csv : lambert::OutputFormat::text;

        const lambert::RunResult result = lambert::run(cfg, req);
        if (out_path.empty()) {
            std::cout << result.report << std::flush;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw lambert::ConfigError("--out", "cannot write '" + out_path + "'");
            out << result.report;
        }
        std::cerr << result.notes;
        return result.exit_code;
    } catch (const lambert::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
    } catch (const lambert::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
    } catch (const lambert::EvaluationError& e) {
        std::cerr << "evaluation error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return lambert::kExitError;
}
