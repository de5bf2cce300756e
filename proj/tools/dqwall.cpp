#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dqwall/cli/commands.hpp"

using namespace dqwall::cli;

namespace {

template <class T>
CLI::Option* option(CLI::App* app, const std::string& name, std::optional<T>& slot, const std::string& help) {
    return app->add_option_function<T>(name, [&slot](const T& v) { slot = v; }, help);
}

void bind_output(CLI::App* app, ConfigLayer& c, const std::string& formats) {
    option(app, "-o,--out", c.out, "output path (default: standard output)");
    option(app, "--format", c.format, "output format: " + formats)->check(CLI::IsMember(CLI::detail::split(formats, '|')));
}

void bind_grid(CLI::App* app, ConfigLayer& c) {
    option(app, "--x0", c.x0, "grid x lower bound");
    option(app, "--x1", c.x1, "grid x upper bound");
    option(app, "--p0", c.p0, "grid p lower bound");
    option(app, "--p1", c.p1, "grid p upper bound");
    option(app, "--nx", c.nx, "grid points in x (power of two, 64..4096)");
    option(app, "--np", c.np, "grid points in p (power of two, 64..4096)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-space Wigner function toolkit: derivations, residual checks and samplers"};
    app.require_subcommand(1, 1);
    std::optional<std::string> config_path;
    option(&app, "--config", config_path, "JSON config file; command-line flags take precedence");

    ConfigLayer c;

    auto* derive = app.add_subcommand("derive", "eliminate the shifted relations of a system and take the limit");
    option(derive, "-s,--system", c.system, "liouville | sinh-gordon | exp-delta | exp-delta-left | free");
    bind_output(derive, c, "json|text");

    auto* check = app.add_subcommand("check", "run residual and property suites");
    option(check, "suite", c.suite, "all | pde | hrhetc | showeqn | ops | free | star");
    option(check, "-t,--tolerance", c.tolerance, "override every tolerance");
    bind_output(check, c, "json|text");

    auto* sample = app.add_subcommand("sample", "sample a catalog Wigner function on a grid as CSV");
    option(sample, "-c,--case", c.case_id, "wall | wall_derived | square_well | delta_well | half_sho | half_sho_printed | free_mixed");
    option(sample, "-E,--energy", c.energy, "energy (walls and free states)");
    option(sample, "-n", c.n, "square-well quantum number");
    bind_grid(sample, c);
    option(sample, "-o,--out", c.out, "output path (default: standard output)");

    auto* free = app.add_subcommand("free-particle", "exact free-particle state algebra");
    option(free, "--a-plus", c.a_plus, "coefficient of delta(p - s)");
    option(free, "--a-minus", c.a_minus, "coefficient of delta(p + s)");
    option(free, "--b-re", c.b_re, "real part of b");
    option(free, "--b-im", c.b_im, "imaginary part of b");
    option(free, "--alpha-plus", c.alpha_plus, "amplitude of e^{isx}, as re or re,im");
    option(free, "--alpha-minus", c.alpha_minus, "amplitude of e^{-isx}, as re or re,im");
    option(free, "-E,--energy", c.free_energy, "energy E = s^2 (exact, default 1)");
    bind_output(free, c, "json|text");

    auto* report = app.add_subcommand("report", "run everything and write one JSON summary");
    option(report, "-t,--tolerance", c.tolerance, "override every check tolerance");
    option(report, "-o,--out", c.out, "output path (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const RunConfig cfg = resolve(c, config_path ? load_config_file(*config_path) : ConfigLayer{});
        if (*derive) return run_derive(cfg);
        if (*check) return run_check(cfg);
        if (*sample) return run_sample(cfg);
        if (*free) return run_free_particle(cfg);
        return run_report(cfg);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}
