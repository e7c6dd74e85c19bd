#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "presets.hpp"
#include "runner.hpp"

namespace {

using namespace lvis::app;

struct Options {
    std::string config;
    std::string preset;
    std::string out = "lvis-out";
    std::optional<std::uint64_t> seed, atoms, threads;
    bool strict = false;
    bool trajectories = false;
    bool print_config = false;
    std::optional<double> t1_ppm, t2_ppm;
};

std::optional<std::string> load_text(const Options& opt, Mode mode, std::string& source) {
    if (!opt.config.empty()) {
        std::ifstream in(opt.config, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot read " << opt.config << '\n';
            return std::nullopt;
        }
        std::ostringstream text;
        text << in.rdbuf();
        source = opt.config;
        const std::string s = text.str();
        const auto first = s.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && s[first] == '{') return config_from_manifest(s);
        return s;
    }
    const std::string name = opt.preset.empty() ? std::string(default_preset(mode)) : opt.preset;
    const auto preset = find_preset(name);
    if (!preset) {
        std::cerr << "error: unknown preset '" << name << "' (try `lvis presets`)\n";
        return std::nullopt;
    }
    source = "preset " + std::string(preset->name);
    return std::string(preset->text);
}

int dispatch(const Options& opt, Mode mode) {
    std::string source;
    try {
        const auto text = load_text(opt, mode, source);
        if (!text) return usage_error;
        RunConfig cfg = parse_config(*text, mode);

        if (mode != Mode::finesse) {
            if (opt.seed) cfg.run.seed = *opt.seed;
            if (opt.atoms) (mode == Mode::sweep ? cfg.sweep.atoms_per_point : cfg.run.atoms) = *opt.atoms;
            if (opt.threads) cfg.run.threads = *opt.threads;
            if (opt.strict) cfg.run.strict = true;
            if (opt.trajectories) cfg.run.trajectories = true;
        } else {
            if (opt.t1_ppm) cfg.finesse.t1_ppm = *opt.t1_ppm;
            if (opt.t2_ppm) cfg.finesse.t2_ppm = *opt.t2_ppm;
        }
        // Round trip through the text form so overrides pass the same checks.
        source = "command line";
        cfg = parse_config(to_ini(cfg), mode);

        if (opt.print_config) {
            std::cout << to_ini(cfg);
            return ok;
        }
        return run(cfg, opt.out, std::cout, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error (" << source << "): " << e.what() << '\n';
        return config_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return config_error;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulation of a cold atomic beam, a 2-D optical molasses and a cavity mode"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "INI config file, or a manifest.json from an earlier run");
        sub->add_option("--preset", opt.preset, "built-in preset (see `lvis presets`)");
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_flag("--print-config", opt.print_config, "print the resolved config and exit");
    };
    const auto add_run = [&](CLI::App* sub) {
        sub->add_option("--seed", opt.seed, "RNG seed");
        sub->add_option("--atoms", opt.atoms, "number of atoms (per point for sweep)")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker threads, 0 for all hardware threads");
        sub->add_flag("--strict", opt.strict, "fail if any atom hits the scattering step cap");
        sub->add_flag("--trajectories", opt.trajectories, "write trajectories.csv");
    };

    struct Entry {
        const char* name;
        const char* help;
        Mode mode;
    };
    const Entry entries[] = {
        {"beam", "free LVIS beam into the cavity mode", Mode::beam},
        {"deflect", "LVIS beam deflected by the 2-D molasses", Mode::deflect},
        {"sweep", "parameter sweep of the deflection setup", Mode::sweep},
        {"lens", "laser-lens imbalance map and focusing run", Mode::lens},
        {"finesse", "Fabry-Perot finesse from mirror transmissions", Mode::finesse},
    };
    std::optional<Mode> chosen;
    for (const auto& e : entries) {
        auto* sub = app.add_subcommand(e.name, e.help);
        add_common(sub);
        if (e.mode == Mode::finesse) {
            sub->add_option("--t1", opt.t1_ppm, "input mirror transmission, ppm");
            sub->add_option("--t2", opt.t2_ppm, "output mirror transmission, ppm");
        } else {
            add_run(sub);
        }
        sub->callback([&chosen, mode = e.mode] { chosen = mode; });
    }
    auto* list = app.add_subcommand("presets", "list built-in presets");
    list->callback([] {
        for (const auto& p : builtin_presets()) std::cout << p.name << '\n';
    });

    CLI11_PARSE(app, argc, argv);
    if (!chosen) return ok;
    return dispatch(opt, *chosen);
}
