#include "runner.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include <lvis/analysis.hpp>
#include <lvis/lens.hpp>
#include <lvis/resonator.hpp>

#ifndef LVIS_VERSION
#define LVIS_VERSION "unknown"
#endif

namespace lvis::app {

namespace {

using json = nlohmann::ordered_json;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json stats_json(const BeamStats& s, const PhysicalConstants& c) {
    json j;
    j["coupled"] = s.coupled;
    j["coupling_fraction"] = s.coupling_fraction;
    j["coupling_stderr"] = s.coupling_stderr;
    j["mean_polar_angle_rad"] = s.polar.mean;
    j["mean_polar_angle_stderr_rad"] = s.polar.std_error;
    j["v_rms_m_per_s"] = s.transverse.v_rms;
    j["temperature_K"] = s.transverse.temperature;
    j["doppler_limit_2d_K"] = doppler_limit(2, c);
    return j;
}

std::string trajectories_csv(const EnsembleResult& result) {
    std::ostringstream out;
    out << "atom_id,t,x,y,z,vx,vy,vz\n";
    for (std::size_t i = 0; i < result.trajectories.size(); ++i) {
        for (const auto& s : result.trajectories[i]) {
            out << i << ',' << format_number(s.t) << ',' << format_number(s.position.x) << ','
                << format_number(s.position.y) << ',' << format_number(s.position.z) << ','
                << format_number(s.velocity.x) << ',' << format_number(s.velocity.y) << ','
                << format_number(s.velocity.z) << '\n';
        }
    }
    return out.str();
}

json manifest(const RunConfig& cfg, const std::vector<RunOutput>& outputs) {
    json j;
    j["program"] = "lvis";
    j["version"] = LVIS_VERSION;
    j["mode"] = to_string(cfg.mode);
    j["seed"] = cfg.run.seed;
    j["atoms"] = cfg.run.atoms;
    j["threads"] = cfg.run.threads;
    j["config"] = to_ini(cfg);
    json files = json::array();
    files.push_back("manifest.json");
    for (const auto& o : outputs) files.push_back(o.name);
    j["outputs"] = files;
    return j;
}

std::vector<RunOutput> run_ensemble(const RunConfig& cfg, std::ostream& log) {
    const BeamSimulation sim = make_simulation(cfg);
    const EnsembleResult result = run_beam_simulation(sim);
    const BeamStats stats = beam_stats(result, sim.constants);

    std::uint64_t events = 0;
    for (const auto& a : result.atoms) events += a.events;

    json s;
    s["mode"] = to_string(cfg.mode);
    s["engine"] = to_string(sim.engine);
    s["atoms"] = result.atoms.size();
    s["seed"] = sim.seed;
    s["wall"] = result.wall;
    s["step_capped"] = result.step_capped;
    s["scattering_events"] = events;
    s.update(stats_json(stats, sim.constants));

    log << to_string(cfg.mode) << ": " << result.atoms.size() << " atoms, coupled " << result.coupled << " ("
        << format_number(result.coupling_fraction) << " +/- " << format_number(result.coupling_stderr) << ")";
    if (sim.light) {
        log << ", v_rms " << format_number(stats.transverse.v_rms) << " m/s, T "
            << format_number(stats.transverse.temperature) << " K";
    }
    log << '\n';
    if (result.step_capped) log << "warning: " << result.step_capped << " atoms hit the step cap\n";

    std::vector<RunOutput> out{{"summary.json", dump(s)}};
    if (sim.keep_trajectories) out.push_back({"trajectories.csv", trajectories_csv(result)});
    return out;
}

std::vector<RunOutput> run_sweep_mode(const RunConfig& cfg, std::ostream& log) {
    const SweepSpec spec = make_sweep(cfg);
    const auto rows = run_sweep(spec);
    const PhysicalConstants c = make_constants(cfg);

    std::ostringstream csv;
    csv << "param_value,mean_polar_angle_rad,stderr,v_rms,T_K,coupling_fraction\n";
    json points = json::array();
    for (const auto& r : rows) {
        csv << format_number(r.value) << ',' << format_number(r.stats.polar.mean) << ','
            << format_number(r.stats.polar.std_error) << ',' << format_number(r.stats.transverse.v_rms) << ','
            << format_number(r.stats.transverse.temperature) << ',' << format_number(r.stats.coupling_fraction)
            << '\n';
        json p;
        p["value"] = r.value;
        p.update(stats_json(r.stats, c));
        points.push_back(p);
        log << "sweep " << cfg.sweep.parameter << " = " << format_number(r.value) << ": mean polar angle "
            << format_number(r.stats.polar.mean) << " rad\n";
    }
    const auto best = std::min_element(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.stats.polar.mean < b.stats.polar.mean;
    });

    json s;
    s["mode"] = "sweep";
    s["parameter"] = cfg.sweep.parameter;
    s["engine"] = to_string(spec.base.engine);
    s["atoms_per_point"] = spec.atoms_per_point;
    s["seed"] = spec.base.seed;
    s["argmin_mean_polar_angle"] = best->value;
    s["points"] = points;
    return {{"summary.json", dump(s)}, {"sweep.csv", csv.str()}};
}

std::vector<RunOutput> run_lens_mode(const RunConfig& cfg, std::ostream& log) {
    const LensSimulation sim = make_lens(cfg);
    const auto offsets = imbalance_offsets(cfg);
    const auto map = imbalance_map(sim.lens, offsets, sim.base.constants);
    const LensResult result = simulate_lens(sim);

    std::ostringstream imbalance;
    imbalance << "offset_m,ratio\n";
    for (const auto& p : map) imbalance << format_number(p.offset) << ',' << format_number(p.ratio) << '\n';
    std::ostringstream focus;
    focus << "z_m,rms_radius_m\n";
    for (const auto& p : result.profile) focus << format_number(p.z) << ',' << format_number(p.rms_radius) << '\n';

    const double p = focus_offset(sim.lens, sim.base.constants.wavelength);
    json s;
    s["mode"] = "lens";
    s["engine"] = to_string(sim.base.engine);
    s["atoms"] = result.ensemble.atoms.size();
    s["seed"] = sim.base.seed;
    s["step_capped"] = result.ensemble.step_capped;
    s["focus_offset_m"] = p;
    if (p > 1e-3) s["ratio_at_1mm"] = scattering_ratio(sim.lens, 1e-3, sim.base.constants);
    s["focused"] = result.focused;
    s["focus_z_m"] = result.focus_z;
    s["min_rms_radius_m"] = result.min_radius;
    s["first_plane_rms_radius_m"] = result.profile.front().rms_radius;

    log << "lens: " << (result.focused ? "focus" : "no focus") << ", smallest RMS radius "
        << format_number(result.min_radius) << " m at z = " << format_number(result.focus_z) << " m\n";
    std::vector<RunOutput> out{{"summary.json", dump(s)}, {"imbalance.csv", imbalance.str()}, {"focus.csv", focus.str()}};
    if (sim.base.keep_trajectories) out.push_back({"trajectories.csv", trajectories_csv(result.ensemble)});
    return out;
}

std::vector<RunOutput> run_finesse_mode(const RunConfig& cfg, std::ostream& log) {
    const auto& f = cfg.finesse;
    const double value = finesse(f.t1_ppm * 1e-6, f.t2_ppm * 1e-6, f.loss1_ppm * 1e-6, f.loss2_ppm * 1e-6);
    const double fraction = output_fraction(f.t1_ppm * 1e-6, f.t2_ppm * 1e-6);
    json s;
    s["mode"] = "finesse";
    s["t1_ppm"] = f.t1_ppm;
    s["t2_ppm"] = f.t2_ppm;
    s["loss1_ppm"] = f.loss1_ppm;
    s["loss2_ppm"] = f.loss2_ppm;
    s["finesse"] = value;
    s["output_fraction"] = fraction;
    log << "finesse " << format_number(value) << ", output fraction " << format_number(fraction) << '\n';
    return {{"summary.json", dump(s)}};
}

}  // namespace

std::vector<RunOutput> execute(const RunConfig& cfg, std::ostream& log) {
    std::vector<RunOutput> out;
    switch (cfg.mode) {
        case Mode::beam:
        case Mode::deflect: out = run_ensemble(cfg, log); break;
        case Mode::sweep: out = run_sweep_mode(cfg, log); break;
        case Mode::lens: out = run_lens_mode(cfg, log); break;
        case Mode::finesse: out = run_finesse_mode(cfg, log); break;
    }
    out.insert(out.begin(), {"manifest.json", dump(manifest(cfg, out))});
    return out;
}

void write_outputs(const std::filesystem::path& dir, const std::vector<RunOutput>& outputs) {
    std::filesystem::create_directories(dir);
    for (const auto& o : outputs) {
        const auto target = dir / o.name;
        auto partial = target;
        partial += ".partial";
        {
            std::ofstream f(partial, std::ios::binary | std::ios::trunc);
            f << o.content;
            f.close();
            if (!f) throw std::filesystem::filesystem_error("cannot write", partial, std::make_error_code(std::errc::io_error));
        }
        std::filesystem::rename(partial, target);
    }
}

int run(const RunConfig& cfg, const std::filesystem::path& dir, std::ostream& log, std::ostream& err) {
    std::vector<RunOutput> outputs;
    try {
        outputs = execute(cfg, log);
    } catch (const StepCapExceeded& e) {
        err << "error: " << e.what() << " (strict mode)\n";
        return step_cap_error;
    }
    try {
        write_outputs(dir, outputs);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return io_error;
    }
    return ok;
}

std::string config_from_manifest(const std::string& manifest_json) {
    const json j = json::parse(manifest_json);
    if (!j.contains("config") || !j["config"].is_string()) {
        throw ConfigError(0, "manifest has no \"config\" entry");
    }
    return j["config"].get<std::string>();
}

}  // namespace lvis::app
