#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include <lvis/molasses.hpp>
#include <lvis/multilevel.hpp>
#include <lvis/resonator.hpp>

namespace lvis::app {

namespace {

enum class Check : std::uint8_t { any, positive, nonnegative, degrees_polar, ppm };

struct Field {
    std::string_view key;
    std::function<void(RunConfig&, std::string_view, std::size_t, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
    bool required = false;
};

struct Section {
    std::string_view name;
    std::vector<Field> fields;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::size_t line, std::string_view where, const std::string& what) {
    throw ConfigError(line, std::string(where) + ": " + what);
}

double read_double(std::string_view text, std::size_t line, std::string_view where) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        bad_value(line, where, "expected a plain number in SI units, got '" + std::string(text) + "'");
    }
    return v;
}

void check_number(double v, Check check, std::size_t line, std::string_view where) {
    switch (check) {
        case Check::any: return;
        case Check::positive:
            if (!(v > 0.0)) bad_value(line, where, "must be positive");
            return;
        case Check::nonnegative:
            if (!(v >= 0.0)) bad_value(line, where, "must not be negative");
            return;
        case Check::degrees_polar:
            if (!(v >= 0.0 && v < 90.0)) bad_value(line, where, "polar angle must lie in [0, 90) degrees");
            return;
        case Check::ppm:
            if (!(v >= 0.0 && v < 1e6)) bad_value(line, where, "must lie in [0, 1e6) ppm");
            return;
    }
}

template <class S>
Field number(std::string_view key, S RunConfig::*sec, double S::*mem, Check check = Check::any, bool required = false) {
    return {key,
            [=](RunConfig& c, std::string_view v, std::size_t line, std::string_view where) {
                const double x = read_double(v, line, where);
                check_number(x, check, line, where);
                (c.*sec).*mem = x;
            },
            [=](const RunConfig& c) { return format_number((c.*sec).*mem); }, required};
}

template <class S>
Field count(std::string_view key, S RunConfig::*sec, std::uint64_t S::*mem, std::uint64_t minimum) {
    return {key,
            [=](RunConfig& c, std::string_view v, std::size_t line, std::string_view where) {
                std::uint64_t x = 0;
                const auto* end = v.data() + v.size();
                const auto [ptr, ec] = std::from_chars(v.data(), end, x);
                if (ec != std::errc{} || ptr != end) {
                    bad_value(line, where, "expected a non-negative integer, got '" + std::string(v) + "'");
                }
                if (x < minimum) bad_value(line, where, "must be at least " + std::to_string(minimum));
                (c.*sec).*mem = x;
            },
            [=](const RunConfig& c) { return std::to_string((c.*sec).*mem); }};
}

template <class S>
Field flag(std::string_view key, S RunConfig::*sec, bool S::*mem) {
    return {key,
            [=](RunConfig& c, std::string_view v, std::size_t line, std::string_view where) {
                if (v == "true" || v == "yes" || v == "on" || v == "1") {
                    (c.*sec).*mem = true;
                } else if (v == "false" || v == "no" || v == "off" || v == "0") {
                    (c.*sec).*mem = false;
                } else {
                    bad_value(line, where, "expected true or false, got '" + std::string(v) + "'");
                }
            },
            [=](const RunConfig& c) { return std::string((c.*sec).*mem ? "true" : "false"); }};
}

template <class S>
Field choice(std::string_view key, S RunConfig::*sec, std::string S::*mem, std::vector<std::string_view> allowed) {
    return {key,
            [=](RunConfig& c, std::string_view v, std::size_t line, std::string_view where) {
                if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
                    std::string options;
                    for (auto a : allowed) options += (options.empty() ? "" : ", ") + std::string(a);
                    bad_value(line, where, "expected one of " + options + ", got '" + std::string(v) + "'");
                }
                (c.*sec).*mem = std::string(v);
            },
            [=](const RunConfig& c) { return (c.*sec).*mem; }};
}

template <class S>
Field list(std::string_view key, S RunConfig::*sec, std::vector<double> S::*mem, bool required) {
    return {key,
            [=](RunConfig& c, std::string_view v, std::size_t line, std::string_view where) {
                std::vector<double> out;
                while (true) {
                    const auto comma = v.find(',');
                    const auto item = trim(v.substr(0, comma));
                    if (item.empty()) bad_value(line, where, "empty list entry");
                    out.push_back(read_double(item, line, where));
                    if (comma == std::string_view::npos) break;
                    v.remove_prefix(comma + 1);
                }
                (c.*sec).*mem = std::move(out);
            },
            [=](const RunConfig& c) {
                std::string s;
                for (double x : (c.*sec).*mem) s += (s.empty() ? "" : ", ") + format_number(x);
                return s;
            },
            required};
}

const std::vector<Section>& schema() {
    using C = Check;
    static const std::vector<Section> sections = {
        {"run",
         {choice("engine", &RunConfig::run, &RunSection::engine, {"two-level", "six-level"}),
          count("atoms", &RunConfig::run, &RunSection::atoms, 1),
          count("seed", &RunConfig::run, &RunSection::seed, 0),
          count("threads", &RunConfig::run, &RunSection::threads, 0),
          flag("strict", &RunConfig::run, &RunSection::strict),
          flag("trajectories", &RunConfig::run, &RunSection::trajectories),
          count("record_stride", &RunConfig::run, &RunSection::record_stride, 0),
          count("step_cap", &RunConfig::run, &RunSection::step_cap, 1),
          number("gravity", &RunConfig::run, &RunSection::gravity),
          number("probe_offset", &RunConfig::run, &RunSection::probe_offset, C::nonnegative),
          flag("exclude_step_cap", &RunConfig::run, &RunSection::exclude_step_cap)}},
        {"source",
         {number("hole_diameter", &RunConfig::source, &SourceSection::hole_diameter, C::positive),
          number("mot_to_hole", &RunConfig::source, &SourceSection::mot_to_hole, C::positive),
          number("mean_speed", &RunConfig::source, &SourceSection::mean_speed, C::positive),
          number("speed_fwhm", &RunConfig::source, &SourceSection::speed_fwhm, C::positive),
          number("polar_angle", &RunConfig::source, &SourceSection::polar_angle, C::degrees_polar),
          number("azimuthal_angle", &RunConfig::source, &SourceSection::azimuthal_angle),
          number("hole_x", &RunConfig::source, &SourceSection::hole_x),
          number("hole_y", &RunConfig::source, &SourceSection::hole_y),
          number("hole_z", &RunConfig::source, &SourceSection::hole_z)}},
        {"molasses",
         {number("center_x", &RunConfig::molasses, &MolassesSection::center_x),
          number("center_y", &RunConfig::molasses, &MolassesSection::center_y),
          number("center_z", &RunConfig::molasses, &MolassesSection::center_z),
          number("waist", &RunConfig::molasses, &MolassesSection::waist, C::positive),
          number("saturation", &RunConfig::molasses, &MolassesSection::saturation, C::nonnegative),
          number("detuning_gamma", &RunConfig::molasses, &MolassesSection::detuning_gamma)}},
        {"lens",
         {number("focus_waist", &RunConfig::lens, &LensSection::focus_waist, C::positive),
          number("center_spot", &RunConfig::lens, &LensSection::center_spot, C::positive),
          number("saturation", &RunConfig::lens, &LensSection::saturation, C::nonnegative),
          number("detuning_gamma", &RunConfig::lens, &LensSection::detuning_gamma),
          number("center_x", &RunConfig::lens, &LensSection::center_x),
          number("center_y", &RunConfig::lens, &LensSection::center_y),
          number("center_z", &RunConfig::lens, &LensSection::center_z),
          flag("two_dimensional", &RunConfig::lens, &LensSection::two_dimensional),
          number("probe_start", &RunConfig::lens, &LensSection::probe_start),
          number("probe_stop", &RunConfig::lens, &LensSection::probe_stop),
          number("probe_step", &RunConfig::lens, &LensSection::probe_step, C::positive),
          number("focus_margin", &RunConfig::lens, &LensSection::focus_margin, C::nonnegative),
          number("map_min", &RunConfig::lens, &LensSection::map_min),
          number("map_max", &RunConfig::lens, &LensSection::map_max),
          number("map_step", &RunConfig::lens, &LensSection::map_step, C::positive)}},
        {"cavity",
         {number("waist", &RunConfig::cavity, &CavitySection::waist, C::positive),
          number("gap", &RunConfig::cavity, &CavitySection::gap, C::positive),
          number("center_x", &RunConfig::cavity, &CavitySection::center_x),
          number("center_y", &RunConfig::cavity, &CavitySection::center_y),
          number("center_z", &RunConfig::cavity, &CavitySection::center_z),
          number("axis_x", &RunConfig::cavity, &CavitySection::axis_x),
          number("axis_y", &RunConfig::cavity, &CavitySection::axis_y),
          number("axis_z", &RunConfig::cavity, &CavitySection::axis_z)}},
        {"chamber",
         {number("half_width", &RunConfig::chamber, &ChamberSection::half_width, C::positive),
          number("z_min", &RunConfig::chamber, &ChamberSection::z_min),
          number("z_max", &RunConfig::chamber, &ChamberSection::z_max)}},
        {"sweep",
         {choice("parameter", &RunConfig::sweep, &SweepSection::parameter, {"detuning", "s0", "waist", "z_cav"}),
          list("values", &RunConfig::sweep, &SweepSection::values, true),
          count("atoms_per_point", &RunConfig::sweep, &SweepSection::atoms_per_point, 1)}},
        {"finesse",
         {number("t1_ppm", &RunConfig::finesse, &FinesseSection::t1_ppm, C::ppm, true),
          number("t2_ppm", &RunConfig::finesse, &FinesseSection::t2_ppm, C::ppm, true),
          number("loss1_ppm", &RunConfig::finesse, &FinesseSection::loss1_ppm, C::ppm),
          number("loss2_ppm", &RunConfig::finesse, &FinesseSection::loss2_ppm, C::ppm)}},
        {"constants",
         {number("wavelength", &RunConfig::constants, &ConstantsSection::wavelength, C::positive),
          number("linewidth_hz", &RunConfig::constants, &ConstantsSection::linewidth_hz, C::positive),
          number("mass", &RunConfig::constants, &ConstantsSection::mass, C::positive)}},
    };
    return sections;
}

const Section* find_section(std::string_view name) {
    for (const auto& s : schema()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::string join_sections(const std::vector<std::string>& names) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "[" : ", [") + n + "]";
    return out;
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> out;
    if (!(hi >= lo) || !(step > 0.0)) return out;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
}

Engine parse_engine(const std::string& name) { return name == "six-level" ? Engine::six_level : Engine::two_level; }

LensConfig make_lens_config(const RunConfig& cfg, const PhysicalConstants& c) {
    LensConfig lens;
    lens.focus_waist = cfg.lens.focus_waist;
    lens.center_spot = cfg.lens.center_spot;
    lens.saturation = cfg.lens.saturation;
    lens.detuning = cfg.lens.detuning_gamma * c.linewidth;
    lens.center = {cfg.lens.center_x, cfg.lens.center_y, cfg.lens.center_z};
    lens.two_dimensional = cfg.lens.two_dimensional;
    return lens;
}

void check_consistency(const RunConfig& cfg) {
    try {
        switch (cfg.mode) {
            case Mode::finesse: {
                const auto& f = cfg.finesse;
                (void)finesse(f.t1_ppm * 1e-6, f.t2_ppm * 1e-6, f.loss1_ppm * 1e-6, f.loss2_ppm * 1e-6);
                return;
            }
            case Mode::sweep: make_sweep(cfg).validate(); return;
            case Mode::lens: {
                const LensSimulation sim = make_lens(cfg);
                sim.lens.validate();
                sim.base.validate();
                if (sim.probe_z.size() < 3) throw std::invalid_argument("[lens] probe grid needs at least three planes");
                if (!(cfg.lens.map_max >= cfg.lens.map_min)) throw std::invalid_argument("[lens] map_max must be >= map_min");
                const double p = focus_offset(sim.lens, sim.base.constants.wavelength);
                if (std::max(std::abs(cfg.lens.map_min), std::abs(cfg.lens.map_max)) >= p) {
                    throw std::invalid_argument("[lens] imbalance map extends past the foci at +/-" + format_number(p) + " m");
                }
                return;
            }
            default: make_simulation(cfg).validate(); return;
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, std::string("inconsistent configuration: ") + e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(0, std::string("inconsistent configuration: ") + e.what());
    }
}

}  // namespace

Mode parse_mode(std::string_view name) {
    if (name == "beam") return Mode::beam;
    if (name == "deflect") return Mode::deflect;
    if (name == "sweep") return Mode::sweep;
    if (name == "lens") return Mode::lens;
    if (name == "finesse") return Mode::finesse;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

const char* to_string(Mode mode) noexcept {
    switch (mode) {
        case Mode::beam: return "beam";
        case Mode::deflect: return "deflect";
        case Mode::sweep: return "sweep";
        case Mode::lens: return "lens";
        case Mode::finesse: return "finesse";
    }
    return "unknown";
}

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::vector<std::string> required_sections(Mode mode, const RunConfig& cfg) {
    switch (mode) {
        case Mode::beam: return {"run", "source", "cavity", "chamber"};
        case Mode::deflect: return {"run", "source", "molasses", "cavity", "chamber"};
        case Mode::sweep:
            if (cfg.sweep.parameter == "z_cav") return {"run", "source", "cavity", "chamber", "sweep"};
            return {"run", "source", "molasses", "cavity", "chamber", "sweep"};
        case Mode::lens: return {"run", "source", "lens", "chamber"};
        case Mode::finesse: return {"finesse"};
    }
    return {};
}

std::vector<std::string> allowed_sections(Mode mode) {
    switch (mode) {
        case Mode::beam: return {"run", "source", "cavity", "chamber", "constants"};
        case Mode::deflect: return {"run", "source", "molasses", "cavity", "chamber", "constants"};
        case Mode::sweep: return {"run", "source", "molasses", "cavity", "chamber", "sweep", "constants"};
        case Mode::lens: return {"run", "source", "lens", "chamber", "constants"};
        case Mode::finesse: return {"finesse"};
    }
    return {};
}

RunConfig parse_config(std::string_view text, Mode mode) {
    RunConfig cfg;
    cfg.mode = mode;
    const auto allowed = allowed_sections(mode);
    const Section* current = nullptr;
    std::map<std::string, std::set<std::string, std::less<>>> seen;

    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        line = trim(line.substr(0, line.find_first_of("#;")));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "malformed section header '" + std::string(line) + "'");
            const std::string name(trim(line.substr(1, line.size() - 2)));
            current = find_section(name);
            if (!current) throw ConfigError(line_no, "unknown section [" + name + "]");
            if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
                throw ConfigError(line_no, "section [" + name + "] is not used by the " + to_string(mode) + " mode");
            }
            if (!cfg.sections.insert(name).second) throw ConfigError(line_no, "duplicate section [" + name + "]");
            seen[name];
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
        if (!current) throw ConfigError(line_no, "key outside of any section");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        const std::string where = "[" + std::string(current->name) + "] " + key;

        const auto field = std::find_if(current->fields.begin(), current->fields.end(),
                                        [&](const Field& f) { return f.key == key; });
        if (field == current->fields.end()) {
            throw ConfigError(line_no, "unknown key '" + key + "' in [" + std::string(current->name) + "]");
        }
        if (value.empty()) throw ConfigError(line_no, where + ": missing value");
        if (!seen[std::string(current->name)].insert(key).second) throw ConfigError(line_no, "duplicate key " + where);
        field->set(cfg, value, line_no, where);
    }

    std::vector<std::string> missing;
    for (const auto& name : required_sections(mode, cfg)) {
        if (!cfg.has(name)) missing.push_back(name);
    }
    if (!missing.empty()) throw ConfigError(0, "missing sections: " + join_sections(missing));

    for (const auto& name : cfg.sections) {
        for (const auto& f : find_section(name)->fields) {
            if (f.required && !seen[name].contains(f.key)) {
                throw ConfigError(0, "missing required key '" + std::string(f.key) + "' in [" + name + "]");
            }
        }
    }

    check_consistency(cfg);
    return cfg;
}

std::string to_ini(const RunConfig& cfg) {
    std::ostringstream out;
    bool first = true;
    for (const auto& section : schema()) {
        if (!cfg.has(section.name)) continue;
        if (!first) out << '\n';
        first = false;
        out << '[' << section.name << "]\n";
        for (const auto& f : section.fields) out << f.key << " = " << f.get(cfg) << '\n';
    }
    return out.str();
}

PhysicalConstants make_constants(const RunConfig& cfg) {
    PhysicalConstants c;
    c.wavelength = cfg.constants.wavelength;
    c.linewidth = 2.0 * std::numbers::pi * cfg.constants.linewidth_hz;
    c.mass = cfg.constants.mass;
    return c;
}

BeamSimulation make_simulation(const RunConfig& cfg) {
    constexpr double deg = std::numbers::pi / 180.0;
    BeamSimulation sim;
    sim.constants = make_constants(cfg);

    const auto& s = cfg.source;
    sim.source.hole_diameter = s.hole_diameter;
    sim.source.mot_to_hole = s.mot_to_hole;
    sim.source.mean_speed = s.mean_speed;
    sim.source.speed_fwhm = s.speed_fwhm;
    sim.source.polar_angle = s.polar_angle * deg;
    sim.source.azimuthal_angle = s.azimuthal_angle * deg;
    sim.source.hole_center = {s.hole_x, s.hole_y, s.hole_z};

    if (cfg.has("molasses")) {
        MolassesParams m;
        m.center = {cfg.molasses.center_x, cfg.molasses.center_y, cfg.molasses.center_z};
        m.waist = cfg.molasses.waist;
        m.saturation = cfg.molasses.saturation;
        m.detuning = cfg.molasses.detuning_gamma * sim.constants.linewidth;
        sim.light = make_molasses(m);
    }

    if (cfg.has("cavity")) {
        const auto& c = cfg.cavity;
        CavityGeometry cav;
        cav.waist = c.waist;
        cav.gap = c.gap;
        cav.center = {c.center_x, c.center_y, c.center_z};
        const Vec3 axis{c.axis_x, c.axis_y, c.axis_z};
        if (std::abs(axis.norm() - 1.0) > 1e-9) throw std::invalid_argument("[cavity] axis must be a unit vector");
        cav.axis = axis.normalized();
        sim.cavity = cav;
    }

    sim.chamber = {cfg.chamber.half_width, cfg.chamber.z_min, cfg.chamber.z_max};

    const auto& r = cfg.run;
    sim.engine = parse_engine(r.engine);
    sim.weights = TransitionWeights::standard();
    sim.evolve.step_cap = r.step_cap;
    sim.evolve.record_stride = r.record_stride;
    sim.evolve.acceleration = {0.0, 0.0, r.gravity};
    sim.atoms = r.atoms;
    sim.seed = r.seed;
    sim.threads = r.threads ? static_cast<unsigned>(r.threads) : std::max(1u, std::thread::hardware_concurrency());
    sim.probe_offset = r.probe_offset;
    sim.keep_trajectories = r.trajectories;
    sim.exclude_step_cap = r.exclude_step_cap;
    sim.strict = r.strict;
    return sim;
}

SweepSpec make_sweep(const RunConfig& cfg) {
    SweepSpec spec;
    spec.parameter = parse_sweep_parameter(cfg.sweep.parameter);
    spec.values = cfg.sweep.values;
    spec.atoms_per_point = cfg.sweep.atoms_per_point;
    spec.base = make_simulation(cfg);
    return spec;
}

LensSimulation make_lens(const RunConfig& cfg) {
    LensSimulation sim;
    sim.base = make_simulation(cfg);
    sim.lens = make_lens_config(cfg, sim.base.constants);
    sim.probe_z = grid(cfg.lens.probe_start, cfg.lens.probe_stop, cfg.lens.probe_step);
    sim.focus_margin = cfg.lens.focus_margin;
    return sim;
}

std::vector<double> imbalance_offsets(const RunConfig& cfg) {
    return grid(cfg.lens.map_min, cfg.lens.map_max, cfg.lens.map_step);
}

}  // namespace lvis::app
