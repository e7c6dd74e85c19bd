#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "presets.hpp"
#include "runner.hpp"

using namespace lvis;
using namespace lvis::app;

namespace {

RunConfig preset(std::string_view name, Mode mode) { return parse_config(find_preset(name)->text, mode); }

std::string error_of(std::string_view text, Mode mode) {
    try {
        (void)parse_config(text, mode);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("lvis_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::string summary_of(const std::vector<RunOutput>& outputs) {
    for (const auto& o : outputs) {
        if (o.name == "summary.json") return o.content;
    }
    return {};
}

constexpr const char* kMinimalBeam = R"(
[run]
atoms = 50
[source]
[cavity]
[chamber]
)";

}  // namespace

TEST(Presets, AllParseInTheirMode) {
    EXPECT_NO_THROW(preset("current_setup", Mode::beam));
    EXPECT_NO_THROW(preset("small_cavity", Mode::beam));
    EXPECT_NO_THROW(preset("deflection", Mode::deflect));
    EXPECT_NO_THROW(preset("sweep", Mode::sweep));
    EXPECT_NO_THROW(preset("lens", Mode::lens));
    EXPECT_NO_THROW(preset("finesse", Mode::finesse));
    EXPECT_TRUE(find_preset("beam").has_value());
    EXPECT_TRUE(find_preset("deflect").has_value());
    EXPECT_FALSE(find_preset("nope").has_value());
    for (Mode m : {Mode::beam, Mode::deflect, Mode::sweep, Mode::lens, Mode::finesse}) {
        EXPECT_TRUE(find_preset(default_preset(m)).has_value());
    }
}

TEST(Presets, CurrentSetupGeometry) {
    const auto sim = make_simulation(preset("current_setup", Mode::beam));
    EXPECT_DOUBLE_EQ(sim.source.hole_diameter, 1.5e-3);
    EXPECT_DOUBLE_EQ(sim.source.mean_speed, 14.0);
    EXPECT_DOUBLE_EQ(sim.source.speed_fwhm, 2.7);
    EXPECT_DOUBLE_EQ(sim.cavity->waist, 56e-6);
    EXPECT_DOUBLE_EQ(sim.cavity->gap, 2.2e-3);
    EXPECT_DOUBLE_EQ(sim.cavity->center.z, 0.04);
    EXPECT_FALSE(sim.light.has_value());
    EXPECT_EQ(sim.atoms, 10000u);
}

TEST(Presets, SmallCavity) {
    const auto sim = make_simulation(preset("small_cavity", Mode::beam));
    EXPECT_NEAR(sim.cavity->waist, 56e-6 / std::sqrt(2.0), 1e-18);
}

TEST(Presets, DeflectionParameters) {
    const auto sim = make_simulation(preset("deflection", Mode::deflect));
    EXPECT_NEAR(sim.source.polar_angle, 30.0 * std::numbers::pi / 180.0, 1e-15);
    EXPECT_NEAR(sim.source.azimuthal_angle, 45.0 * std::numbers::pi / 180.0, 1e-15);
    EXPECT_DOUBLE_EQ(sim.source.hole_diameter, 1e-3);
    ASSERT_TRUE(sim.light.has_value());
    for (const auto& b : sim.light->beams) {
        EXPECT_DOUBLE_EQ(b.waist, 7.5e-3);
        EXPECT_DOUBLE_EQ(b.saturation, 3.0);
        EXPECT_DOUBLE_EQ(b.detuning / sim.constants.linewidth, -0.5);
    }
    EXPECT_DOUBLE_EQ(sim.cavity->center.z, 0.01);
    // The hole lies on the launch axis through the molasses centre.
    const Vec3 h = sim.source.hole_center;
    EXPECT_NEAR((h.normalized() + sim.source.axis()).norm(), 0.0, 1e-12);
}

TEST(Presets, SweepGrid) {
    const auto spec = make_sweep(preset("sweep", Mode::sweep));
    EXPECT_EQ(spec.parameter, SweepParameter::detuning);
    EXPECT_EQ(spec.values, (std::vector<double>{-2.0, -1.5, -1.0, -0.75, -0.5, -0.25, -0.1}));
    EXPECT_EQ(spec.atoms_per_point, 2000u);
}

TEST(Presets, Lens) {
    const auto cfg = preset("lens", Mode::lens);
    const auto sim = make_lens(cfg);
    EXPECT_DOUBLE_EQ(sim.lens.focus_waist, 0.5e-6);
    EXPECT_DOUBLE_EQ(sim.lens.center_spot, 5e-3);
    EXPECT_DOUBLE_EQ(sim.lens.saturation, 3.0);
    EXPECT_EQ(sim.probe_z.size(), 41u);
    EXPECT_NEAR(sim.probe_z.back(), 0.256, 1e-12);
    EXPECT_EQ(imbalance_offsets(cfg).size(), 41u);
}

TEST(ParseConfig, EmptyFileListsMissingSections) {
    const auto msg = error_of("", Mode::beam);
    EXPECT_NE(msg.find("missing sections"), std::string::npos);
    for (const char* s : {"[run]", "[source]", "[cavity]", "[chamber]"}) EXPECT_NE(msg.find(s), std::string::npos) << s;
    EXPECT_NE(error_of("", Mode::deflect).find("[molasses]"), std::string::npos);
    EXPECT_NE(error_of("# nothing here\n", Mode::finesse).find("[finesse]"), std::string::npos);
}

TEST(ParseConfig, DefaultsFillOmittedKeys) {
    const auto cfg = parse_config(kMinimalBeam, Mode::beam);
    EXPECT_EQ(cfg.run.atoms, 50u);
    EXPECT_DOUBLE_EQ(cfg.source.hole_diameter, 1.5e-3);
    EXPECT_DOUBLE_EQ(cfg.cavity.waist, 56e-6);
}

TEST(ParseConfig, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_of("[run]\n\n[source]\nbogus = 1\n", Mode::beam), "line 4: unknown key 'bogus' in [source]");
    EXPECT_NE(error_of("[run]\n[sauce]\n", Mode::beam).find("line 2: unknown section [sauce]"), std::string::npos);
    EXPECT_NE(error_of("[run]\natoms = 1\natoms = 2\n", Mode::beam).find("line 3: duplicate key"), std::string::npos);
    EXPECT_NE(error_of("[run]\n[run]\n", Mode::beam).find("line 2: duplicate section"), std::string::npos);
    EXPECT_NE(error_of("atoms = 1\n", Mode::beam).find("line 1: key outside"), std::string::npos);
    EXPECT_NE(error_of("[run]\njunk\n", Mode::beam).find("line 2: expected 'key = value'"), std::string::npos);
    EXPECT_NE(error_of("[run]\natoms =\n", Mode::beam).find("line 2: [run] atoms: missing value"), std::string::npos);
}

TEST(ParseConfig, UnitViolations) {
    EXPECT_NE(error_of("[source]\nhole_diameter = 1.5 mm\n", Mode::beam).find("line 2: [source] hole_diameter: expected a plain number in SI units"),
              std::string::npos);
    EXPECT_NE(error_of("[source]\nhole_diameter = -1e-3\n", Mode::beam).find("must be positive"), std::string::npos);
    EXPECT_NE(error_of("[source]\npolar_angle = 95\n", Mode::beam).find("[0, 90) degrees"), std::string::npos);
    EXPECT_NE(error_of("[run]\natoms = 1.5\n", Mode::beam).find("non-negative integer"), std::string::npos);
    EXPECT_NE(error_of("[run]\nstrict = maybe\n", Mode::beam).find("true or false"), std::string::npos);
    EXPECT_NE(error_of("[run]\nengine = nine-level\n", Mode::beam).find("two-level, six-level"), std::string::npos);
}

TEST(ParseConfig, InconsistentSections) {
    EXPECT_NE(error_of("[run]\n[source]\n[cavity]\n[chamber]\n[molasses]\n", Mode::beam).find("not used by the beam mode"),
              std::string::npos);
    // Cavity outside the chamber.
    const auto msg = error_of("[run]\n[source]\n[cavity]\ncenter_z = 0.2\n[chamber]\n", Mode::beam);
    EXPECT_NE(msg.find("inconsistent configuration"), std::string::npos);
    EXPECT_NE(error_of("[run]\n[source]\n[cavity]\naxis_x = 2\n[chamber]\n", Mode::beam).find("unit vector"),
              std::string::npos);
    EXPECT_NE(error_of("[finesse]\nt1_ppm = 8\n", Mode::finesse).find("missing required key 't2_ppm'"),
              std::string::npos);
    EXPECT_NE(error_of(std::string(find_preset("lens")->text) + "", Mode::lens), "x");
    std::string lens(find_preset("lens")->text);
    lens.replace(lens.find("map_max = 2e-3"), 14, "map_max = 2e-2");
    EXPECT_NE(error_of(lens, Mode::lens).find("past the foci"), std::string::npos);
}

TEST(ParseConfig, SweepValues) {
    const auto text = std::string(find_preset("deflection")->text) + "\n[sweep]\nvalues = -1, ,2\n";
    EXPECT_NE(error_of(text, Mode::sweep).find("empty list entry"), std::string::npos);
    const auto missing = std::string(find_preset("deflection")->text) + "\n[sweep]\nparameter = s0\n";
    EXPECT_NE(error_of(missing, Mode::sweep).find("missing required key 'values'"), std::string::npos);
    const auto no_light = "[run]\n[source]\n[cavity]\n[chamber]\n[sweep]\nparameter = z_cav\nvalues = 0.03, 0.04\n";
    EXPECT_NO_THROW((void)parse_config(no_light, Mode::sweep));
}

TEST(ParseConfig, CommentsAndWhitespace) {
    const auto cfg = parse_config("  [run]  \n\tatoms = 7   # seven\n; full comment\n[source]\n[cavity]\n[chamber]\r\n",
                                  Mode::beam);
    EXPECT_EQ(cfg.run.atoms, 7u);
}

TEST(ToIni, RoundTripIsIdempotent) {
    for (auto [name, mode] : {std::pair{"current_setup", Mode::beam}, std::pair{"deflection", Mode::deflect},
                              std::pair{"sweep", Mode::sweep}, std::pair{"lens", Mode::lens},
                              std::pair{"finesse", Mode::finesse}}) {
        const auto cfg = preset(name, mode);
        const auto text = to_ini(cfg);
        EXPECT_EQ(to_ini(parse_config(text, mode)), text) << name;
    }
}

TEST(ToIni, WritesEveryKey) {
    const auto text = to_ini(parse_config(kMinimalBeam, Mode::beam));
    for (const char* key : {"engine = two-level", "seed = 1", "mot_to_hole = 0.07", "gap = 0.0022", "z_max = 0.06"}) {
        EXPECT_NE(text.find(key), std::string::npos) << key;
    }
    EXPECT_EQ(text.find("[molasses]"), std::string::npos);
}

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(56e-6), "5.6e-05");
    const double x = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(Runner, SummaryIsDeterministicAcrossThreads) {
    auto cfg = preset("deflection", Mode::deflect);
    cfg.run.atoms = 40;
    std::ostringstream log;
    cfg.run.threads = 1;
    const auto a = summary_of(execute(cfg, log));
    cfg.run.threads = 8;
    const auto b = summary_of(execute(cfg, log));
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, b);
}

TEST(Runner, WritesArtifactsAndManifestReruns) {
    auto cfg = parse_config(kMinimalBeam, Mode::beam);
    cfg.run.trajectories = true;
    const auto dir = scratch_dir("rerun");
    std::ostringstream log, err;
    ASSERT_EQ(run(cfg, dir, log, err), ok) << err.str();
    for (const char* f : {"manifest.json", "summary.json", "trajectories.csv"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
        EXPECT_FALSE(std::filesystem::exists(dir / (std::string(f) + ".partial"))) << f;
    }
    std::ifstream mf(dir / "manifest.json");
    std::stringstream manifest;
    manifest << mf.rdbuf();
    const auto again = parse_config(config_from_manifest(manifest.str()), Mode::beam);
    EXPECT_EQ(to_ini(again), to_ini(cfg));

    const auto dir2 = scratch_dir("rerun2");
    ASSERT_EQ(run(again, dir2, log, err), ok);
    const auto read = [](const std::filesystem::path& p) {
        std::ifstream in(p);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    };
    EXPECT_EQ(read(dir / "summary.json"), read(dir2 / "summary.json"));
    EXPECT_EQ(read(dir / "trajectories.csv"), read(dir2 / "trajectories.csv"));
    const auto csv = read(dir / "trajectories.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "atom_id,t,x,y,z,vx,vy,vz");
}

TEST(Runner, StrictStepCapFailsWithoutOutputs) {
    auto cfg = preset("deflection", Mode::deflect);
    cfg.run.atoms = 3;
    cfg.run.step_cap = 10;
    cfg.run.strict = true;
    const auto dir = scratch_dir("strict");
    std::ostringstream log, err;
    EXPECT_EQ(run(cfg, dir, log, err), step_cap_error);
    EXPECT_NE(err.str().find("step cap"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(dir / "summary.json"));

    cfg.run.strict = false;
    EXPECT_EQ(run(cfg, dir, log, err), ok);
    EXPECT_NE(log.str().find("hit the step cap"), std::string::npos);
}

TEST(Runner, UnwritableOutput) {
    const auto blocker = scratch_dir("blocker");
    std::ofstream(blocker) << "file, not a directory";
    std::ostringstream log, err;
    EXPECT_EQ(run(parse_config(kMinimalBeam, Mode::beam), blocker / "out", log, err), io_error);
    std::filesystem::remove(blocker);
}

TEST(Runner, SweepAndLensOutputs) {
    auto sweep = preset("sweep", Mode::sweep);
    sweep.sweep.values = {-0.5, -1.0};
    sweep.sweep.atoms_per_point = 5;
    std::ostringstream log;
    const auto out = execute(sweep, log);
    const auto csv = std::find_if(out.begin(), out.end(), [](const RunOutput& o) { return o.name == "sweep.csv"; });
    ASSERT_NE(csv, out.end());
    EXPECT_EQ(csv->content.substr(0, csv->content.find('\n')),
              "param_value,mean_polar_angle_rad,stderr,v_rms,T_K,coupling_fraction");
    EXPECT_EQ(std::count(csv->content.begin(), csv->content.end(), '\n'), 3);

    auto lens = preset("lens", Mode::lens);
    lens.run.atoms = 20;
    const auto lout = execute(lens, log);
    std::vector<std::string> names;
    for (const auto& o : lout) names.push_back(o.name);
    EXPECT_EQ(names, (std::vector<std::string>{"manifest.json", "summary.json", "imbalance.csv", "focus.csv"}));
}

TEST(Runner, FinesseSummary) {
    std::ostringstream log;
    const auto s = summary_of(execute(preset("finesse", Mode::finesse), log));
    EXPECT_NE(s.find("\"finesse\": 20599.19713176615"), std::string::npos) << s;
}
