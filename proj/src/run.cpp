#include "fdjc/run.hpp"
#include "fdjc/errors.hpp"
#include "fdjc/output.hpp"

#include <filesystem>

namespace fdjc {

ObservableSeries series_for(const std::string& name, const AmplitudeTrajectory& traj) {
    const ModelParams& mp = traj.params;
    if (name == "W") return population_inversion(traj);
    if (name == "sx") return dipole_expectations(traj, mp.omega).first;
    if (name == "sy") return dipole_expectations(traj, mp.omega).second;
    if (name == "Fx") return dipole_squeezing(traj, mp.omega).first;
    if (name == "Fy") return dipole_squeezing(traj, mp.omega).second;
    if (name == "dp") return momentum_diffusion(traj);
    if (name == "g2") return g2(traj);
    if (name == "S1") return quadrature_squeezing(traj, mp.nu).first;
    if (name == "S2") return quadrature_squeezing(traj, mp.nu).second;
    throw ConfigError(ConfigError::Kind::Parse, "unknown observable '" + name + "'");
}

void run(const ResolvedRun& rr, const std::string& out_dir, int threads) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    EvolveOptions opts;
    opts.threads = threads;

    AmplitudeTrajectory primary;
    AmplitudeTrajectory oracle;
    bool have_oracle = false;

    if (rr.mode == RunMode::Oracle) {
        opts.mode = EvolveMode::Oracle;
        primary = evolve_state(rr.params, opts);
    } else {
        opts.mode = EvolveMode::ClosedForm;
        primary = evolve_state(rr.params, opts);
        if (rr.mode == RunMode::Both) {
            opts.mode = EvolveMode::Oracle;
            oracle = evolve_state(rr.params, opts);
            have_oracle = true;
        }
    }

    for (const auto& name : rr.outputs) {
        ObservableSeries s = series_for(name, primary);
        if (have_oracle) {
            ObservableSeries so = series_for(name, oracle);
            write_csv((fs::path(out_dir) / (name + ".csv")).string(), s, &so);
        } else {
            write_csv((fs::path(out_dir) / (name + ".csv")).string(), s);
        }
        write_svg((fs::path(out_dir) / (name + ".svg")).string(), s);
    }
    write_manifest((fs::path(out_dir) / "manifest.cfg").string(), to_key_values(rr),
                   rr.preset_label);
}

void run_sweep(const RunConfig& cfg, const std::string& out_dir, int threads) {
    namespace fs = std::filesystem;
    if (!cfg.sweep_key || cfg.sweep_values.empty())
        throw ConfigError(ConfigError::Kind::MissingKey,
                          "sweep requires sweep_key and sweep_values");
    for (const auto& value : cfg.sweep_values) {
        RunConfig sub = cfg;
        sub.sweep_key.reset();
        sub.sweep_values.clear();
        sub.overrides[*cfg.sweep_key] = value;
        ResolvedRun rr = resolve(sub);
        fs::path dir = fs::path(out_dir) / (*cfg.sweep_key + "=" + value);
        run(rr, dir.string(), threads);
    }
}

} // namespace fdjc
