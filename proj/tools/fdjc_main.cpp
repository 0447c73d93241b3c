// Command-line driver: figure-preset simulations, parameter sweeps and the
// algebra verification table.

#include "fdjc/errors.hpp"
#include "fdjc/fock_algebra.hpp"
#include "fdjc/output.hpp"
#include "fdjc/run.hpp"
#include "fdjc/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

namespace {

using nlohmann::json;

void print_error_record(const std::string& type, const std::string& message) {
    json rec = {{"error", {{"type", type}, {"message", message}}}};
    std::cerr << rec.dump() << "\n";
}

int do_run(const std::string& config_path, const std::string& preset_name,
           const std::string& out_dir, const std::string& mode, int threads, bool sweep) {
    fdjc::RunConfig cfg;
    if (!config_path.empty()) cfg = fdjc::load_config(config_path);
    if (!preset_name.empty()) cfg.preset = preset_name;
    if (!mode.empty()) {
        if (mode == "closed_form") cfg.mode = fdjc::RunMode::ClosedForm;
        else if (mode == "oracle") cfg.mode = fdjc::RunMode::Oracle;
        else if (mode == "both") cfg.mode = fdjc::RunMode::Both;
        else throw fdjc::ConfigError(fdjc::ConfigError::Kind::Parse,
                                     "mode must be closed_form|oracle|both");
    }
    std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    if (sweep) {
        fdjc::run_sweep(cfg, dir, threads);
    } else {
        fdjc::ResolvedRun rr = fdjc::resolve(cfg);
        fdjc::run(rr, dir, threads);
    }
    return 0;
}

int do_verify(int dim) {
    struct Row {
        std::string name;
        double residual;
        double threshold;
    };
    std::vector<Row> rows;
    auto add = [&](const std::string& name, double r, double thr) {
        rows.push_back({name, r, thr});
    };

    fdjc::DeformationSpec identity = fdjc::DeformationSpec::identity();
    fdjc::DeformationSpec qspec = fdjc::DeformationSpec::q_type(1.04);
    fdjc::DeformationSpec kerr = fdjc::DeformationSpec::kerr(0.1);

    add("commutators identity", fdjc::verify_deformed_commutator(identity, dim), 1e-10);
    add("commutators q=1.04", fdjc::verify_deformed_commutator(qspec, dim), 1e-10);
    add("commutators kerr k=0.1", fdjc::verify_deformed_commutator(kerr, dim), 1e-10);
    add("su(2) identity", fdjc::verify_su2_deformed(identity, dim), 1e-10);
    add("su(2) q=1.04", fdjc::verify_su2_deformed(qspec, dim), 1e-10);
    add("su(2) kerr k=0.1", fdjc::verify_su2_deformed(kerr, dim), 1e-10);
    add("excitation number identity", fdjc::constant_of_motion_residual(identity, dim), 1e-12);
    add("excitation number q=1.04", fdjc::constant_of_motion_residual(qspec, dim), 1e-12);

    bool ok = true;
    std::printf("%-30s %-14s %-10s %s\n", "check", "residual", "threshold", "status");
    for (const auto& r : rows) {
        bool pass = r.residual <= r.threshold;
        ok = ok && pass;
        std::printf("%-30s %-14.3e %-10.1e %s\n", r.name.c_str(), r.residual, r.threshold,
                    pass ? "PASS" : "FAIL");
    }
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("fdjc ") + fdjc::kVersion +
                 " - deformed atom-field dynamics with gravitational detuning"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_dir, mode;
    int threads = 0;

    auto* run_cmd = app.add_subcommand("run", "run one simulation");
    run_cmd->add_option("--config", config_path, "config file (key = value)");
    run_cmd->add_option("--preset", preset_name, "figure preset name (fig1a..fig5c)");
    run_cmd->add_option("--out", out_dir, "output directory");
    run_cmd->add_option("--mode", mode, "closed_form|oracle|both");
    run_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep config (sweep_key/sweep_values)");
    sweep_cmd->add_option("--config", config_path, "config file")->required();
    sweep_cmd->add_option("--out", out_dir, "output directory");
    sweep_cmd->add_option("--threads", threads, "worker threads (0 = auto)");

    auto* list_cmd = app.add_subcommand("preset-list", "list figure presets");

    int dim = 20;
    auto* verify_cmd = app.add_subcommand("verify", "run the operator-algebra residual checks");
    verify_cmd->add_option("--dim", dim, "Fock truncation dimension");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed()) {
            if (config_path.empty() && preset_name.empty())
                throw fdjc::ConfigError(fdjc::ConfigError::Kind::MissingKey,
                                        "run needs --config and/or --preset");
            return do_run(config_path, preset_name, out_dir, mode, threads, false);
        }
        if (sweep_cmd->parsed()) return do_run(config_path, "", out_dir, mode, threads, true);
        if (list_cmd->parsed()) {
            for (const auto& name : fdjc::preset_names()) {
                fdjc::ModelParams mp = fdjc::preset(name);
                std::printf("%-6s kg=%-10.3g default_output=%s\n", name.c_str(), mp.kg,
                            fdjc::preset_default_output(name).c_str());
            }
            return 0;
        }
        if (verify_cmd->parsed()) return do_verify(dim);
    } catch (const fdjc::ConfigError& e) {
        print_error_record("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error_record("numerical", e.what());
        return 3;
    }
    return 0;
}
