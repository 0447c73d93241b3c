#pragma once

#include "fdjc/config.hpp"
#include "fdjc/observables.hpp"

namespace fdjc {

/// Computes one named observable series from a trajectory.
ObservableSeries series_for(const std::string& name, const AmplitudeTrajectory& traj);

/// Executes a resolved run: evolves the state, computes the requested
/// observables and writes one CSV (+ SVG) per observable plus a manifest
/// into out_dir. Deterministic byte output for fixed config and version.
void run(const ResolvedRun& run, const std::string& out_dir, int threads);

/// Runs a sweep config: one subdirectory `<key>=<value>` per sweep value.
void run_sweep(const RunConfig& cfg, const std::string& out_dir, int threads);

} // namespace fdjc
