#pragma once

#include "fdjc/dynamics.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fdjc {

enum class RunMode { ClosedForm, Oracle, Both };

/// Parsed run configuration: an optional figure preset plus key -> value
/// overrides mirroring the physical parameters. Unknown keys are rejected
/// at parse time with the nearest valid key named.
struct RunConfig {
    std::optional<std::string> preset;
    std::map<std::string, std::string> overrides;
    std::vector<std::string> outputs; // empty: preset default / "all" fallback
    std::string out_dir = "out";
    RunMode mode = RunMode::ClosedForm;

    /// Sweep support: run once per value of `sweep_key`.
    std::optional<std::string> sweep_key;
    std::vector<std::string> sweep_values;
};

/// Fully resolved run: physical parameters plus output selection. `keys`
/// holds the exact resolved key -> value strings the parameters were built
/// from; the manifest echoes them so that reloading it reproduces the run.
struct ResolvedRun {
    ModelParams params;
    std::vector<std::string> outputs;
    RunMode mode = RunMode::ClosedForm;
    std::string preset_label; // empty when assembled from explicit keys
    std::map<std::string, std::string> keys;
};

/// Parses a key = value config file (# comments, blank lines allowed).
RunConfig load_config(const std::string& path);

/// Builds the caption parameter set of one figure panel (fig1a..fig5c).
/// Throws ConfigError{UnknownPreset} for anything else.
ModelParams preset(const std::string& name);

/// All preset names, fig1a..fig5c.
std::vector<std::string> preset_names();

/// Default observable emitted by a figure family (W, Fy, dp, g2, S2).
std::string preset_default_output(const std::string& name);

/// Valid observable names accepted in `outputs`.
const std::vector<std::string>& observable_names();

/// Applies preset/overrides and validates. Used by `run` and the sweep
/// driver; ConfigError is thrown on missing or inconsistent keys.
ResolvedRun resolve(const RunConfig& cfg);

/// Serializes a resolved run back to config keys (the manifest payload).
/// Loading the result reproduces the run byte-for-byte.
std::map<std::string, std::string> to_key_values(const ResolvedRun& run);

} // namespace fdjc
