#include "fdjc/config.hpp"
#include "fdjc/errors.hpp"
#include "fdjc/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fdjc {

namespace {

// Shared constants of the figure battery. The per-panel chirp magnitude is
// |kg| in {0, 2e7, 8e7} s^-2 with the beam oriented against gravity (the
// instantaneous detuning sweeps downward). The remaining scales put the
// sweep through the Landau-Zener crossover inside the plotted window
// (coupling^2/|kg| ~ 1) with the Doppler spread visible but subdominant.
constexpr double kPresetLambda = 3.0e3;     // rad/s
constexpr double kPresetDeltaKBar = 6.0e3;  // rad/s
constexpr double kPresetNu = -3.0e4;        // rad/s (deformed-detuning scale)
constexpr double kPresetRecoil = 1.0546e3;  // rad/s per recoil unit
constexpr double kPresetAlpha = 2.0;
constexpr double kPresetQ = 1.04;
constexpr double kPresetTailTol = 1e-12;
constexpr int kPresetPNodes = 32;
constexpr int kPresetTPoints = 2001;
constexpr double kPresetLambdaTMax = 25.0;

const std::vector<std::string> kPhysicalKeys = {
    "f_kind",      "q",        "kappa",   "alpha",   "tail_tol", "lambda_c",
    "delta_k_bar", "nu",       "recoil_rate", "kg",  "c_e_re",   "c_e_im",
    "c_g_re",      "c_g_im",   "p_nodes", "t_points", "lambda_t_max",
};

const std::vector<std::string> kOtherKeys = {
    "preset", "outputs", "mode", "out_dir", "sweep_key", "sweep_values",
};

int levenshtein(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = int(j);
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = int(i);
        for (size_t j = 1; j <= b.size(); ++j) {
            int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string nearest_key(const std::string& key) {
    std::string best;
    double best_d = 1e9;
    for (const auto& list : {kPhysicalKeys, kOtherKeys})
        for (const auto& k : list) {
            // length-normalized so that a typo of a long key beats an
            // accidental match against a short one
            double d = double(levenshtein(key, k)) / double(std::max(key.size(), k.size()));
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
    return best;
}

bool known_key(const std::string& key) {
    for (const auto& list : {kPhysicalKeys, kOtherKeys})
        if (std::find(list.begin(), list.end(), key) != list.end()) return true;
    return false;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size())
            throw ConfigError(ConfigError::Kind::Parse,
                              "key '" + key + "': trailing characters in '" + value + "'");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(ConfigError::Kind::Parse,
                          "key '" + key + "': cannot parse number '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    double v = parse_double(key, value);
    if (v != std::floor(v))
        throw ConfigError(ConfigError::Kind::Parse, "key '" + key + "': expected integer");
    return int(v);
}

RunMode parse_mode(const std::string& value) {
    if (value == "closed_form") return RunMode::ClosedForm;
    if (value == "oracle") return RunMode::Oracle;
    if (value == "both") return RunMode::Both;
    throw ConfigError(ConfigError::Kind::Parse,
                      "mode must be closed_form|oracle|both, got '" + value + "'");
}

std::map<std::string, std::string> preset_key_values(const std::string& name) {
    double kg = 0.0;
    if (name.size() == 5 && name.rfind("fig", 0) == 0 && name[3] >= '1' && name[3] <= '5') {
        // Panel chirp magnitudes; the sign encodes the beam-vs-gravity
        // orientation (k.g < 0: detuning swept downward).
        switch (name[4]) {
            case 'a': kg = 0.0; break;
            case 'b': kg = -2.0e7; break;
            case 'c': kg = -8.0e7; break;
            default: throw ConfigError(ConfigError::Kind::UnknownPreset, "unknown preset '" + name + "'");
        }
    } else {
        throw ConfigError(ConfigError::Kind::UnknownPreset, "unknown preset '" + name + "'");
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::map<std::string, std::string> kv;
    kv["f_kind"] = "q_type";
    kv["q"] = fmt17(kPresetQ);
    kv["kappa"] = fmt17(0.0);
    kv["alpha"] = fmt17(kPresetAlpha);
    kv["tail_tol"] = fmt17(kPresetTailTol);
    kv["lambda_c"] = fmt17(kPresetLambda);
    kv["delta_k_bar"] = fmt17(kPresetDeltaKBar);
    kv["nu"] = fmt17(kPresetNu);
    kv["recoil_rate"] = fmt17(kPresetRecoil);
    kv["kg"] = fmt17(kg);
    kv["c_e_re"] = fmt17(inv_sqrt2);
    kv["c_e_im"] = fmt17(0.0);
    kv["c_g_re"] = fmt17(inv_sqrt2);
    kv["c_g_im"] = fmt17(0.0);
    kv["p_nodes"] = std::to_string(kPresetPNodes);
    kv["t_points"] = std::to_string(kPresetTPoints);
    kv["lambda_t_max"] = fmt17(kPresetLambdaTMax);
    return kv;
}

ModelParams build_params(const std::map<std::string, std::string>& kv) {
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
            throw ConfigError(ConfigError::Kind::MissingKey, "missing key '" + key + "'");
        return it->second;
    };

    ModelParams mp;
    std::string kind = get("f_kind");
    if (kind == "identity") {
        mp.spec = DeformationSpec::identity();
    } else if (kind == "q_type") {
        mp.spec = DeformationSpec::q_type(parse_double("q", get("q")));
    } else if (kind == "kerr") {
        mp.spec = DeformationSpec::kerr(parse_double("kappa", get("kappa")));
    } else {
        throw ConfigError(ConfigError::Kind::Parse,
                          "f_kind must be identity|q_type|kerr, got '" + kind + "'");
    }

    mp.lambda_c = parse_double("lambda_c", get("lambda_c"));
    mp.delta_k_bar = parse_double("delta_k_bar", get("delta_k_bar"));
    mp.nu = parse_double("nu", get("nu"));
    mp.omega = mp.delta_k_bar + mp.nu; // omega - nu pinned to the central detuning
    mp.recoil_rate = parse_double("recoil_rate", get("recoil_rate"));
    mp.kg = parse_double("kg", get("kg"));
    mp.c_e = Complex(parse_double("c_e_re", get("c_e_re")), parse_double("c_e_im", get("c_e_im")));
    mp.c_g = Complex(parse_double("c_g_re", get("c_g_re")), parse_double("c_g_im", get("c_g_im")));
    mp.p_nodes = parse_int("p_nodes", get("p_nodes"));

    double alpha = parse_double("alpha", get("alpha"));
    double tail_tol = parse_double("tail_tol", get("tail_tol"));
    mp.weights = q_coherent_weights(mp.spec, alpha, tail_tol);

    int t_points = parse_int("t_points", get("t_points"));
    double lt_max = parse_double("lambda_t_max", get("lambda_t_max"));
    if (t_points < 2) throw ConfigError(ConfigError::Kind::Parse, "t_points must be >= 2");
    if (!(mp.lambda_c > 0.0))
        throw ConfigError(ConfigError::Kind::Parse, "lambda_c must be > 0 to define the time grid");
    mp.t_grid.resize(size_t(t_points));
    for (int i = 0; i < t_points; ++i)
        mp.t_grid[size_t(i)] = lt_max * double(i) / double(t_points - 1) / mp.lambda_c;
    return mp;
}

} // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError(ConfigError::Kind::Parse, "cannot open config file '" + path + "'");
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError(ConfigError::Kind::Parse,
                              "line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (!known_key(key))
            throw ConfigError(ConfigError::Kind::UnknownKey,
                              "line " + std::to_string(lineno) + ": unknown key '" + key +
                                  "' (did you mean '" + nearest_key(key) + "'?)");
        if (key == "preset") {
            cfg.preset = value;
        } else if (key == "outputs") {
            cfg.outputs = split_list(value);
        } else if (key == "mode") {
            cfg.mode = parse_mode(value);
        } else if (key == "out_dir") {
            cfg.out_dir = value;
        } else if (key == "sweep_key") {
            cfg.sweep_key = value;
        } else if (key == "sweep_values") {
            cfg.sweep_values = split_list(value);
        } else {
            cfg.overrides[key] = value;
        }
    }
    return cfg;
}

ModelParams preset(const std::string& name) { return build_params(preset_key_values(name)); }

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (int fam = 1; fam <= 5; ++fam)
        for (char panel : {'a', 'b', 'c'})
            out.push_back("fig" + std::to_string(fam) + panel);
    return out;
}

std::string preset_default_output(const std::string& name) {
    if (name.size() != 5 || name.rfind("fig", 0) != 0)
        throw ConfigError(ConfigError::Kind::UnknownPreset, "unknown preset '" + name + "'");
    switch (name[3]) {
        case '1': return "W";
        case '2': return "Fy";
        case '3': return "dp";
        case '4': return "g2";
        case '5': return "S2";
        default: throw ConfigError(ConfigError::Kind::UnknownPreset, "unknown preset '" + name + "'");
    }
}

const std::vector<std::string>& observable_names() {
    static const std::vector<std::string> names = {"W",  "sx", "sy", "Fx", "Fy",
                                                   "dp", "g2", "S1", "S2"};
    return names;
}

ResolvedRun resolve(const RunConfig& cfg) {
    std::map<std::string, std::string> kv;
    if (cfg.preset) {
        kv = preset_key_values(*cfg.preset);
        for (const auto& [k, v] : cfg.overrides) kv[k] = v;
    } else {
        kv = cfg.overrides;
        std::string missing;
        for (const auto& k : kPhysicalKeys) {
            if (k == "q" || k == "kappa") continue; // required only per f_kind
            if (!kv.count(k)) missing += (missing.empty() ? "" : ", ") + k;
        }
        if (!missing.empty())
            throw ConfigError(ConfigError::Kind::MissingKey,
                              "no preset given and keys missing: " + missing);
    }

    ResolvedRun run;
    run.params = build_params(kv);
    run.mode = cfg.mode;
    run.preset_label = cfg.preset.value_or("");
    run.keys = kv;

    if (!cfg.outputs.empty()) {
        run.outputs = cfg.outputs;
        if (run.outputs.size() == 1 && run.outputs[0] == "all")
            run.outputs = {"W", "Fx", "Fy", "dp", "g2", "S1", "S2"};
    } else if (cfg.preset) {
        run.outputs = {preset_default_output(*cfg.preset)};
    } else {
        run.outputs = {"W", "Fx", "Fy", "dp", "g2", "S1", "S2"};
    }
    const auto& valid = observable_names();
    for (const auto& name : run.outputs)
        if (std::find(valid.begin(), valid.end(), name) == valid.end())
            throw ConfigError(ConfigError::Kind::Parse, "unknown observable '" + name + "'");
    return run;
}

std::map<std::string, std::string> to_key_values(const ResolvedRun& run) {
    std::map<std::string, std::string> kv = run.keys;
    std::string outs;
    for (const auto& o : run.outputs) outs += (outs.empty() ? "" : ",") + o;
    kv["outputs"] = outs;
    kv["mode"] = run.mode == RunMode::ClosedForm ? "closed_form"
               : run.mode == RunMode::Oracle     ? "oracle"
                                                 : "both";
    return kv;
}

} // namespace fdjc
