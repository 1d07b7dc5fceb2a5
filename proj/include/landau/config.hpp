#pragma once

// Run configuration (JSON document, CLI-overridable) and the trajectory
// runner shared by the CLI and the experiment drivers.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landau/sampling.hpp"
#include "landau/simulate.hpp"

namespace landau {

enum class SystemKind { conservative, nonconservative, coupled_pair, nonlinear };

std::string to_string(SystemKind k);
SystemKind system_from_string(const std::string& s);

struct SimConfig {
    SystemKind system = SystemKind::conservative;
    double gamma = 0.0;
    std::size_t n = 256;
    std::optional<double> dt;        // absent: 1e-3·min(1, 1/max|V₀|^γ)
    double t_end = 1.0;
    std::size_t record_every = 1;
    std::uint64_t seed = 1;
    bool project = false;
    double eps = 0.0;                // coupled-pair auxiliary noise scale
    InitialCondition initial;        // V-side start
    InitialCondition initial_w;      // W-side start (coupled_pair only)
    int threads = 0;                 // 0: library default / LANDAU_THREADS
    double expmom_alpha = 1.0;       // diagnostic ℰ_α exponent
    bool w2_ref = false;             // emit W2² to N(0, I/3) at recorded steps
    std::string diagnostics_out;     // CSV path; empty: no file
    std::string snapshots_out;       // CSV path; empty: no snapshots
};

// Strict parse: unknown keys anywhere in the document are errors.
SimConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SimConfig& c);

// Shorthand accepted by --init: "gaussian", "uniform_sphere",
// "anisotropic_sphere:4,1,1", "two_bumps:1.5", "file:snap.csv".
InitialCondition initial_from_string(const std::string& s);

// dt default rule: 1e-3·min(1, 1/max_i|V_i|^γ) on the sampled start.
double default_dt(const EmpiricalMeasure& initial, double gamma);

struct RunResult {
    std::vector<DiagRow> diagnostics;
    std::vector<Snapshot> snapshots;          // only when snapshots_out set
    ParticleEnsemble final_state;             // V-side
    std::optional<ParticleEnsemble> final_w;  // coupled_pair only
    std::vector<double> coupled_dist;         // (1/N)Σ|V−W|² at recorded steps
    double dt_used = 0.0;
};

// Advances the configured system from t = 0 to t_end; records diagnostics at
// step 0, every record_every steps, and the final step. Deterministic for a
// fixed (config, seed) regardless of thread count (to 1e-12; bit-exact at a
// fixed count). Throws BlowUp with the offending step index.
RunResult run(const SimConfig& config);

} // namespace landau
