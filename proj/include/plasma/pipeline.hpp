#pragma once

#include "plasma/forward.hpp"
#include "plasma/marchenko.hpp"
#include "plasma/riemann.hpp"
#include "plasma/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace plasma {

/// Everything a run needs. Precedence: built-in defaults, then the JSON config
/// file, then command-line flags.
struct RunConfig {
    std::string stage;

    // truth potential: a named family, or a CSV file (the CSV wins when both are set)
    std::string family;
    FamilyParams params;
    std::string potential_csv;
    int n_x = 401;

    std::string data_csv;  ///< boundary data consumed by `invert`

    double k_min = 0.05;
    double k_max = 60.0;
    int n_k = 4096;
    double k_min_floor = kDefaultKMinFloor;

    ForwardOptions forward;
    RiemannOptions riemann;
    MarchenkoOptions marchenko;
    SpectralOptions spectral;

    std::string output_dir = "out";

    bool has_truth() const { return !family.empty() || !potential_csv.empty(); }
};

/// Overlays the fields present in `j` onto `base`; unknown keys and
/// ill-typed values are ConfigErrors.
RunConfig apply_json(RunConfig base, const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Effective configuration with every default resolved.
nlohmann::json to_json(const RunConfig& cfg);

/// Checks numeric fields and referenced files.
void validate(const RunConfig& cfg);

Potential truth_potential(const RunConfig& cfg);
KGrid config_grid(const RunConfig& cfg);

/// FNV-1a over the 17-digit CSV rendering; stable across platforms.
std::string potential_hash(const Potential& q);

struct Inversion {
    RecoveredSpectrum spectrum;
    MarchenkoKernel kernel;
    Reconstruction reconstruction;
};

/// data -> a, b, r -> Marchenko -> q on n_x nodes.
Inversion invert_data(const BoundaryData& data, int n_x, const RiemannOptions& riemann = {},
                      const MarchenkoOptions& marchenko = {});

nlohmann::json to_json(const SpectrumReport& rep);

/// Outcome of a command: exit status plus the report that was written.
struct CommandResult {
    int exit_code = 0;
    std::string message;  ///< empty on success
    nlohmann::json report;
};

// Each command validates and loads all inputs before it creates the output
// directory, so configuration errors leave no partial output. The directory
// is guarded by a lockfile for the duration of the run.
CommandResult cmd_forward(const RunConfig& cfg);
CommandResult cmd_invert(const RunConfig& cfg);
CommandResult cmd_roundtrip(const RunConfig& cfg);
CommandResult cmd_diagnose(const RunConfig& cfg);

CommandResult run(const RunConfig& cfg);

}  // namespace plasma
