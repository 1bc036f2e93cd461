#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonlocal/analysis.hpp"
#include "nonlocal/config.hpp"
#include "nonlocal/theory.hpp"

namespace nonlocal {

/// A run together with everything derived from it.
struct ExperimentResult {
    RunConfig config;
    RunResult run;
    FitWindow window;  // final decade of growth, last 5 records dropped
    std::optional<BlowupFit> fit;
    std::optional<PowerLawFit> power_fit;
    std::string fit_error;
    std::vector<SelfSimilarFrame> frames;
    std::optional<LambdaEstimate> lambda;
    BkmReport bkm;
    std::optional<BlowupCertificate> certificate;
    std::optional<BoundReport> bound;
    std::optional<RegularityCertificate> regularity;
    std::optional<DecayReport> decay;
};

/// Runs the configuration, fits the blow-up when the run stopped on a
/// growing norm, extracts self-similar frames at the sup-norm snapshots,
/// and applies the certificate checks that fit the data (compact line data).
ExperimentResult execute(const RunConfig& config);

/// Writes norms.csv, final_state.csv, snapshot_NN.csv, profile_NN.csv,
/// fit.json (with the config echo) and certificates.json into `dir`.
/// Throws IoError when the directory or a file cannot be written.
void write_artifacts(const ExperimentResult& result, const std::filesystem::path& dir);

/// Summary used for fit.json.
nlohmann::json summary_json(const ExperimentResult& result);

struct Preset {
    std::string name;
    std::string description;
    RunConfig config;
};

const std::vector<Preset>& presets();
/// Throws std::invalid_argument for an unknown name.
const Preset& find_preset(const std::string& name);

/// execute + write_artifacts into the preset's output directory (or `out`).
ExperimentResult run_preset(const std::string& name,
                            const std::optional<std::filesystem::path>& out = {});

}  // namespace nonlocal
