#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "nonlocal/analysis.hpp"
#include "nonlocal/norms.hpp"
#include "nonlocal/theory.hpp"

namespace nonlocal {

/// Raised when an output target cannot be written or an input cannot be read.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Columns t,dt,sup_u,sup_v,l2_u,l2_v,h1_u,h1_v,bkm_integral; numbers with
/// 17 significant digits so doubles survive a round trip.
void write_norm_csv(const std::filesystem::path& path, std::span<const NormRecord> history);
std::vector<NormRecord> read_norm_csv(const std::filesystem::path& path);

/// Columns x,u,v.
void write_snapshot_csv(const std::filesystem::path& path, const SolutionState& state);
/// Columns xi,U,V.
void write_profile_csv(const std::filesystem::path& path, const SelfSimilarFrame& frame);

nlohmann::json to_json(const BlowupFit& fit, const FitWindow& window);
BlowupFit blowup_fit_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PowerLawFit& fit);
nlohmann::json to_json(const LambdaEstimate& estimate);
nlohmann::json to_json(const BkmReport& report);
nlohmann::json to_json(const BlowupCertificate& cert);
BlowupCertificate blowup_certificate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const RegularityCertificate& cert);
nlohmann::json to_json(const DecayReport& report);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace nonlocal
