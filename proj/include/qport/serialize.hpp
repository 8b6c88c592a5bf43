#pragma once

#include "qport/classical.hpp"
#include "qport/ising.hpp"
#include "qport/qaoa.hpp"
#include "qport/qubo.hpp"
#include "qport/stats.hpp"
#include "qport/zne.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace qport {

using Json = nlohmann::json;

Json qubo_to_json(const QuboProblem& qubo);
QuboProblem qubo_from_json(const Json& j);

Json ising_to_json(const IsingModel& model);
IsingModel ising_from_json(const Json& j);

Json shot_record_to_json(const ShotRecord& record);
ShotRecord shot_record_from_json(const Json& j);

/// `include_elapsed` false keeps outputs byte-identical across re-runs;
/// the elapsed field is then serialized as null.
Json solver_result_to_json(const SolverResult& result, bool include_elapsed = false);

Json zne_estimate_to_json(const ZneEstimate& estimate);

Json comparison_report_to_json(const ComparisonReport& report);

/// FNV-1a hash of the canonical dump, hex-encoded; stamps outputs so records
/// can be traced back to the exact configuration.
std::string config_hash(const Json& j);

void write_json_file(const std::filesystem::path& path, const Json& j);
Json read_json_file(const std::filesystem::path& path);

}  // namespace qport
