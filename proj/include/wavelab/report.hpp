#pragma once

#include "wavelab/estimates.hpp"

#include <json.hpp>

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace wavelab {

nlohmann::json report_json(const DecayFitReport& r);
DecayFitReport report_from_json(const nlohmann::json& j);

// Reports of `res` whose estimate_id is `id` (all of them when id names the whole group).
EstimateResult select_estimate(const EstimateResult& res, const std::string& id);

// Everything outside "metadata" is a pure function of the result.
nlohmann::json estimate_json(const EstimateResult& res, const std::map<std::string, std::string>& metadata = {});
EstimateResult estimate_from_json(const nlohmann::json& j);

// <dir>/estimate_<id>.json; returns the path written.
std::string write_estimate_json(const std::string& dir, const EstimateResult& res,
                                const std::map<std::string, std::string>& metadata = {});
// Every estimate_*.json under dir, sorted by file name.
std::vector<EstimateResult> read_estimate_dir(const std::string& dir);

// estimate_id,variable,target,fitted,tolerance,pass
void write_rollup_csv(std::ostream& os, const std::vector<EstimateResult>& results);
std::string file_safe(const std::string& id);

}  // namespace wavelab
