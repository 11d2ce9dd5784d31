#pragma once

#include <json.hpp>

#include "config.hpp"
#include "vortexball/construction.hpp"
#include "vortexball/lorentz.hpp"
#include "vortexball/verify.hpp"

namespace vortexball::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Ball& b);
Json to_json(const std::vector<Ball>& balls);
Json to_json(const GrowthHistory& h);
Json to_json(const InequalityReport& r);
Json to_json(const std::vector<InequalityReport>& reps);
Json to_json(const RunConfig& c);
Json to_json(const LorentzStats& s);
Json to_json(const SweepRow& row);

/// Construction summary plus the concatenated family, transitions, beta table and G annuli.
Json construction_json(const TwoPhaseResult& res, const TransitionTable& tr, const BetaTable& betas, const GField& G);

/// Serializes with two-space indent and a trailing newline.
void write_json(const Json& j, const std::string& path);

}  // namespace vortexball::cli
