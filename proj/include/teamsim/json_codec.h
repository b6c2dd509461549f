#pragma once

#include <json.hpp>

#include "teamsim/inc_engine.h"
#include "teamsim/quality.h"

namespace teamsim {

nlohmann::json team_json(const Team& t, const DataGraph& g);
nlohmann::json quality_json(const QualityReport& q);
nlohmann::json stats_json(const UpdateStats& st);
nlohmann::json counters_json(const SessionCounters& c);
nlohmann::json topk_json(const TopKList& list, const DataGraph& g, const PatternGraph* with_quality = nullptr);

}  // namespace teamsim
