#pragma once

#include <json.hpp>

#include "logchi/sscycle.hpp"

namespace logchi {

// Documented report shape, schema version 1:
// {"schema":1, "total":N, "f":"...", "scale":"...",
//  "components":[{"label":..,"n_v":..,"degree":..,
//                 "strata":[{"chart":..,"stratum":[..],"count":..,
//                            "points":[{"var":"value",...}]}]}],
//  "warnings":[..]}
inline nlohmann::json to_json(const CountReport& r) {
    nlohmann::json j;
    j["schema"] = 1;
    j["total"] = r.total;
    j["f"] = r.f;
    j["scale"] = r.scale;
    j["components"] = nlohmann::json::array();
    for (const auto& c : r.components) {
        nlohmann::json jc;
        jc["label"] = c.label;
        jc["n_v"] = c.multiplicity;
        jc["degree"] = c.degree;
        jc["strata"] = nlohmann::json::array();
        for (const auto& s : c.strata) {
            nlohmann::json js;
            js["chart"] = s.chart;
            js["stratum"] = s.stratum;
            js["count"] = s.count;
            if (!s.points.empty()) {
                js["points"] = nlohmann::json::array();
                for (const auto& p : s.points) {
                    nlohmann::json jp = nlohmann::json::object();
                    for (const auto& [name, value] : p.coordinates) jp[name] = value;
                    js["points"].push_back(jp);
                }
            }
            jc["strata"].push_back(js);
        }
        j["components"].push_back(jc);
    }
    j["warnings"] = r.warnings;
    return j;
}

} // namespace logchi
