#pragma once

#include <string>

#include <json.hpp>

#include "famalyze/engine.hpp"

namespace famalyze {

// machine-readable analysis report:
// {"program": str, "options": {...},
//  "locations": [{"label": int, "state": <tree-json | tuple-json>}],
//  "asserts": [{"label": int, "partitions": [{"cond": str, "verdict": str}]}]}
nlohmann::json to_json(const invariant_map &inv, const std::string &program_name);

// tree-json: {"node": "<constraint>", "true": ..., "false": ...}
//          | {"leaf": ["<constraint>", ...] | "bottom" | "top"}
nlohmann::json tree_to_json(const dtree_ptr &t, const tree_ctx &ctx);

// tuple-json: [{"config": "...", "state": ["<constraint>", ...] | "bottom" | "top"}]
nlohmann::json tuple_to_json(const tuple_state &s);

std::string text_report(const invariant_map &inv, const std::string &program_name);

std::string text_report(const compare_report &rep, bool affine);

} // namespace famalyze
