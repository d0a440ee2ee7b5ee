#pragma once

#include <string>

#include <json.hpp>

namespace chronovec {

// Self-describing evaluation output: parameters plus per-item results plus
// aggregates, re-runnable from its own metadata.
struct EvalReport {
    std::string task;
    nlohmann::json params = nlohmann::json::object();      // config, seeds, corpus hash
    nlohmann::json items = nlohmann::json::array();        // per-item rows
    nlohmann::json aggregates = nlohmann::json::object();

    std::string to_json_text() const;
    std::string to_text() const;  // aligned-column rendering
};

// Table-shaped renderings of the smoothness grid: CSV rows are
// (method, overlap) across probe-word columns; the SVG is a mean-cosine
// line chart over the overlap grid, one polyline per method.
std::string smoothness_csv(const EvalReport& report);
std::string smoothness_svg(const EvalReport& report);

}  // namespace chronovec
