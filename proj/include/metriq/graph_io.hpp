#pragma once

#include <json.hpp>
#include <string>

#include "metriq/graph.hpp"

namespace metriq {

nlohmann::json graph_to_json(const MetricGraph& g);
MetricGraph graph_from_json(const nlohmann::json& j);

/// Throws Error(IoError) on file problems, Error(InvalidGraph) on bad content.
MetricGraph load_graph(const std::string& path);
void save_graph(const MetricGraph& g, const std::string& path);

/// Writes text to a file, throwing Error(IoError) on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace metriq
