#pragma once

#include <Eigen/Dense>
#include <json.hpp>

#include <string>
#include <vector>

#include "cvr/cma.hpp"
#include "cvr/criteria.hpp"
#include "cvr/graph.hpp"

namespace cvr {

// Graph wire format: {"n": int, "edges": [[i, j], ...], "partition_a": [ints]},
// edges sorted lexicographically with i < j.
nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// Covariance CSV: "# modes=<n> ordering=QP" header, then one row per line.
std::string covariance_to_csv(const Eigen::MatrixXd& cov);
Eigen::MatrixXd covariance_from_csv(const std::string& text);

// Histogram CSV: "bin_low,bin_high,count" rows.
std::string histogram_to_csv(const HistogramResult& h);
// Summary percentages: value_one_pct, value_lambda_pct, ge_99_lambda_pct.
nlohmann::json histogram_summary(const HistogramResult& h);

// Optimizer trace CSV: "generation,best_f,sigma" rows.
std::string history_to_csv(const std::vector<CmaHistoryEntry>& history);

nlohmann::json topology_to_json(const TopologySpec& spec);
TopologySpec topology_from_json(const nlohmann::json& j);

// Full run configuration for the command-line tool.
struct RunConfig {
    TopologySpec topology;
    double s = 10.0;
    std::vector<int> partition_a;  // empty = first-half split
    int scenario = 0;              // 0 = use the explicit pair below
    int mode_a = -1, mode_b = -1;
    CmaConfig cma;
    int graphs = 20;  // ensemble size for histograms
    int bins = 60;
    std::string out_dir;
};
nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace cvr
