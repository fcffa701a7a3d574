#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cvr/rng.hpp"

namespace cvr {

// Undirected simple graph on n vertices plus a two-provider vertex partition.
struct Graph {
    int n = 0;
    Eigen::MatrixXd adj;    // symmetric 0/1, zero diagonal
    std::vector<int> part;  // per vertex: 0 = provider A, 1 = provider B
    int regen_count = 0;    // connectivity retries consumed during generation

    std::vector<int> provider(int which) const;
    int degree(int v) const;
    int edge_count() const;
    bool connected() const;
    std::vector<std::pair<int, int>> edges() const;  // lexicographically sorted, i < j
};

enum class Topology {
    grid,
    complete,
    barabasi_albert,
    internet_as,
    duplication_divergence,
    explicit_edges,
};

std::string topology_name(Topology k);
Topology topology_from_name(const std::string& name);

struct TopologySpec {
    Topology kind = Topology::grid;
    int n = 0;
    // grid only; 0,0 selects the canonical two-column ladder (n/2 rows x 2 columns)
    int grid_rows = 0;
    int grid_cols = 0;
    int ba_m = 2;        // attachment count for barabasi_albert
    double dd_p = 0.4;   // edge retention probability for duplication_divergence
    std::vector<std::pair<int, int>> edges;  // explicit_edges only
    std::uint64_t seed = 1;
};

// Builds the topology; stochastic kinds retry with an incremented sub-seed until
// connected (at most 100 attempts, then throws).
Graph generate(const TopologySpec& spec);

// Adjacency-only constructors, no partition assigned.
Eigen::MatrixXd grid_adjacency(int rows, int cols);   // column-major vertex order
Eigen::MatrixXd ladder_adjacency(int k);              // k x 2 grid
Eigen::MatrixXd complete_adjacency(int n);
Eigen::MatrixXd barabasi_albert_adjacency(int n, int m, Rng& rng);
Eigen::MatrixXd internet_as_adjacency(int n, Rng& rng);
Eigen::MatrixXd duplication_divergence_adjacency(int n, double p, Rng& rng);
Eigen::MatrixXd erdos_renyi_adjacency(int n, double p, Rng& rng);  // control model

// Provider split: first n/2 vertices to A, rest to B (n must be even).
void bipartition_half(Graph& g);
void bipartition_explicit(Graph& g, const std::vector<int>& a_side);

// All-pairs hop distances via BFS; -1 marks unreachable pairs.
Eigen::MatrixXi hop_distances(const Graph& g);

// Mode-pair selection across the partition. Scenarios: 1 = highest-degree A vertex
// with lowest-degree B vertex, 2 = maximum-hop-distance pair across the partition,
// 3 = lowest-degree vertices on both sides. Ties break to the lowest index.
std::pair<int, int> scenario_pair(const Graph& g, int scenario);

}  // namespace cvr
