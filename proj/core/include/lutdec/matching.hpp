#pragma once

#include <span>
#include <vector>

#include "lutdec/layout.hpp"
#include "lutdec/noise.hpp"

namespace lutdec {

enum class EdgeKind : u8 { Space = 0, Time = 1, Boundary = 2 };

enum class WeightMode : u8 { Unit = 0, Weighted = 1 };

struct GraphEdge {
    int u = 0;
    int v = 0;
    EdgeKind kind = EdgeKind::Space;
    int data_qubit = -1;  // -1 for time edges
    double weight = 1.0;
    double probability = 0.0;
};

// Space-time matching graph for one stabilizer type over m layers, plus one
// virtual boundary node. Immutable after build; all-pairs representative
// shortest paths are fixed at construction with deterministic tie-breaking
// (minimum weight, then maximum path probability, then smallest predecessor).
struct DecodingGraph {
    StabType type = StabType::Z;
    int layers = 0;
    int stab_count = 0;
    int n_data = 0;
    int node_count = 0;  // layers * stab_count + 1
    int boundary_node = 0;
    std::vector<GraphEdge> edges;

    // Per ordered pair (u, v): path weight, -log probability, XOR of data
    // qubits along the representative path, and its edge list.
    std::vector<double> path_weight;
    std::vector<double> path_neg_log_prob;
    std::vector<u64> path_correction;
    std::vector<std::vector<u16>> path_edges;

    int node(int stab, int layer) const { return layer * stab_count + stab; }
    int layer_of(int node) const { return node / stab_count; }
    int stab_of(int node) const { return node % stab_count; }
    std::size_t pair_index(int u, int v) const { return std::size_t(u) * node_count + v; }
};

DecodingGraph build_graph(const CodeLayout& layout, StabType type, int m,
                          const EdgeProbs& edge_probs, WeightMode mode = WeightMode::Unit);

struct MatchingResult {
    // Each event is matched to another event or to the boundary node.
    std::vector<std::pair<int, int>> pairing;
    std::vector<u16> realized_edges;  // paths expanded, sorted, multiset
    double total_weight = 0.0;
};

// Exact minimum-weight matching with boundary over the detection events, via
// subset dynamic programming on the all-pairs distance table. Weight ties are
// broken by maximum realized-path probability, then by the lexicographically
// smallest full-window correction vector.
MatchingResult min_weight_match(const DecodingGraph& graph, std::span<const int> events);

struct Commit {
    u64 correction = 0;   // over data qubits, from committed space/boundary edges
    u64 state_delta = 0;  // over stabilizers, committed-edge degree parity at layer 1
};

// Restrict a matching to the edges touching layer 0: the error assignment for
// the oldest layer plus the detection events added/removed in layer 1.
Commit commit_oldest_layer(const DecodingGraph& graph, const MatchingResult& match);

}  // namespace lutdec
