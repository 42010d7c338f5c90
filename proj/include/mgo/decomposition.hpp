#pragma once

#include <vector>

#include "mgo/graph.hpp"

namespace mgo {

/// Bag tree over the undirected version of the graph (directed edges are
/// treated as undirected). Valid when (1) the bags cover every vertex,
/// (2) every edge has both endpoints in some bag, and (3) the bags holding
/// any fixed vertex form a connected subtree.
struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags;       // each sorted ascending
    std::vector<std::pair<int, int>> tree_edges; // over bag indices

    int width() const;
    std::vector<std::vector<int>> tree_adjacency() const;
};

/// Min-fill elimination ordering; one bag per elimination step. The achieved
/// width is whatever min-fill reaches, not necessarily the treewidth.
TreeDecomposition tree_decomposition_min_fill(const MixedGraph& graph);

/// Throws ValidationError naming the violated property (1), (2) or (3).
void validate_decomposition(const MixedGraph& graph, const TreeDecomposition& decomposition);

/// Node of the induced subtree whose removal leaves components of at most
/// ceil(|subset|/2) nodes each; ties broken toward the lowest node index.
/// Throws ContractViolation when the subset does not induce a connected
/// subtree.
int centroid(const std::vector<std::vector<int>>& tree_adjacency,
             const std::vector<int>& node_subset);

struct FeedbackVertexSet {
    enum class Method { heuristic, exact, provided };
    std::vector<Vertex> vertices;  // sorted ascending
    Method method = Method::heuristic;
};

/// Peels degree<=1 vertices, then repeatedly removes the highest-degree
/// remaining vertex (ties: lowest id) until the undirected version is a
/// forest. Always valid, not necessarily minimum.
FeedbackVertexSet feedback_vertex_set_heuristic(const MixedGraph& graph);

/// Minimum feedback vertex set by subset enumeration; refuses when the graph
/// has more than `vertex_cap` vertices.
FeedbackVertexSet feedback_vertex_set_exact(const MixedGraph& graph, int vertex_cap = 20);

/// Checks that deleting the set leaves the undirected version acyclic; throws
/// ValidationError carrying a witness cycle otherwise.
void validate_fvs(const MixedGraph& graph, const std::vector<Vertex>& vertices);

/// True when the undirected version of the graph (parallel edges included)
/// has no cycle.
bool undirected_version_is_forest(const MixedGraph& graph);

}  // namespace mgo
