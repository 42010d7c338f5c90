#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mgo/graph.hpp"
#include "mgo/pathfinding.hpp"

namespace mgo {

/// Closed walk with pairwise-distinct edges in which every directed edge is
/// traversed tail to head. Its absence is what "acyclic" means for a mixed
/// graph here.
struct ProperCycle {
    std::vector<PathStep> steps;
};

/// Deterministic cycle search: edges are scanned in id order (directed first,
/// then undirected, each undirected edge in both directions) and each is
/// tested for a mixed return path in the graph minus that edge. First hit
/// wins. Returns nullopt iff the graph is mixed-acyclic.
std::optional<ProperCycle> find_proper_cycle(const MixedGraph& graph);

inline bool is_mixed_acyclic(const MixedGraph& graph) {
    return !find_proper_cycle(graph).has_value();
}

/// Everything needed to replay a contraction and to lift orientations of the
/// contracted graph back to the original one.
struct ContractionRecord {
    int original_vertex_count = 0;
    int original_undirected_count = 0;
    /// original vertex -> contracted vertex (total).
    std::vector<Vertex> vertex_map;
    /// Directions chosen for undirected edges consumed by contraction, in
    /// original vertex coordinates, sorted by original edge id. Together with
    /// `undirected_origin` this covers every original undirected edge exactly
    /// once.
    std::vector<std::pair<int, Arc>> internal_orientation;
    /// Contracted cycles in contraction order, edges in original coordinates.
    std::vector<ProperCycle> steps;
    /// Requests whose endpoints land on the same supervertex (including
    /// source == target inputs); satisfied by any lifted orientation.
    std::vector<int> auto_satisfied;
    /// contracted undirected edge id -> original undirected edge id.
    std::vector<int> undirected_origin;
    /// contracted directed edge index -> original directed edge index.
    std::vector<int> directed_origin;

    bool is_identity() const { return steps.empty(); }
};

struct PreprocessResult {
    MixedGraph graph;                 // mixed-acyclic
    std::vector<Request> requests;    // remapped, auto-satisfied ones removed
    ContractionRecord record;
};

/// Contracts proper cycles one after the other until none remains. Each
/// cycle's undirected edges are oriented along the walk, which makes every
/// merged vertex pair mutually reachable, so the cycle collapses to a single
/// supervertex without changing the optimum.
PreprocessResult contract_cycles(const MixedGraph& graph, const std::vector<Request>& requests);

/// Pulls a total orientation of the contracted graph back to the original
/// graph: surviving edges keep their direction by edge identity, consumed
/// edges take their recorded internal direction.
Orientation lift_orientation(const MixedGraph& original, const ContractionRecord& record,
                             const Orientation& contracted);

}  // namespace mgo
