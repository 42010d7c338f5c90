#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mgo/graph.hpp"

namespace mgo {

/// One traversal step: the edge used and the direction it was walked in.
struct PathStep {
    EdgeRef edge;
    Vertex from;
    Vertex to;
};

/// A request's path through the graph with per-edge traversal directions.
/// `undirected_dirs` caches the direction implied for every undirected edge
/// on the path, sorted by edge id.
struct RoutedPath {
    int request_id = -1;
    Vertex source = -1;
    Vertex target = -1;
    std::vector<PathStep> steps;
    std::vector<Vertex> vertices;                 // source, then each step's `to`
    std::vector<std::pair<int, Arc>> undirected_dirs;

    int length() const { return static_cast<int>(steps.size()); }
    bool crosses(Vertex v) const;
    /// Direction this path needs for undirected edge `id`, if the edge is on it.
    const Arc* direction_on(int undirected_id) const;
};

/// Fills the derived fields (vertices, undirected_dirs) from steps.
void finalize_path(RoutedPath& path);

/// Breadth-first shortest path treating undirected edges as two-way.
/// Ties broken by exploring incident edges in the graph's canonical incidence
/// order and keeping the first-discovered parent. Returns nullopt when t is
/// unreachable; s == t yields an empty path.
std::optional<RoutedPath> shortest_mixed_path(const MixedGraph& graph, Vertex s, Vertex t);

struct RoutingResult {
    std::vector<RoutedPath> paths;     // one per routable request, in request order
    std::vector<int> unroutable;       // request ids with no mixed path
};

/// Routes every request. Requests must be normalized (source != target).
RoutingResult route_all(const MixedGraph& graph, const std::vector<Request>& requests);

/// Two paths conflict when they share an undirected edge that their
/// source-to-target traversals orient oppositely.
struct ConflictWitness {
    int edge_id;
    Arc first_direction;
    Arc second_direction;
};

/// Witness on the lowest-id shared undirected edge with opposite directions,
/// or nullopt when every shared undirected edge agrees.
std::optional<ConflictWitness> in_conflict(const RoutedPath& p, const RoutedPath& q);

struct ConflictInfo {
    std::vector<int> degree;                    // conflicts per path
    std::vector<std::pair<int, int>> pairs;     // conflicting index pairs, i < j
};

ConflictInfo conflict_degrees(const std::vector<RoutedPath>& paths);

}  // namespace mgo
