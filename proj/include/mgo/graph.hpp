#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mgo/errors.hpp"

namespace mgo {

using Vertex = int;

enum class EdgeKind : unsigned char { directed, undirected };

/// Reference to one edge of a MixedGraph: `index` points into the directed
/// or undirected edge list depending on `kind`.
struct EdgeRef {
    EdgeKind kind;
    int index;

    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

struct DirectedEdge {
    Vertex tail;
    Vertex head;
};

/// Endpoints are stored as given at build time; the pair is unordered.
struct UndirectedEdge {
    Vertex a;
    Vertex b;
};

/// A chosen direction for an undirected edge.
struct Arc {
    Vertex from;
    Vertex to;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Graph with a fixed directed part and an orientable undirected part.
/// Vertices and undirected edge ids are dense integers. Parallel edges are
/// allowed (contraction produces them); self-loops are rejected.
/// Immutable after construction.
class MixedGraph {
public:
    MixedGraph() = default;
    MixedGraph(int vertex_count, std::vector<DirectedEdge> directed,
               std::vector<UndirectedEdge> undirected);

    int vertex_count() const { return n_; }
    int directed_count() const { return static_cast<int>(directed_.size()); }
    int undirected_count() const { return static_cast<int>(undirected_.size()); }

    const DirectedEdge& directed(int index) const { return directed_[index]; }
    const UndirectedEdge& undirected(int id) const { return undirected_[id]; }
    const std::vector<DirectedEdge>& directed_edges() const { return directed_; }
    const std::vector<UndirectedEdge>& undirected_edges() const { return undirected_; }

    /// Incident edges of `v`, directed ones first, each group in ascending
    /// index order. Directed edges are listed at both endpoints.
    std::span<const EdgeRef> incident(Vertex v) const;

    /// Endpoints of any edge as an (unordered) pair.
    std::pair<Vertex, Vertex> endpoints(EdgeRef e) const;

private:
    int n_ = 0;
    std::vector<DirectedEdge> directed_;
    std::vector<UndirectedEdge> undirected_;
    std::vector<EdgeRef> incidence_;
    std::vector<int> incidence_offsets_;
};

inline Vertex other_endpoint(const UndirectedEdge& e, Vertex v) {
    return e.a == v ? e.b : e.a;
}

/// Direction assignment for a subset of the undirected edges.
class PartialOrientation {
public:
    PartialOrientation() = default;
    explicit PartialOrientation(int undirected_count)
        : arcs_(undirected_count, Arc{-1, -1}) {}

    int edge_count() const { return static_cast<int>(arcs_.size()); }
    bool assigned(int edge_id) const { return arcs_[edge_id].from >= 0; }
    const Arc& arc(int edge_id) const { return arcs_[edge_id]; }
    void assign(int edge_id, Arc arc) { arcs_[edge_id] = arc; }
    int assigned_count() const;
    bool total() const { return assigned_count() == edge_count(); }

private:
    std::vector<Arc> arcs_;
};

/// Total direction assignment: arcs[id] is the direction of undirected edge id.
struct Orientation {
    std::vector<Arc> arcs;
};

struct OrientationViolation {
    int edge_id;
    std::string reason;
};

/// Checks totality and that every assigned arc matches its edge's endpoints.
/// Returns the first violation in edge-id order, or nullopt if consistent.
std::optional<OrientationViolation> validate_orientation(const MixedGraph& graph,
                                                         const PartialOrientation& partial,
                                                         bool require_total = true);
std::optional<OrientationViolation> validate_orientation(const MixedGraph& graph,
                                                         const Orientation& orientation);

/// Converts a total partial orientation; throws ContractViolation if not total.
Orientation to_orientation(const PartialOrientation& partial);

PartialOrientation to_partial(const Orientation& orientation);

struct Request {
    int id;
    Vertex source;
    Vertex target;
};

/// Vertices reachable from `s`: directed edges go tail->head, assigned
/// undirected edges go along their arc, unassigned ones both ways.
/// Result is sorted ascending and always contains `s`.
std::vector<Vertex> reachable_set(const MixedGraph& graph,
                                  const PartialOrientation& partial, Vertex s);

/// Reachability as a flat mask; scratch-free variant used by hot loops.
void reachable_mask(const MixedGraph& graph, const PartialOrientation& partial,
                    Vertex s, std::vector<char>& mask);

struct SatisfactionResult {
    int count = 0;
    std::vector<char> flags;  // one per request, in input order
};

/// A request is satisfied when its target is reachable from its source under
/// the (total) orientation. Throws ContractViolation on a partial or
/// inconsistent orientation.
SatisfactionResult count_satisfied(const MixedGraph& graph, const Orientation& orientation,
                                   const std::vector<Request>& requests);

}  // namespace mgo
