#include "mgo/graph.hpp"

#include <algorithm>
#include <numeric>

namespace mgo {

namespace {

void check_vertex(Vertex v, int n, const std::string& where) {
    if (v < 0 || v >= n) {
        throw InputError(where + ": vertex " + std::to_string(v) + " out of range [0," +
                         std::to_string(n) + ")");
    }
}

}  // namespace

MixedGraph::MixedGraph(int vertex_count, std::vector<DirectedEdge> directed,
                       std::vector<UndirectedEdge> undirected)
    : n_(vertex_count), directed_(std::move(directed)), undirected_(std::move(undirected)) {
    if (n_ < 0) {
        throw InputError("vertex count must be nonnegative");
    }
    for (std::size_t i = 0; i < directed_.size(); ++i) {
        const auto& e = directed_[i];
        const std::string where = "directed edge " + std::to_string(i);
        check_vertex(e.tail, n_, where);
        check_vertex(e.head, n_, where);
        if (e.tail == e.head) {
            throw InputError(where + ": self-loop at vertex " + std::to_string(e.tail));
        }
    }
    for (std::size_t i = 0; i < undirected_.size(); ++i) {
        const auto& e = undirected_[i];
        const std::string where = "undirected edge " + std::to_string(i);
        check_vertex(e.a, n_, where);
        check_vertex(e.b, n_, where);
        if (e.a == e.b) {
            throw InputError(where + ": self-loop at vertex " + std::to_string(e.a));
        }
    }

    // Incidence slots per vertex; directed edges appear at both endpoints.
    std::vector<int> degree(n_, 0);
    for (const auto& e : directed_) {
        ++degree[e.tail];
        ++degree[e.head];
    }
    for (const auto& e : undirected_) {
        ++degree[e.a];
        ++degree[e.b];
    }
    incidence_offsets_.assign(n_ + 1, 0);
    std::partial_sum(degree.begin(), degree.end(), incidence_offsets_.begin() + 1);
    incidence_.resize(incidence_offsets_.back());
    std::vector<int> cursor(incidence_offsets_.begin(), incidence_offsets_.end() - 1);
    for (int i = 0; i < static_cast<int>(directed_.size()); ++i) {
        incidence_[cursor[directed_[i].tail]++] = EdgeRef{EdgeKind::directed, i};
        incidence_[cursor[directed_[i].head]++] = EdgeRef{EdgeKind::directed, i};
    }
    for (int i = 0; i < static_cast<int>(undirected_.size()); ++i) {
        incidence_[cursor[undirected_[i].a]++] = EdgeRef{EdgeKind::undirected, i};
        incidence_[cursor[undirected_[i].b]++] = EdgeRef{EdgeKind::undirected, i};
    }
}

std::span<const EdgeRef> MixedGraph::incident(Vertex v) const {
    return {incidence_.data() + incidence_offsets_[v],
            incidence_.data() + incidence_offsets_[v + 1]};
}

std::pair<Vertex, Vertex> MixedGraph::endpoints(EdgeRef e) const {
    if (e.kind == EdgeKind::directed) {
        return {directed_[e.index].tail, directed_[e.index].head};
    }
    return {undirected_[e.index].a, undirected_[e.index].b};
}

int PartialOrientation::assigned_count() const {
    int count = 0;
    for (const auto& a : arcs_) {
        count += a.from >= 0;
    }
    return count;
}

std::optional<OrientationViolation> validate_orientation(const MixedGraph& graph,
                                                         const PartialOrientation& partial,
                                                         bool require_total) {
    if (partial.edge_count() != graph.undirected_count()) {
        return OrientationViolation{-1, "orientation covers " +
                                            std::to_string(partial.edge_count()) +
                                            " edges, graph has " +
                                            std::to_string(graph.undirected_count())};
    }
    for (int id = 0; id < graph.undirected_count(); ++id) {
        if (!partial.assigned(id)) {
            if (require_total) {
                return OrientationViolation{id, "unassigned edge"};
            }
            continue;
        }
        const Arc& arc = partial.arc(id);
        const UndirectedEdge& e = graph.undirected(id);
        const bool forward = arc.from == e.a && arc.to == e.b;
        const bool backward = arc.from == e.b && arc.to == e.a;
        if (!forward && !backward) {
            return OrientationViolation{id, "endpoint mismatch"};
        }
    }
    return std::nullopt;
}

std::optional<OrientationViolation> validate_orientation(const MixedGraph& graph,
                                                         const Orientation& orientation) {
    PartialOrientation partial(static_cast<int>(orientation.arcs.size()));
    for (std::size_t id = 0; id < orientation.arcs.size(); ++id) {
        partial.assign(static_cast<int>(id), orientation.arcs[id]);
    }
    return validate_orientation(graph, partial, /*require_total=*/true);
}

Orientation to_orientation(const PartialOrientation& partial) {
    Orientation result;
    result.arcs.reserve(partial.edge_count());
    for (int id = 0; id < partial.edge_count(); ++id) {
        if (!partial.assigned(id)) {
            throw ContractViolation("to_orientation: edge " + std::to_string(id) +
                                    " unassigned");
        }
        result.arcs.push_back(partial.arc(id));
    }
    return result;
}

PartialOrientation to_partial(const Orientation& orientation) {
    PartialOrientation partial(static_cast<int>(orientation.arcs.size()));
    for (std::size_t id = 0; id < orientation.arcs.size(); ++id) {
        partial.assign(static_cast<int>(id), orientation.arcs[id]);
    }
    return partial;
}

void reachable_mask(const MixedGraph& graph, const PartialOrientation& partial,
                    Vertex s, std::vector<char>& mask) {
    if (s < 0 || s >= graph.vertex_count()) {
        throw ContractViolation("reachable_mask: start vertex out of range");
    }
    mask.assign(graph.vertex_count(), 0);
    std::vector<Vertex> stack{s};
    mask[s] = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (const EdgeRef& e : graph.incident(v)) {
            Vertex next = -1;
            if (e.kind == EdgeKind::directed) {
                const DirectedEdge& d = graph.directed(e.index);
                if (d.tail == v) {
                    next = d.head;
                }
            } else {
                const UndirectedEdge& u = graph.undirected(e.index);
                if (!partial.assigned(e.index)) {
                    next = other_endpoint(u, v);
                } else if (partial.arc(e.index).from == v) {
                    next = partial.arc(e.index).to;
                }
            }
            if (next >= 0 && !mask[next]) {
                mask[next] = 1;
                stack.push_back(next);
            }
        }
    }
}

std::vector<Vertex> reachable_set(const MixedGraph& graph,
                                  const PartialOrientation& partial, Vertex s) {
    std::vector<char> mask;
    reachable_mask(graph, partial, s, mask);
    std::vector<Vertex> result;
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
        if (mask[v]) {
            result.push_back(v);
        }
    }
    return result;
}

SatisfactionResult count_satisfied(const MixedGraph& graph, const Orientation& orientation,
                                   const std::vector<Request>& requests) {
    if (auto violation = validate_orientation(graph, orientation)) {
        throw ContractViolation("count_satisfied: invalid orientation (edge " +
                                std::to_string(violation->edge_id) + ": " +
                                violation->reason + ")");
    }
    const PartialOrientation partial = to_partial(orientation);
    SatisfactionResult result;
    result.flags.assign(requests.size(), 0);
    // One reachability sweep per distinct source.
    std::vector<char> mask;
    Vertex cached_source = -1;
    std::vector<int> order(requests.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return requests[lhs].source < requests[rhs].source;
    });
    for (int idx : order) {
        const Request& r = requests[idx];
        if (r.source != cached_source) {
            reachable_mask(graph, partial, r.source, mask);
            cached_source = r.source;
        }
        if (mask[r.target]) {
            result.flags[idx] = 1;
            ++result.count;
        }
    }
    return result;
}

}  // namespace mgo
