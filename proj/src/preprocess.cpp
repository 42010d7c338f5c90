#include "mgo/preprocess.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace mgo {

namespace {

// Mixed BFS from s to t that may not use `excluded`. Returns the step list.
std::optional<std::vector<PathStep>> bfs_avoiding(const MixedGraph& graph, Vertex s, Vertex t,
                                                  EdgeRef excluded) {
    std::vector<int> parent_vertex(graph.vertex_count(), -1);
    std::vector<EdgeRef> parent_edge(graph.vertex_count(), EdgeRef{EdgeKind::directed, -1});
    std::vector<char> seen(graph.vertex_count(), 0);
    std::deque<Vertex> queue{s};
    seen[s] = 1;
    while (!queue.empty() && !seen[t]) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (const EdgeRef& e : graph.incident(v)) {
            if (e == excluded) {
                continue;
            }
            Vertex next = -1;
            if (e.kind == EdgeKind::directed) {
                if (graph.directed(e.index).tail == v) {
                    next = graph.directed(e.index).head;
                }
            } else {
                next = other_endpoint(graph.undirected(e.index), v);
            }
            if (next >= 0 && !seen[next]) {
                seen[next] = 1;
                parent_vertex[next] = v;
                parent_edge[next] = e;
                queue.push_back(next);
            }
        }
    }
    if (!seen[t]) {
        return std::nullopt;
    }
    std::vector<PathStep> reversed;
    for (Vertex v = t; v != s; v = parent_vertex[v]) {
        reversed.push_back(PathStep{parent_edge[v], parent_vertex[v], v});
    }
    return std::vector<PathStep>(reversed.rbegin(), reversed.rend());
}

}  // namespace

std::optional<ProperCycle> find_proper_cycle(const MixedGraph& graph) {
    for (int i = 0; i < graph.directed_count(); ++i) {
        const DirectedEdge& e = graph.directed(i);
        const EdgeRef ref{EdgeKind::directed, i};
        if (auto back = bfs_avoiding(graph, e.head, e.tail, ref)) {
            ProperCycle cycle;
            cycle.steps.push_back(PathStep{ref, e.tail, e.head});
            cycle.steps.insert(cycle.steps.end(), back->begin(), back->end());
            return cycle;
        }
    }
    for (int i = 0; i < graph.undirected_count(); ++i) {
        const UndirectedEdge& e = graph.undirected(i);
        const EdgeRef ref{EdgeKind::undirected, i};
        for (const auto& [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
            if (auto back = bfs_avoiding(graph, to, from, ref)) {
                ProperCycle cycle;
                cycle.steps.push_back(PathStep{ref, from, to});
                cycle.steps.insert(cycle.steps.end(), back->begin(), back->end());
                return cycle;
            }
        }
    }
    return std::nullopt;
}

namespace {

// Contraction working state: a graph over supervertices whose edges remember
// their original indices. Representatives are original vertex ids (minimum of
// the merged set); the dense re-numbering happens once at the end.
struct WorkGraph {
    std::vector<Vertex> rep;           // original vertex -> representative
    std::vector<Vertex> active;        // sorted representatives
    struct WorkEdge {
        int origin;                    // index/id in the original graph
        Vertex u, v;                   // representative endpoints (original coords for arcs)
        Vertex orig_u, orig_v;         // original endpoints, orientation reference
    };
    std::vector<WorkEdge> directed;    // u = tail rep, v = head rep
    std::vector<WorkEdge> undirected;

    MixedGraph build_dense(std::vector<int>& dense_of_rep) const {
        dense_of_rep.assign(rep.size(), -1);
        for (std::size_t i = 0; i < active.size(); ++i) {
            dense_of_rep[active[i]] = static_cast<int>(i);
        }
        std::vector<DirectedEdge> d;
        d.reserve(directed.size());
        for (const auto& e : directed) {
            d.push_back({dense_of_rep[e.u], dense_of_rep[e.v]});
        }
        std::vector<UndirectedEdge> u;
        u.reserve(undirected.size());
        for (const auto& e : undirected) {
            u.push_back({dense_of_rep[e.u], dense_of_rep[e.v]});
        }
        return MixedGraph(static_cast<int>(active.size()), std::move(d), std::move(u));
    }
};

}  // namespace

PreprocessResult contract_cycles(const MixedGraph& graph, const std::vector<Request>& requests) {
    ContractionRecord record;
    record.original_vertex_count = graph.vertex_count();
    record.original_undirected_count = graph.undirected_count();

    WorkGraph work;
    work.rep.resize(graph.vertex_count());
    work.active.resize(graph.vertex_count());
    for (Vertex v = 0; v < graph.vertex_count(); ++v) {
        work.rep[v] = v;
        work.active[v] = v;
    }
    for (int i = 0; i < graph.directed_count(); ++i) {
        const auto& e = graph.directed(i);
        work.directed.push_back({i, e.tail, e.head, e.tail, e.head});
    }
    for (int i = 0; i < graph.undirected_count(); ++i) {
        const auto& e = graph.undirected(i);
        work.undirected.push_back({i, e.a, e.b, e.a, e.b});
    }

    std::map<int, Arc> internal;  // original undirected id -> chosen arc
    while (true) {
        std::vector<int> dense_of_rep;
        const MixedGraph current = work.build_dense(dense_of_rep);
        auto cycle = find_proper_cycle(current);
        if (!cycle) {
            break;
        }

        // Translate the cycle to original coordinates and record it.
        ProperCycle original_step;
        std::vector<char> merged(work.rep.size(), 0);
        for (const PathStep& step : cycle->steps) {
            const auto& list =
                step.edge.kind == EdgeKind::directed ? work.directed : work.undirected;
            const WorkGraph::WorkEdge& we = list[step.edge.index];
            const Vertex from_rep = work.active[step.from];
            const bool forward = dense_of_rep[we.u] == step.from;
            Vertex orig_from = forward ? we.orig_u : we.orig_v;
            Vertex orig_to = forward ? we.orig_v : we.orig_u;
            original_step.steps.push_back(
                PathStep{EdgeRef{step.edge.kind, we.origin}, orig_from, orig_to});
            if (step.edge.kind == EdgeKind::undirected) {
                internal.emplace(we.origin, Arc{orig_from, orig_to});
            }
            merged[from_rep] = 1;
            merged[work.active[step.to]] = 1;
        }
        record.steps.push_back(std::move(original_step));

        // Merge the cycle's representatives into the minimum one.
        Vertex target_rep = -1;
        for (Vertex r : work.active) {
            if (merged[r]) {
                target_rep = r;
                break;
            }
        }
        for (Vertex v = 0; v < static_cast<Vertex>(work.rep.size()); ++v) {
            if (merged[work.rep[v]]) {
                work.rep[v] = target_rep;
            }
        }
        std::vector<Vertex> next_active;
        for (Vertex r : work.active) {
            if (!merged[r] || r == target_rep) {
                next_active.push_back(r);
            }
        }
        internal_check(next_active.size() < work.active.size(),
                       "every contraction step must shrink the graph");
        work.active = std::move(next_active);

        // Re-point surviving edges; edges collapsing to self-loops are dropped.
        // Dropped undirected edges that were not on the cycle get the default
        // lower-to-higher direction (the supervertex is strongly connected, so
        // any direction preserves satisfaction).
        auto sweep = [&](std::vector<WorkGraph::WorkEdge>& edges, bool undirected_kind) {
            std::vector<WorkGraph::WorkEdge> kept;
            for (WorkGraph::WorkEdge e : edges) {
                e.u = work.rep[e.u];
                e.v = work.rep[e.v];
                if (e.u == e.v) {
                    if (undirected_kind) {
                        internal.emplace(e.origin, Arc{std::min(e.orig_u, e.orig_v),
                                                       std::max(e.orig_u, e.orig_v)});
                    }
                    continue;
                }
                kept.push_back(e);
            }
            edges = std::move(kept);
        };
        sweep(work.directed, false);
        sweep(work.undirected, true);
    }

    // Final dense numbering: representatives in ascending order.
    std::vector<int> dense_of_rep(work.rep.size(), -1);
    for (std::size_t i = 0; i < work.active.size(); ++i) {
        dense_of_rep[work.active[i]] = static_cast<int>(i);
    }
    record.vertex_map.resize(work.rep.size());
    for (Vertex v = 0; v < static_cast<Vertex>(work.rep.size()); ++v) {
        record.vertex_map[v] = dense_of_rep[work.rep[v]];
    }
    record.internal_orientation.assign(internal.begin(), internal.end());
    for (const auto& e : work.directed) {
        record.directed_origin.push_back(e.origin);
    }
    for (const auto& e : work.undirected) {
        record.undirected_origin.push_back(e.origin);
    }

    PreprocessResult result;
    std::vector<int> unused;
    result.graph = work.build_dense(unused);
    for (const Request& r : requests) {
        const Vertex s = record.vertex_map[r.source];
        const Vertex t = record.vertex_map[r.target];
        if (s == t) {
            record.auto_satisfied.push_back(r.id);
        } else {
            result.requests.push_back(Request{r.id, s, t});
        }
    }
    result.record = std::move(record);
    return result;
}

Orientation lift_orientation(const MixedGraph& original, const ContractionRecord& record,
                             const Orientation& contracted) {
    if (original.vertex_count() != record.original_vertex_count ||
        original.undirected_count() != record.original_undirected_count) {
        throw ContractViolation("lift_orientation: record does not match the original graph");
    }
    if (static_cast<int>(contracted.arcs.size()) !=
        static_cast<int>(record.undirected_origin.size())) {
        throw ContractViolation("lift_orientation: orientation does not match the record");
    }
    PartialOrientation lifted(original.undirected_count());
    for (std::size_t j = 0; j < record.undirected_origin.size(); ++j) {
        const int origin = record.undirected_origin[j];
        const UndirectedEdge& e = original.undirected(origin);
        const Arc& arc = contracted.arcs[j];
        const Vertex ma = record.vertex_map[e.a];
        const Vertex mb = record.vertex_map[e.b];
        if (arc.from == ma && arc.to == mb) {
            lifted.assign(origin, Arc{e.a, e.b});
        } else if (arc.from == mb && arc.to == ma) {
            lifted.assign(origin, Arc{e.b, e.a});
        } else {
            throw ContractViolation("lift_orientation: arc on contracted edge " +
                                    std::to_string(j) + " does not match its endpoints");
        }
    }
    for (const auto& [origin, arc] : record.internal_orientation) {
        lifted.assign(origin, arc);
    }
    internal_check(lifted.total(), "lifted orientation must cover every original edge");
    return to_orientation(lifted);
}

}  // namespace mgo
