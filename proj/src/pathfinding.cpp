#include "mgo/pathfinding.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace mgo {

bool RoutedPath::crosses(Vertex v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

const Arc* RoutedPath::direction_on(int undirected_id) const {
    auto it = std::lower_bound(undirected_dirs.begin(), undirected_dirs.end(), undirected_id,
                               [](const auto& entry, int id) { return entry.first < id; });
    if (it != undirected_dirs.end() && it->first == undirected_id) {
        return &it->second;
    }
    return nullptr;
}

void finalize_path(RoutedPath& path) {
    path.vertices.clear();
    path.vertices.push_back(path.source);
    path.undirected_dirs.clear();
    for (const PathStep& step : path.steps) {
        assert(step.from == path.vertices.back());
        path.vertices.push_back(step.to);
        if (step.edge.kind == EdgeKind::undirected) {
            path.undirected_dirs.emplace_back(step.edge.index, Arc{step.from, step.to});
        }
    }
    std::sort(path.undirected_dirs.begin(), path.undirected_dirs.end(),
              [](const auto& lhs, const auto& rhs) { return lhs.first < rhs.first; });
#ifndef NDEBUG
    std::vector<Vertex> sorted = path.vertices;
    std::sort(sorted.begin(), sorted.end());
    assert(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
#endif
}

std::optional<RoutedPath> shortest_mixed_path(const MixedGraph& graph, Vertex s, Vertex t) {
    if (s < 0 || s >= graph.vertex_count() || t < 0 || t >= graph.vertex_count()) {
        throw ContractViolation("shortest_mixed_path: endpoint out of range");
    }
    RoutedPath path;
    path.source = s;
    path.target = t;
    if (s == t) {
        finalize_path(path);
        return path;
    }
    std::vector<int> parent_vertex(graph.vertex_count(), -1);
    std::vector<EdgeRef> parent_edge(graph.vertex_count(), EdgeRef{EdgeKind::directed, -1});
    std::vector<char> seen(graph.vertex_count(), 0);
    std::deque<Vertex> queue{s};
    seen[s] = 1;
    while (!queue.empty() && !seen[t]) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (const EdgeRef& e : graph.incident(v)) {
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
    path.steps.assign(reversed.rbegin(), reversed.rend());
    finalize_path(path);
    return path;
}

RoutingResult route_all(const MixedGraph& graph, const std::vector<Request>& requests) {
    RoutingResult result;
    for (const Request& r : requests) {
        if (r.source == r.target) {
            throw ContractViolation("route_all: request " + std::to_string(r.id) +
                                    " has equal endpoints; normalize first");
        }
        auto path = shortest_mixed_path(graph, r.source, r.target);
        if (path) {
            path->request_id = r.id;
            result.paths.push_back(std::move(*path));
        } else {
            result.unroutable.push_back(r.id);
        }
    }
    return result;
}

std::optional<ConflictWitness> in_conflict(const RoutedPath& p, const RoutedPath& q) {
    // Both direction lists are sorted by edge id; scan for the lowest shared
    // undirected edge oriented oppositely.
    auto pi = p.undirected_dirs.begin();
    auto qi = q.undirected_dirs.begin();
    while (pi != p.undirected_dirs.end() && qi != q.undirected_dirs.end()) {
        if (pi->first < qi->first) {
            ++pi;
        } else if (qi->first < pi->first) {
            ++qi;
        } else {
            if (!(pi->second == qi->second)) {
                return ConflictWitness{pi->first, pi->second, qi->second};
            }
            ++pi;
            ++qi;
        }
    }
    return std::nullopt;
}

ConflictInfo conflict_degrees(const std::vector<RoutedPath>& paths) {
    ConflictInfo info;
    info.degree.assign(paths.size(), 0);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            if (in_conflict(paths[i], paths[j])) {
                ++info.degree[i];
                ++info.degree[j];
                info.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return info;
}

}  // namespace mgo
