#include "mgo/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>

#include "mgo/preprocess.hpp"

namespace mgo {

namespace {

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

long long cube(long long x) { return x * x * x; }

int floor_log2(long long x) {
    int result = -1;
    while (x > 0) {
        ++result;
        x >>= 1;
    }
    return result;
}

void require_acyclic(const MixedGraph& graph, const std::string& algorithm) {
    if (!is_mixed_acyclic(graph)) {
        throw ContractViolation(algorithm + ": graph still has a proper mixed cycle; "
                                            "contract cycles first");
    }
}

Certificate make_certificate(const std::string& algorithm, const MixedGraph& graph,
                             const std::vector<Request>& requests,
                             const RoutingResult& routing) {
    Certificate cert;
    cert.algorithm = algorithm;
    cert.vertex_count = graph.vertex_count();
    cert.requests_total = static_cast<int>(requests.size());
    cert.routable = static_cast<int>(routing.paths.size());
    cert.unroutable = static_cast<int>(routing.unroutable.size());
    return cert;
}

SolveResult finish(const MixedGraph& graph, const std::vector<Request>& requests,
                   Orientation orientation, Certificate certificate, const Timer& timer) {
    SolveResult result;
    result.orientation = std::move(orientation);
    const SatisfactionResult sat = count_satisfied(graph, result.orientation, requests);
    for (std::size_t i = 0; i < requests.size(); ++i) {
        if (sat.flags[i]) {
            result.satisfied.push_back(requests[i].id);
        }
    }
    std::sort(result.satisfied.begin(), result.satisfied.end());
    result.certificate = std::move(certificate);
    result.wall_seconds = timer.seconds();
    return result;
}

bool contains_id(const std::vector<int>& sorted_ids, int id) {
    return std::binary_search(sorted_ids.begin(), sorted_ids.end(), id);
}

// Pending-path bookkeeping for the greedy solvers: degrees always count
// conflicts against pending paths only.
struct PendingPaths {
    std::vector<char> pending;
    std::vector<int> degree;
    std::vector<std::vector<int>> adjacency;
    int count = 0;

    explicit PendingPaths(const std::vector<RoutedPath>& paths) {
        const ConflictInfo info = conflict_degrees(paths);
        pending.assign(paths.size(), 1);
        degree = info.degree;
        adjacency.assign(paths.size(), {});
        for (const auto& [i, j] : info.pairs) {
            adjacency[i].push_back(j);
            adjacency[j].push_back(i);
        }
        count = static_cast<int>(paths.size());
    }

    void remove(int x) {
        pending[x] = 0;
        --count;
        for (int other : adjacency[x]) {
            if (pending[other]) {
                --degree[other];
            }
        }
    }
};

// Orients a path's undirected edges source-to-target into `partial`. A pending
// path can never disagree with an edge oriented earlier: a disagreeing path
// would have been discarded as a conflictor of whichever path fixed the edge.
void orient_path(PartialOrientation& partial, const RoutedPath& path) {
    for (const auto& [edge_id, arc] : path.undirected_dirs) {
        if (partial.assigned(edge_id)) {
            internal_check(partial.arc(edge_id) == arc,
                           "pending path disagrees with an already oriented edge");
        } else {
            partial.assign(edge_id, arc);
        }
    }
}

Vertex most_crossed_vertex(const MixedGraph& graph, const std::vector<RoutedPath>& paths,
                           const std::vector<char>& pending, int* crossing_out) {
    std::vector<int> crossing(graph.vertex_count(), 0);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (!pending[i]) {
            continue;
        }
        for (Vertex v : paths[i].vertices) {
            ++crossing[v];
        }
    }
    Vertex best = 0;
    for (Vertex v = 1; v < graph.vertex_count(); ++v) {
        if (crossing[v] > crossing[best]) {
            best = v;
        }
    }
    if (crossing_out != nullptr) {
        *crossing_out = crossing[best];
    }
    return best;
}

std::vector<const RoutedPath*> pending_paths_through(const std::vector<RoutedPath>& paths,
                                                     const std::vector<char>& pending,
                                                     Vertex v) {
    std::vector<const RoutedPath*> result;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        if (pending[i] && paths[i].crosses(v)) {
            result.push_back(&paths[i]);
        }
    }
    return result;
}

}  // namespace

SolveResult solve_greedy_cuberoot(const MixedGraph& graph, const std::vector<Request>& requests) {
    const Timer timer;
    require_acyclic(graph, "greedy_cuberoot");
    const RoutingResult routing = route_all(graph, requests);
    const std::vector<RoutedPath>& paths = routing.paths;
    Certificate cert = make_certificate("greedy_cuberoot", graph, requests, routing);

    const long long threshold = static_cast<long long>(graph.vertex_count()) * cert.routable;
    long long ceil_root = 0;
    while (cube(ceil_root) < threshold) {
        ++ceil_root;
    }

    PendingPaths state(paths);
    PartialOrientation partial(graph.undirected_count());
    std::vector<int> main_loop_ids;

    while (true) {
        int best = -1;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (!state.pending[i] || cube(state.degree[i]) >= threshold) {
                continue;
            }
            if (best < 0 || state.degree[i] < state.degree[best] ||
                (state.degree[i] == state.degree[best] &&
                 paths[i].request_id < paths[best].request_id)) {
                best = static_cast<int>(i);
            }
        }
        if (best < 0) {
            break;
        }
        std::vector<int> conflictors;
        for (int other : state.adjacency[best]) {
            if (state.pending[other]) {
                conflictors.push_back(other);
            }
        }
        internal_check(static_cast<int>(conflictors.size()) == state.degree[best],
                       "pending degree must match the live conflictor count");
        internal_check(cube(static_cast<long long>(conflictors.size())) < threshold,
                       "selected path exceeds the conflict threshold");
        internal_check(1 + static_cast<long long>(conflictors.size()) <= ceil_root,
                       "iteration removed more paths than the threshold allows");

        orient_path(partial, paths[best]);
        main_loop_ids.push_back(paths[best].request_id);
        state.remove(best);
        for (int q : conflictors) {
            state.remove(q);
        }
        ++cert.iterations;
        cert.per_iteration_discards.push_back(static_cast<int>(conflictors.size()));
        cert.discards_total += static_cast<long long>(conflictors.size());
        cert.max_iteration_removals =
            std::max(cert.max_iteration_removals, 1 + static_cast<int>(conflictors.size()));
    }

    cert.main_loop_satisfied = static_cast<int>(main_loop_ids.size());
    cert.pending_final = state.count;
    internal_check(cert.main_loop_satisfied + cert.discards_total + cert.pending_final ==
                       cert.routable,
                   "main-loop accounting must cover every routable path");
    internal_check(static_cast<long long>(cert.main_loop_satisfied) * ceil_root >=
                       cert.routable - cert.pending_final,
                   "main loop satisfied less than its share of the handled paths");

    Orientation orientation;
    std::vector<int> local_ids;
    if (state.count > 0) {
        long long min_degree = -1;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            if (state.pending[i] &&
                (min_degree < 0 || state.degree[i] < min_degree)) {
                min_degree = state.degree[i];
            }
        }
        cert.exit_min_pending_degree = min_degree;
        internal_check(cube(min_degree) >= threshold,
                       "main loop exited while an orientable path remained");

        int crossing = 0;
        const Vertex junction = most_crossed_vertex(graph, paths, state.pending, &crossing);
        const auto through = pending_paths_through(paths, state.pending, junction);
        internal_check(static_cast<int>(through.size()) == crossing,
                       "junction crossing count mismatch");
        LocalSolveResult local = local_solve(graph, partial, junction, through);
        internal_check(local.pre_blocked == 0,
                       "pending paths must agree with every fixed edge");
        internal_check(4 * static_cast<int>(local.satisfied_requests.size()) >= crossing,
                       "local phase fell below a quarter of the crossing paths");
        cert.local_phase_run = true;
        cert.junction_vertex = junction;
        cert.junction_crossing = crossing;
        cert.local_satisfied = static_cast<int>(local.satisfied_requests.size());
        cert.pre_blocked = local.pre_blocked;
        local_ids = std::move(local.satisfied_requests);
        orientation = std::move(local.orientation);
    } else {
        orientation = extend_to_global(graph, partial, {});
    }

    SolveResult result = finish(graph, requests, std::move(orientation), std::move(cert), timer);
    for (int id : main_loop_ids) {
        internal_check(contains_id(result.satisfied, id),
                       "main-loop path lost its satisfaction");
    }
    for (int id : local_ids) {
        internal_check(contains_id(result.satisfied, id), "local path lost its satisfaction");
    }
    if (result.certificate.local_phase_run) {
        internal_check(static_cast<int>(result.satisfied.size()) >=
                           result.certificate.main_loop_satisfied +
                               (result.certificate.junction_crossing + 3) / 4,
                       "total satisfied below the combined guarantee");
    }
    return result;
}

SolveResult solve_greedy_delta(const MixedGraph& graph, const std::vector<Request>& requests) {
    const Timer timer;
    require_acyclic(graph, "greedy_delta");
    const RoutingResult routing = route_all(graph, requests);
    const std::vector<RoutedPath>& paths = routing.paths;
    Certificate cert = make_certificate("greedy_delta", graph, requests, routing);

    for (const RoutedPath& p : paths) {
        cert.delta = std::max(cert.delta, p.length());
    }
    const long long threshold = static_cast<long long>(cert.delta) * cert.routable;

    // Consider paths in ascending request id.
    std::vector<int> order(paths.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return paths[lhs].request_id < paths[rhs].request_id;
    });

    PendingPaths state(paths);
    PartialOrientation partial(graph.undirected_count());
    std::vector<int> main_loop_ids;
    std::vector<int> local_ids;
    Orientation orientation;
    bool have_orientation = false;

    for (int index : order) {
        if (!state.pending[index]) {
            continue;
        }
        const long long conflicts = state.degree[index];
        if (conflicts * conflicts > threshold) {
            // Too contested: finish at the most-crossed vertex of this path.
            int best_crossing = 0;
            Vertex junction = -1;
            std::vector<int> crossing(graph.vertex_count(), 0);
            for (std::size_t i = 0; i < paths.size(); ++i) {
                if (!state.pending[i]) {
                    continue;
                }
                for (Vertex v : paths[i].vertices) {
                    ++crossing[v];
                }
            }
            for (Vertex v : paths[index].vertices) {
                if (crossing[v] > best_crossing) {
                    best_crossing = crossing[v];
                    junction = v;
                }
            }
            // With conflicts > sqrt(delta*|P|) spread over at most delta
            // edges, some vertex of the path collects at least
            // sqrt(|P|/delta) pending paths.
            internal_check(junction >= 0 && static_cast<long long>(best_crossing) *
                                                    best_crossing * cert.delta >=
                                                cert.routable,
                           "abort vertex misses the pigeonhole crossing bound");
            const auto through = pending_paths_through(paths, state.pending, junction);
            LocalSolveResult local = local_solve(graph, partial, junction, through);
            internal_check(local.pre_blocked == 0,
                           "pending paths must agree with every fixed edge");
            cert.aborted_to_local = true;
            cert.local_phase_run = true;
            cert.junction_vertex = junction;
            cert.junction_crossing = best_crossing;
            cert.local_satisfied = static_cast<int>(local.satisfied_requests.size());
            cert.pending_final = state.count;
            local_ids = std::move(local.satisfied_requests);
            orientation = std::move(local.orientation);
            have_orientation = true;
            break;
        }
        std::vector<int> conflictors;
        for (int other : state.adjacency[index]) {
            if (state.pending[other]) {
                conflictors.push_back(other);
            }
        }
        orient_path(partial, paths[index]);
        main_loop_ids.push_back(paths[index].request_id);
        state.remove(index);
        for (int q : conflictors) {
            state.remove(q);
        }
        ++cert.iterations;
        cert.per_iteration_discards.push_back(static_cast<int>(conflictors.size()));
        cert.discards_total += static_cast<long long>(conflictors.size());
        cert.max_iteration_removals =
            std::max(cert.max_iteration_removals, 1 + static_cast<int>(conflictors.size()));
    }

    cert.main_loop_satisfied = static_cast<int>(main_loop_ids.size());
    if (!cert.aborted_to_local) {
        cert.pending_final = state.count;
        internal_check(state.count == 0, "every path must be handled without an abort");
        orientation = extend_to_global(graph, partial, {});
        have_orientation = true;
    }
    internal_check(have_orientation, "solver must produce an orientation");
    internal_check(cert.main_loop_satisfied + cert.discards_total + cert.pending_final ==
                       cert.routable,
                   "greedy accounting must cover every routable path");

    SolveResult result = finish(graph, requests, std::move(orientation), std::move(cert), timer);
    for (int id : main_loop_ids) {
        internal_check(contains_id(result.satisfied, id),
                       "main-loop path lost its satisfaction");
    }
    for (int id : local_ids) {
        internal_check(contains_id(result.satisfied, id), "local path lost its satisfaction");
    }
    return result;
}

namespace {

// A star to solve: the paths of one class collection, all crossing `center`.
struct Collection {
    Vertex center = -1;
    int node = -1;  // decomposition node that produced it, -1 for vertex trees
    std::vector<const RoutedPath*> paths;
};

struct SolvedCollection {
    const Collection* source;
    std::vector<const RoutedPath*> satisfied;
    std::vector<std::pair<int, Arc>> directions;  // union of satisfied paths, sorted
};

std::vector<std::pair<int, Arc>> direction_union(const std::vector<const RoutedPath*>& paths) {
    std::map<int, Arc> dirs;
    for (const RoutedPath* p : paths) {
        for (const auto& [id, arc] : p->undirected_dirs) {
            auto [it, inserted] = dirs.emplace(id, arc);
            internal_check(inserted || it->second == arc,
                           "satisfied paths of one star disagree on an edge");
        }
    }
    return {dirs.begin(), dirs.end()};
}

bool directions_compatible(const std::map<int, Arc>& merged,
                           const std::vector<std::pair<int, Arc>>& candidate) {
    for (const auto& [id, arc] : candidate) {
        auto it = merged.find(id);
        if (it != merged.end() && !(it->second == arc)) {
            return false;
        }
    }
    return true;
}

struct MergedClass {
    std::vector<const RoutedPath*> satisfied;
    int total_paths = 0;
    int best_single = 0;
};

// Solves every collection as a star and greedily merges the compatible ones,
// largest yield first. Collections from different centers of one level sit in
// vertex-disjoint subtrees, so the first collection of every center always
// merges; when `all_disjoint` is set every collection must merge.
MergedClass merge_class(const MixedGraph& graph, const std::vector<Collection>& collections,
                        bool all_disjoint) {
    MergedClass result;
    std::vector<SolvedCollection> solved;
    solved.reserve(collections.size());
    for (const Collection& c : collections) {
        result.total_paths += static_cast<int>(c.paths.size());
        int pre_blocked = 0;
        SolvedCollection s;
        s.source = &c;
        s.satisfied = star_satisfied_paths(graph, PartialOrientation(graph.undirected_count()),
                                           c.center, c.paths, &pre_blocked);
        internal_check(pre_blocked == 0, "class collection has a blocked path");
        internal_check(4 * static_cast<int>(s.satisfied.size()) >=
                           static_cast<int>(c.paths.size()),
                       "collection star fell below a quarter of its paths");
        s.directions = direction_union(s.satisfied);
        result.best_single =
            std::max(result.best_single, static_cast<int>(s.satisfied.size()));
        solved.push_back(std::move(s));
    }

    std::vector<int> order(solved.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return solved[lhs].satisfied.size() > solved[rhs].satisfied.size();
    });

    std::map<int, Arc> merged_dirs;
    std::map<int, bool> center_merged;  // node-or-center key -> seen a merge
    for (int idx : order) {
        const SolvedCollection& s = solved[idx];
        const int key = s.source->node >= 0 ? s.source->node : s.source->center;
        const bool first_of_center = !center_merged.count(key);
        if (directions_compatible(merged_dirs, s.directions)) {
            for (const auto& [id, arc] : s.directions) {
                merged_dirs.emplace(id, arc);
            }
            result.satisfied.insert(result.satisfied.end(), s.satisfied.begin(),
                                    s.satisfied.end());
            center_merged[key] = true;
        } else {
            internal_check(!all_disjoint,
                           "collections in vertex-disjoint subtrees conflicted");
            internal_check(!first_of_center,
                           "a center's largest collection failed to merge");
        }
    }
    internal_check(static_cast<int>(result.satisfied.size()) >= result.best_single,
                   "merged class fell below its best single collection");
    return result;
}

// Vertex-centroid classification of paths inside a forest. `allowed` masks
// the forest's vertices; each path must stay inside them.
std::vector<std::vector<Collection>> tree_centroid_levels(
    const MixedGraph& graph, const std::vector<char>& allowed,
    const std::vector<const RoutedPath*>& paths) {
    const int n = graph.vertex_count();
    std::vector<std::vector<int>> adjacency(n);
    for (const auto& e : graph.directed_edges()) {
        if (allowed[e.tail] && allowed[e.head]) {
            adjacency[e.tail].push_back(e.head);
            adjacency[e.head].push_back(e.tail);
        }
    }
    for (const auto& e : graph.undirected_edges()) {
        if (allowed[e.a] && allowed[e.b]) {
            adjacency[e.a].push_back(e.b);
            adjacency[e.b].push_back(e.a);
        }
    }
    for (auto& list : adjacency) {
        std::sort(list.begin(), list.end());
    }

    // Components, by ascending smallest vertex.
    std::vector<int> component(n, -1);
    std::vector<std::vector<int>> components;
    for (Vertex v = 0; v < n; ++v) {
        if (!allowed[v] || component[v] >= 0) {
            continue;
        }
        const int id = static_cast<int>(components.size());
        std::vector<int> stack{v};
        component[v] = id;
        std::vector<int> members;
        while (!stack.empty()) {
            const int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int next : adjacency[x]) {
                if (component[next] < 0) {
                    component[next] = id;
                    stack.push_back(next);
                }
            }
        }
        std::sort(members.begin(), members.end());
        components.push_back(std::move(members));
    }

    struct Frame {
        std::vector<int> vertices;
        std::vector<const RoutedPath*> paths;
        int level;
    };
    std::vector<Frame> stack;
    {
        std::vector<std::vector<const RoutedPath*>> per_component(components.size());
        for (const RoutedPath* p : paths) {
            for (Vertex v : p->vertices) {
                internal_check(allowed[v], "path leaves the forest it was classified into");
            }
            per_component[component[p->vertices.front()]].push_back(p);
        }
        for (std::size_t i = 0; i < components.size(); ++i) {
            if (!per_component[i].empty()) {
                stack.push_back(Frame{components[i], std::move(per_component[i]), 0});
            }
        }
    }

    std::vector<std::vector<Collection>> levels;
    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        const Vertex center = centroid(adjacency, frame.vertices);
        Collection collection;
        collection.center = center;
        std::vector<const RoutedPath*> leftover;
        for (const RoutedPath* p : frame.paths) {
            if (p->crosses(center)) {
                collection.paths.push_back(p);
            } else {
                leftover.push_back(p);
            }
        }
        if (!collection.paths.empty()) {
            if (static_cast<int>(levels.size()) <= frame.level) {
                levels.resize(frame.level + 1);
            }
            levels[frame.level].push_back(std::move(collection));
        }

        if (leftover.empty()) {
            continue;
        }
        // Split the subtree at the centroid and confine the leftovers.
        std::vector<int> sub_component(n, -1);
        std::vector<std::vector<int>> sub_components;
        std::vector<char> in_frame(n, 0);
        for (int v : frame.vertices) {
            in_frame[v] = 1;
        }
        for (int v : frame.vertices) {
            if (v == center || sub_component[v] >= 0) {
                continue;
            }
            const int id = static_cast<int>(sub_components.size());
            std::vector<int> bfs{v};
            sub_component[v] = id;
            std::vector<int> members;
            while (!bfs.empty()) {
                const int x = bfs.back();
                bfs.pop_back();
                members.push_back(x);
                for (int next : adjacency[x]) {
                    if (in_frame[next] && next != center && sub_component[next] < 0) {
                        sub_component[next] = id;
                        bfs.push_back(next);
                    }
                }
            }
            std::sort(members.begin(), members.end());
            sub_components.push_back(std::move(members));
        }
        std::vector<std::vector<const RoutedPath*>> per_sub(sub_components.size());
        for (const RoutedPath* p : leftover) {
            const int id = sub_component[p->vertices.front()];
            internal_check(id >= 0, "leftover path lost its subtree");
            per_sub[id].push_back(p);
        }
        for (std::size_t i = 0; i < sub_components.size(); ++i) {
            if (!per_sub[i].empty()) {
                stack.push_back(
                    Frame{sub_components[i], std::move(per_sub[i]), frame.level + 1});
            }
        }
    }
    return levels;
}

struct LevelOutcome {
    std::vector<MergedClass> classes;
    int best_level = -1;
    int total_paths = 0;
};

LevelOutcome solve_levels(const MixedGraph& graph,
                          const std::vector<std::vector<Collection>>& levels,
                          bool all_disjoint) {
    LevelOutcome outcome;
    for (std::size_t level = 0; level < levels.size(); ++level) {
        MergedClass merged = merge_class(graph, levels[level], all_disjoint);
        outcome.total_paths += merged.total_paths;
        if (outcome.best_level < 0 ||
            merged.satisfied.size() >
                outcome.classes[outcome.best_level].satisfied.size()) {
            outcome.best_level = static_cast<int>(level);
        }
        outcome.classes.push_back(std::move(merged));
    }
    return outcome;
}

}  // namespace

SolveResult solve_tree_centroid(const MixedGraph& graph, const std::vector<Request>& requests) {
    const Timer timer;
    if (!undirected_version_is_forest(graph)) {
        throw ContractViolation(
            "tree_centroid: the undirected version of the graph is not a forest");
    }
    const RoutingResult routing = route_all(graph, requests);
    Certificate cert = make_certificate("tree_centroid", graph, requests, routing);

    std::vector<const RoutedPath*> path_ptrs;
    for (const RoutedPath& p : routing.paths) {
        path_ptrs.push_back(&p);
    }
    const std::vector<char> allowed(graph.vertex_count(), 1);
    const auto levels = tree_centroid_levels(graph, allowed, path_ptrs);
    const LevelOutcome outcome = solve_levels(graph, levels, /*all_disjoint=*/true);

    cert.levels = static_cast<int>(levels.size());
    for (const auto& merged : outcome.classes) {
        cert.class_sizes.push_back(merged.total_paths);
    }
    cert.chosen_class = outcome.best_level;
    internal_check(outcome.total_paths == cert.routable,
                   "level classes must cover every routable path exactly once");
    if (graph.vertex_count() > 0) {
        internal_check(cert.levels <= floor_log2(graph.vertex_count()) + 1,
                       "centroid recursion exceeded its depth bound");
    }

    Orientation orientation;
    std::vector<int> guaranteed;
    if (outcome.best_level >= 0) {
        const MergedClass& best = outcome.classes[outcome.best_level];
        cert.local_satisfied = static_cast<int>(best.satisfied.size());
        cert.local_phase_run = true;
        internal_check(cert.routable <=
                           4 * cert.levels * static_cast<int>(best.satisfied.size()),
                       "best level fell below the logarithmic share");
        orientation =
            extend_to_global(graph, PartialOrientation(graph.undirected_count()), best.satisfied);
        for (const RoutedPath* p : best.satisfied) {
            guaranteed.push_back(p->request_id);
        }
    } else {
        orientation = extend_to_global(graph, PartialOrientation(graph.undirected_count()), {});
    }

    SolveResult result = finish(graph, requests, std::move(orientation), std::move(cert), timer);
    for (int id : guaranteed) {
        internal_check(contains_id(result.satisfied, id), "class path lost its satisfaction");
    }
    return result;
}

SolveResult solve_fvs(const MixedGraph& graph, const std::vector<Request>& requests,
                      const FeedbackVertexSet& fvs) {
    const Timer timer;
    validate_fvs(graph, fvs.vertices);
    require_acyclic(graph, "fvs");
    std::vector<Vertex> order = fvs.vertices;
    std::sort(order.begin(), order.end());

    const RoutingResult routing = route_all(graph, requests);
    Certificate cert = make_certificate("fvs", graph, requests, routing);
    cert.fvs_size = static_cast<int>(order.size());

    // Class j: paths whose first feedback vertex (in ascending order) is
    // order[j]; the last class collects the paths avoiding the set entirely.
    std::vector<std::vector<const RoutedPath*>> classes(order.size() + 1);
    for (const RoutedPath& p : routing.paths) {
        int assigned = static_cast<int>(order.size());
        for (std::size_t j = 0; j < order.size(); ++j) {
            if (p.crosses(order[j])) {
                assigned = static_cast<int>(j);
                break;
            }
        }
        classes[assigned].push_back(&p);
    }
    int covered = 0;
    for (const auto& c : classes) {
        cert.class_sizes.push_back(static_cast<int>(c.size()));
        covered += static_cast<int>(c.size());
    }
    internal_check(covered == cert.routable,
                   "feedback classes must cover every routable path exactly once");

    struct Option {
        std::vector<const RoutedPath*> satisfied;
        int levels = 0;
    };
    std::vector<Option> options(classes.size());
    for (std::size_t j = 0; j + 1 < classes.size(); ++j) {
        if (classes[j].empty()) {
            continue;
        }
        int pre_blocked = 0;
        options[j].satisfied =
            star_satisfied_paths(graph, PartialOrientation(graph.undirected_count()), order[j],
                                 classes[j], &pre_blocked);
        internal_check(pre_blocked == 0, "feedback class has a blocked path");
        internal_check(4 * static_cast<int>(options[j].satisfied.size()) >=
                           static_cast<int>(classes[j].size()),
                       "feedback class star fell below a quarter of its paths");
    }
    if (!classes.back().empty()) {
        std::vector<char> allowed(graph.vertex_count(), 1);
        for (Vertex v : order) {
            allowed[v] = 0;
        }
        const auto levels = tree_centroid_levels(graph, allowed, classes.back());
        const LevelOutcome outcome = solve_levels(graph, levels, /*all_disjoint=*/true);
        internal_check(outcome.total_paths == static_cast<int>(classes.back().size()),
                       "forest classes must cover every avoiding path");
        options.back().levels = static_cast<int>(levels.size());
        if (outcome.best_level >= 0) {
            options.back().satisfied = outcome.classes[outcome.best_level].satisfied;
        }
    }

    int chosen = 0;
    for (std::size_t j = 1; j < options.size(); ++j) {
        if (options[j].satisfied.size() > options[chosen].satisfied.size()) {
            chosen = static_cast<int>(j);
        }
    }
    cert.chosen_class = chosen;
    cert.levels = options.back().levels;
    cert.local_phase_run = true;
    cert.local_satisfied = static_cast<int>(options[chosen].satisfied.size());
    if (cert.routable > 0) {
        internal_check(cert.routable <=
                           4 * (cert.fvs_size + cert.levels) * cert.local_satisfied,
                       "best feedback option fell below its share");
    }

    Orientation orientation = extend_to_global(
        graph, PartialOrientation(graph.undirected_count()), options[chosen].satisfied);
    std::vector<int> guaranteed;
    for (const RoutedPath* p : options[chosen].satisfied) {
        guaranteed.push_back(p->request_id);
    }

    SolveResult result = finish(graph, requests, std::move(orientation), std::move(cert), timer);
    for (int id : guaranteed) {
        internal_check(contains_id(result.satisfied, id), "class path lost its satisfaction");
    }
    return result;
}

SolveResult solve_treewidth(const MixedGraph& graph, const std::vector<Request>& requests,
                            const TreeDecomposition& decomposition) {
    const Timer timer;
    validate_decomposition(graph, decomposition);
    require_acyclic(graph, "treewidth");
    const RoutingResult routing = route_all(graph, requests);
    Certificate cert = make_certificate("treewidth", graph, requests, routing);
    cert.width = decomposition.width();

    const auto tree_adj = decomposition.tree_adjacency();
    const int bag_count = static_cast<int>(decomposition.bags.size());

    struct Frame {
        std::vector<int> nodes;
        std::vector<const RoutedPath*> paths;
        int level;
    };
    std::vector<Frame> stack;
    {
        std::vector<const RoutedPath*> all;
        for (const RoutedPath& p : routing.paths) {
            all.push_back(&p);
        }
        if (bag_count > 0 && !all.empty()) {
            std::vector<int> nodes(bag_count);
            std::iota(nodes.begin(), nodes.end(), 0);
            stack.push_back(Frame{std::move(nodes), std::move(all), 0});
        }
    }

    auto bag_contains = [&](int node, Vertex v) {
        const auto& bag = decomposition.bags[node];
        return std::binary_search(bag.begin(), bag.end(), v);
    };
    auto path_hits_bag = [&](const RoutedPath& p, int node) {
        for (Vertex v : p.vertices) {
            if (bag_contains(node, v)) {
                return true;
            }
        }
        return false;
    };

    std::vector<std::vector<Collection>> levels;
    std::vector<std::vector<int>> level_nodes;
    std::vector<std::vector<const RoutedPath*>> level_paths;
    while (!stack.empty()) {
        Frame frame = std::move(stack.back());
        stack.pop_back();
        const int node = centroid(tree_adj, frame.nodes);
        if (static_cast<int>(levels.size()) <= frame.level) {
            levels.resize(frame.level + 1);
            level_nodes.resize(frame.level + 1);
            level_paths.resize(frame.level + 1);
        }
        level_nodes[frame.level].push_back(node);

        const auto& bag = decomposition.bags[node];
        std::vector<std::vector<const RoutedPath*>> per_vertex(bag.size());
        std::vector<const RoutedPath*> leftover;
        for (const RoutedPath* p : frame.paths) {
            int first = -1;
            for (std::size_t j = 0; j < bag.size(); ++j) {
                if (p->crosses(bag[j])) {
                    first = static_cast<int>(j);
                    break;
                }
            }
            if (first >= 0) {
                per_vertex[first].push_back(p);
                level_paths[frame.level].push_back(p);
            } else {
                leftover.push_back(p);
            }
        }
        for (std::size_t j = 0; j < bag.size(); ++j) {
            if (!per_vertex[j].empty()) {
                Collection c;
                c.center = bag[j];
                c.node = node;
                c.paths = std::move(per_vertex[j]);
                levels[frame.level].push_back(std::move(c));
            }
        }
        if (leftover.empty()) {
            continue;
        }

        // Components of the bag tree after removing this node.
        std::vector<char> in_frame(bag_count, 0);
        for (int b : frame.nodes) {
            in_frame[b] = 1;
        }
        std::vector<int> sub_id(bag_count, -1);
        std::vector<std::vector<int>> subs;
        for (int b : frame.nodes) {
            if (b == node || sub_id[b] >= 0) {
                continue;
            }
            const int id = static_cast<int>(subs.size());
            std::vector<int> bfs{b};
            sub_id[b] = id;
            std::vector<int> members;
            while (!bfs.empty()) {
                const int x = bfs.back();
                bfs.pop_back();
                members.push_back(x);
                for (int next : tree_adj[x]) {
                    if (in_frame[next] && next != node && sub_id[next] < 0) {
                        sub_id[next] = id;
                        bfs.push_back(next);
                    }
                }
            }
            std::sort(members.begin(), members.end());
            subs.push_back(std::move(members));
        }
        std::vector<std::vector<const RoutedPath*>> per_sub(subs.size());
        for (const RoutedPath* p : leftover) {
            // Every bag holding any vertex of p lies in one component.
            int home = -1;
            const Vertex anchor = p->vertices.front();
            for (std::size_t s = 0; s < subs.size() && home < 0; ++s) {
                for (int b : subs[s]) {
                    if (bag_contains(b, anchor)) {
                        home = static_cast<int>(s);
                        break;
                    }
                }
            }
            internal_check(home >= 0, "unassigned path lost its decomposition subtree");
            per_sub[home].push_back(p);
        }
        for (std::size_t s = 0; s < subs.size(); ++s) {
            if (!per_sub[s].empty()) {
                stack.push_back(Frame{subs[s], std::move(per_sub[s]), frame.level + 1});
            }
        }
    }

    // Each classified path must see exactly one of its level's centroid bags.
    for (std::size_t level = 0; level < levels.size(); ++level) {
        for (const RoutedPath* p : level_paths[level]) {
            int hits = 0;
            for (int node : level_nodes[level]) {
                hits += path_hits_bag(*p, node);
            }
            internal_check(hits == 1, "a path crossed bags of two same-level centroids");
        }
    }

    const LevelOutcome outcome = solve_levels(graph, levels, /*all_disjoint=*/false);
    cert.levels = static_cast<int>(levels.size());
    for (const auto& merged : outcome.classes) {
        cert.class_sizes.push_back(merged.total_paths);
    }
    cert.chosen_class = outcome.best_level;
    internal_check(outcome.total_paths == cert.routable,
                   "decomposition classes must cover every routable path exactly once");
    if (bag_count > 0) {
        internal_check(cert.levels <= floor_log2(bag_count) + 1,
                       "centroid recursion exceeded its depth bound");
    }

    Orientation orientation;
    std::vector<int> guaranteed;
    if (outcome.best_level >= 0) {
        const MergedClass& best = outcome.classes[outcome.best_level];
        cert.local_phase_run = true;
        cert.local_satisfied = static_cast<int>(best.satisfied.size());
        internal_check(4 * (cert.width + 1) * static_cast<int>(best.satisfied.size()) >=
                           best.total_paths,
                       "best class fell below its width share");
        internal_check(cert.routable <= 4 * (cert.width + 1) * cert.levels *
                                            static_cast<int>(best.satisfied.size()),
                       "best class fell below the global width share");
        orientation =
            extend_to_global(graph, PartialOrientation(graph.undirected_count()), best.satisfied);
        for (const RoutedPath* p : best.satisfied) {
            guaranteed.push_back(p->request_id);
        }
    } else {
        orientation = extend_to_global(graph, PartialOrientation(graph.undirected_count()), {});
    }

    SolveResult result = finish(graph, requests, std::move(orientation), std::move(cert), timer);
    for (int id : guaranteed) {
        internal_check(contains_id(result.satisfied, id), "class path lost its satisfaction");
    }
    return result;
}

namespace {

// Bit-parallel reachability evaluator for graphs with at most 64 vertices.
struct MaskEvaluator {
    int n;
    std::vector<std::uint64_t> base_out;
    struct SourceGroup {
        Vertex source;
        std::vector<Vertex> targets;  // with multiplicity, to honor duplicates
    };
    std::vector<SourceGroup> groups;

    MaskEvaluator(const MixedGraph& graph, const std::vector<Request>& requests)
        : n(graph.vertex_count()), base_out(graph.vertex_count(), 0) {
        for (const auto& e : graph.directed_edges()) {
            base_out[e.tail] |= 1ull << e.head;
        }
        std::map<Vertex, std::vector<Vertex>> by_source;
        for (const Request& r : requests) {
            by_source[r.source].push_back(r.target);
        }
        for (auto& [s, targets] : by_source) {
            groups.push_back({s, std::move(targets)});
        }
    }

    int count(const MixedGraph& graph, std::uint64_t direction_bits,
              std::vector<std::uint64_t>& out) const {
        out = base_out;
        for (int id = 0; id < graph.undirected_count(); ++id) {
            const UndirectedEdge& e = graph.undirected(id);
            const bool reversed = (direction_bits >> id) & 1ull;
            const Vertex from = reversed ? e.b : e.a;
            const Vertex to = reversed ? e.a : e.b;
            out[from] |= 1ull << to;
        }
        int satisfied = 0;
        for (const SourceGroup& g : groups) {
            std::uint64_t reach = 1ull << g.source;
            std::uint64_t frontier = reach;
            while (frontier != 0) {
                const int v = __builtin_ctzll(frontier);
                frontier &= frontier - 1;
                const std::uint64_t fresh = out[v] & ~reach;
                reach |= fresh;
                frontier |= fresh;
            }
            for (Vertex t : g.targets) {
                satisfied += (reach >> t) & 1ull;
            }
        }
        return satisfied;
    }
};

// Counts distinct satisfied requests (duplicates included) the slow way.
int slow_orientation_count(const MixedGraph& graph, std::uint64_t direction_bits,
                           const std::vector<Request>& requests) {
    PartialOrientation partial(graph.undirected_count());
    for (int id = 0; id < graph.undirected_count(); ++id) {
        const UndirectedEdge& e = graph.undirected(id);
        const bool reversed = (direction_bits >> id) & 1ull;
        partial.assign(id, reversed ? Arc{e.b, e.a} : Arc{e.a, e.b});
    }
    return count_satisfied(graph, to_orientation(partial), requests).count;
}

// True when `lhs` precedes `rhs` in lexicographic bit order (bit 0 first,
// clear before set).
bool lex_smaller(std::uint64_t lhs, std::uint64_t rhs) {
    const std::uint64_t diff = lhs ^ rhs;
    if (diff == 0) {
        return false;
    }
    const int bit = __builtin_ctzll(diff);
    return ((lhs >> bit) & 1ull) == 0;
}

}  // namespace

SolveResult solve_exact(const MixedGraph& graph, const std::vector<Request>& requests,
                        int undirected_cap) {
    const Timer timer;
    const int m = graph.undirected_count();
    if (m > undirected_cap) {
        throw CapExceeded("exact solver limited to " + std::to_string(undirected_cap) +
                          " undirected edges, instance has " + std::to_string(m));
    }
    Certificate cert;
    cert.algorithm = "exact";
    cert.vertex_count = graph.vertex_count();
    cert.requests_total = static_cast<int>(requests.size());
    cert.routable = cert.requests_total;
    cert.enumerated = 1ll << m;

    std::uint64_t best_bits = 0;
    int best_count = -1;
    if (graph.vertex_count() <= 64) {
        const MaskEvaluator evaluator(graph, requests);
        std::vector<std::uint64_t> scratch;
        for (std::uint64_t bits = 0; bits < (1ull << m); ++bits) {
            const int count = evaluator.count(graph, bits, scratch);
            if (count > best_count ||
                (count == best_count && lex_smaller(bits, best_bits))) {
                best_count = count;
                best_bits = bits;
            }
        }
    } else {
        for (std::uint64_t bits = 0; bits < (1ull << m); ++bits) {
            const int count = slow_orientation_count(graph, bits, requests);
            if (count > best_count ||
                (count == best_count && lex_smaller(bits, best_bits))) {
                best_count = count;
                best_bits = bits;
            }
        }
    }

    PartialOrientation partial(m);
    for (int id = 0; id < m; ++id) {
        const UndirectedEdge& e = graph.undirected(id);
        const bool reversed = (best_bits >> id) & 1ull;
        partial.assign(id, reversed ? Arc{e.b, e.a} : Arc{e.a, e.b});
    }
    const Orientation orientation = to_orientation(partial);
    internal_check(count_satisfied(graph, orientation, requests).count == best_count,
                   "exact enumeration disagrees with the verifier");
    return finish(graph, requests, orientation, std::move(cert), timer);
}

SolveResult solve_fixed_paths(const FixedPathInstance& instance, FixedPathMode mode,
                              int exact_cap) {
    const Timer timer;
    const MixedGraph& graph = instance.graph;
    const int k = static_cast<int>(instance.mandated_paths.size());
    Certificate cert;
    cert.algorithm = mode == FixedPathMode::exact ? "fixed_paths_exact" : "fixed_paths_greedy";
    cert.vertex_count = graph.vertex_count();
    cert.requests_total = static_cast<int>(instance.requests.size());
    cert.routable = k;

    if (mode == FixedPathMode::exact && k > exact_cap) {
        throw CapExceeded("exact fixed-path solver limited to " + std::to_string(exact_cap) +
                          " paths, instance has " + std::to_string(k));
    }
    if (k > 64) {
        throw CapExceeded("fixed-path solver limited to 64 paths");
    }

    std::vector<std::uint64_t> adjacency(k, 0);
    const ConflictInfo info = conflict_degrees(instance.mandated_paths);
    for (const auto& [i, j] : info.pairs) {
        adjacency[i] |= 1ull << j;
        adjacency[j] |= 1ull << i;
    }

    std::uint64_t chosen = 0;
    if (mode == FixedPathMode::exact) {
        // Branch and bound over independent sets; first-found maximum wins.
        std::uint64_t best = 0;
        int best_size = 0;
        const std::uint64_t all = k == 64 ? ~0ull : (1ull << k) - 1;
        struct Frame {
            std::uint64_t candidates;
            std::uint64_t set;
            int size;
        };
        std::vector<Frame> stack{{all, 0, 0}};
        bool have_best = false;
        while (!stack.empty()) {
            const Frame frame = stack.back();
            stack.pop_back();
            if (have_best && frame.size + __builtin_popcountll(frame.candidates) <= best_size) {
                continue;
            }
            if (frame.candidates == 0) {
                if (!have_best || frame.size > best_size) {
                    best_size = frame.size;
                    best = frame.set;
                    have_best = true;
                }
                continue;
            }
            const int v = __builtin_ctzll(frame.candidates);
            const std::uint64_t bit = 1ull << v;
            // Explore exclusion after inclusion (stack order), so inclusion
            // is expanded first.
            stack.push_back(Frame{frame.candidates & ~bit, frame.set, frame.size});
            stack.push_back(Frame{frame.candidates & ~(adjacency[v] | bit),
                                  frame.set | bit, frame.size + 1});
        }
        chosen = best;
        cert.enumerated = best_size;
    } else {
        std::uint64_t alive = k == 64 ? ~0ull : (1ull << k) - 1;
        while (alive != 0) {
            int pick = -1;
            int pick_degree = 0;
            for (int i = 0; i < k; ++i) {
                if (!((alive >> i) & 1ull)) {
                    continue;
                }
                const int degree = __builtin_popcountll(adjacency[i] & alive);
                if (pick < 0 || degree < pick_degree) {
                    pick = i;
                    pick_degree = degree;
                }
            }
            chosen |= 1ull << pick;
            alive &= ~(adjacency[pick] | (1ull << pick));
        }
    }

    std::vector<const RoutedPath*> chosen_paths;
    for (int i = 0; i < k; ++i) {
        if ((chosen >> i) & 1ull) {
            chosen_paths.push_back(&instance.mandated_paths[i]);
        }
    }
    cert.main_loop_satisfied = static_cast<int>(chosen_paths.size());
    const Orientation orientation = extend_to_global(
        graph, PartialOrientation(graph.undirected_count()), chosen_paths);

    // Fixed-path satisfaction: the mandated path must be oriented end to end.
    SolveResult result;
    result.orientation = orientation;
    for (int i = 0; i < k; ++i) {
        const RoutedPath& p = instance.mandated_paths[i];
        bool oriented = true;
        for (const auto& [id, arc] : p.undirected_dirs) {
            if (!(orientation.arcs[id] == arc)) {
                oriented = false;
                break;
            }
        }
        if (oriented) {
            result.satisfied.push_back(p.request_id);
        }
    }
    std::sort(result.satisfied.begin(), result.satisfied.end());
    for (const RoutedPath* p : chosen_paths) {
        internal_check(contains_id(result.satisfied, p->request_id),
                       "chosen fixed path lost its orientation");
    }
    // Reachability is implied by a fully oriented path.
    const SatisfactionResult reach = count_satisfied(graph, orientation, instance.requests);
    for (std::size_t i = 0; i < instance.requests.size(); ++i) {
        if (contains_id(result.satisfied, instance.requests[i].id)) {
            internal_check(reach.flags[i] != 0, "oriented fixed path is not reachable");
        }
    }
    result.certificate = std::move(cert);
    result.wall_seconds = timer.seconds();
    return result;
}

FixedPathInstance make_fixed_path_instance(MixedGraph graph, std::vector<Request> requests,
                                           const std::vector<std::vector<Vertex>>& vertex_paths) {
    if (requests.size() != vertex_paths.size()) {
        throw InputError("fixed-path instance needs one path per request");
    }
    FixedPathInstance instance;
    instance.graph = std::move(graph);
    instance.requests = std::move(requests);
    for (std::size_t i = 0; i < vertex_paths.size(); ++i) {
        const Request& r = instance.requests[i];
        const std::vector<Vertex>& seq = vertex_paths[i];
        if (r.source == r.target) {
            throw InputError("fixed-path request " + std::to_string(r.id) +
                             " has equal endpoints");
        }
        if (seq.size() < 2 || seq.front() != r.source || seq.back() != r.target) {
            throw InputError("fixed path of request " + std::to_string(r.id) +
                             " does not connect its endpoints");
        }
        RoutedPath path;
        path.request_id = r.id;
        path.source = r.source;
        path.target = r.target;
        std::vector<char> visited(instance.graph.vertex_count(), 0);
        for (std::size_t step = 0; step + 1 < seq.size(); ++step) {
            const Vertex from = seq[step];
            const Vertex to = seq[step + 1];
            if (from < 0 || from >= instance.graph.vertex_count() || to < 0 ||
                to >= instance.graph.vertex_count()) {
                throw InputError("fixed path of request " + std::to_string(r.id) +
                                 " leaves the vertex range");
            }
            if (visited[from]) {
                throw InputError("fixed path of request " + std::to_string(r.id) +
                                 " revisits vertex " + std::to_string(from));
            }
            visited[from] = 1;
            // Prefer a directed edge; otherwise the lowest-id undirected one.
            EdgeRef edge{EdgeKind::directed, -1};
            for (const EdgeRef& e : instance.graph.incident(from)) {
                if (e.kind == EdgeKind::directed) {
                    const DirectedEdge& d = instance.graph.directed(e.index);
                    if (d.tail == from && d.head == to) {
                        edge = e;
                        break;
                    }
                } else if (edge.index < 0) {
                    const UndirectedEdge& u = instance.graph.undirected(e.index);
                    if (other_endpoint(u, from) == to &&
                        (edge.index < 0 || e.index < edge.index)) {
                        edge = e;
                    }
                }
            }
            if (edge.index < 0) {
                throw InputError("fixed path of request " + std::to_string(r.id) +
                                 " uses a missing edge {" + std::to_string(from) + "," +
                                 std::to_string(to) + "}");
            }
            path.steps.push_back(PathStep{edge, from, to});
        }
        finalize_path(path);
        instance.mandated_paths.push_back(std::move(path));
    }
    return instance;
}

}  // namespace mgo
