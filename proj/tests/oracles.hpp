// Test-only reference implementations. Everything here recomputes results by
// brute force along a different route than the library code under test.
#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "mgo/graph.hpp"
#include "mgo/local_orient.hpp"
#include "mgo/pathfinding.hpp"
#include "mgo/preprocess.hpp"

namespace oracle {

// Reachability via boolean-matrix transitive closure by repeated squaring;
// shares nothing with the library's BFS.
inline std::vector<char> closure_reachable(const mgo::MixedGraph& graph,
                                           const mgo::PartialOrientation& partial,
                                           mgo::Vertex s) {
    const int n = graph.vertex_count();
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (int v = 0; v < n; ++v) {
        reach[v][v] = 1;
    }
    for (const auto& e : graph.directed_edges()) {
        reach[e.tail][e.head] = 1;
    }
    for (int id = 0; id < graph.undirected_count(); ++id) {
        const auto& e = graph.undirected(id);
        if (partial.assigned(id)) {
            reach[partial.arc(id).from][partial.arc(id).to] = 1;
        } else {
            reach[e.a][e.b] = 1;
            reach[e.b][e.a] = 1;
        }
    }
    for (int round = 0; (1 << round) <= n; ++round) {
        std::vector<std::vector<char>> next = reach;
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) {
                if (!reach[i][k]) {
                    continue;
                }
                for (int j = 0; j < n; ++j) {
                    if (reach[k][j]) {
                        next[i][j] = 1;
                    }
                }
            }
        }
        reach = std::move(next);
    }
    return reach[s];
}

inline bool closure_satisfied(const mgo::MixedGraph& graph, const mgo::Orientation& orientation,
                              const mgo::Request& request) {
    return closure_reachable(graph, mgo::to_partial(orientation), request.source)
        [request.target] != 0;
}

// Minimum s-t length over all simple mixed paths, or -1; exhaustive DFS.
inline int enumerate_shortest_length(const mgo::MixedGraph& graph, mgo::Vertex s,
                                     mgo::Vertex t) {
    int best = -1;
    std::vector<char> visited(graph.vertex_count(), 0);
    auto dfs = [&](auto&& self, mgo::Vertex v, int length) -> void {
        if (v == t) {
            if (best < 0 || length < best) {
                best = length;
            }
            return;
        }
        visited[v] = 1;
        for (const mgo::EdgeRef& e : graph.incident(v)) {
            mgo::Vertex next = -1;
            if (e.kind == mgo::EdgeKind::directed) {
                if (graph.directed(e.index).tail == v) {
                    next = graph.directed(e.index).head;
                }
            } else {
                next = mgo::other_endpoint(graph.undirected(e.index), v);
            }
            if (next >= 0 && !visited[next]) {
                self(self, next, length + 1);
            }
        }
        visited[v] = 0;
    };
    dfs(dfs, s, 0);
    return best;
}

// True when some edge-distinct closed walk (directed edges forward) uses
// `start`. Exhaustive walk enumeration; small graphs only.
inline bool edge_on_some_proper_cycle(const mgo::MixedGraph& graph, mgo::EdgeRef start) {
    std::set<std::pair<int, int>> used;
    auto key = [](const mgo::EdgeRef& e) {
        return std::pair{static_cast<int>(e.kind), e.index};
    };
    auto walk = [&](auto&& self, mgo::Vertex origin, mgo::Vertex at) -> bool {
        if (at == origin) {
            return used.size() >= 2;
        }
        for (const mgo::EdgeRef& e : graph.incident(at)) {
            if (used.count(key(e))) {
                continue;
            }
            mgo::Vertex next = -1;
            if (e.kind == mgo::EdgeKind::directed) {
                if (graph.directed(e.index).tail == at) {
                    next = graph.directed(e.index).head;
                }
            } else {
                next = mgo::other_endpoint(graph.undirected(e.index), at);
            }
            if (next < 0) {
                continue;
            }
            used.insert(key(e));
            if (self(self, origin, next)) {
                return true;
            }
            used.erase(key(e));
        }
        return false;
    };
    if (start.kind == mgo::EdgeKind::directed) {
        const auto& e = graph.directed(start.index);
        used = {key(start)};
        return walk(walk, e.tail, e.head);
    }
    const auto& e = graph.undirected(start.index);
    for (const auto& [from, to] : {std::pair{e.a, e.b}, std::pair{e.b, e.a}}) {
        used = {key(start)};
        if (walk(walk, from, to)) {
            return true;
        }
    }
    return false;
}

inline int brute_max_independent_set(int n, const std::vector<std::pair<int, int>>& edges) {
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        for (const auto& [a, b] : edges) {
            if (((mask >> a) & 1u) && ((mask >> b) & 1u)) {
                independent = false;
                break;
            }
        }
        if (independent) {
            best = std::max(best, __builtin_popcount(mask));
        }
    }
    return best;
}

inline int brute_max_dicut(int n, const std::vector<std::pair<int, int>>& arcs) {
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int cut = 0;
        for (const auto& [u, w] : arcs) {
            cut += ((mask >> u) & 1u) && !((mask >> w) & 1u);
        }
        best = std::max(best, cut);
    }
    return best;
}

// Minimum feedback vertex set size over all vertex subsets.
inline int brute_min_fvs(const mgo::MixedGraph& graph) {
    const int n = graph.vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : graph.directed_edges()) {
        edges.emplace_back(e.tail, e.head);
    }
    for (const auto& e : graph.undirected_edges()) {
        edges.emplace_back(e.a, e.b);
    }
    auto forest_without = [&](unsigned removed) {
        std::vector<int> parent(n);
        for (int i = 0; i < n; ++i) {
            parent[i] = i;
        }
        auto find = [&](int x) {
            while (parent[x] != x) {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            return x;
        };
        for (const auto& [u, v] : edges) {
            if (((removed >> u) & 1u) || ((removed >> v) & 1u)) {
                continue;
            }
            const int ru = find(u), rv = find(v);
            if (ru == rv) {
                return false;
            }
            parent[ru] = rv;
        }
        return true;
    };
    int best = n;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) < best && forest_without(mask)) {
            best = __builtin_popcount(mask);
        }
    }
    return best;
}

// Exact treewidth as the best elimination order; factorial, keep n tiny.
inline int exhaustive_treewidth(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        order[i] = i;
    }
    int best = n;
    do {
        std::vector<std::set<int>> adj(n);
        for (const auto& [a, b] : edges) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        int width = 0;
        for (int v : order) {
            width = std::max(width, static_cast<int>(adj[v].size()));
            for (int u : adj[v]) {
                for (int w : adj[v]) {
                    if (u < w) {
                        adj[u].insert(w);
                        adj[w].insert(u);
                    }
                }
            }
            for (int u : adj[v]) {
                adj[u].erase(v);
            }
            adj[v].clear();
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

// Deterministic helpers for the random suites.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(unsigned long long seed) : gen(seed) {}
    int below(int n) { return static_cast<int>(gen() % static_cast<unsigned long long>(n)); }
    double unit() { return (gen() >> 11) * (1.0 / 9007199254740992.0); }
};

// Random mixed graph whose undirected version is a forest.
inline mgo::MixedGraph random_forest(Rng& rng, int n, double undirected_prob,
                                     double skip_prob) {
    std::vector<mgo::DirectedEdge> directed;
    std::vector<mgo::UndirectedEdge> undirected;
    for (int v = 1; v < n; ++v) {
        if (rng.unit() < skip_prob) {
            continue;  // v starts a new tree
        }
        const int parent = rng.below(v);
        if (rng.unit() < undirected_prob) {
            undirected.push_back(mgo::UndirectedEdge{parent, v});
        } else if (rng.unit() < 0.5) {
            directed.push_back(mgo::DirectedEdge{parent, v});
        } else {
            directed.push_back(mgo::DirectedEdge{v, parent});
        }
    }
    return mgo::MixedGraph(n, std::move(directed), std::move(undirected));
}

// Star test fixture: vertex 0 is the center, leaves 1..d. Requests are built
// only along traversable spokes, so no local path is pre-blocked.
struct StarInstance {
    mgo::MixedGraph graph;
    std::vector<mgo::Request> requests;
    int free_spokes = 0;
};

inline StarInstance random_star(Rng& rng, int max_free, int max_paths, bool allow_fixed) {
    const int free_count = 1 + rng.below(max_free);
    const int fixed_count = allow_fixed ? rng.below(4) : 0;
    std::vector<mgo::UndirectedEdge> undirected;
    std::vector<mgo::DirectedEdge> directed;
    std::vector<int> inward_leaves, outward_leaves;
    int leaf = 1;
    for (int i = 0; i < free_count; ++i, ++leaf) {
        undirected.push_back(mgo::UndirectedEdge{0, leaf});
        inward_leaves.push_back(leaf);
        outward_leaves.push_back(leaf);
    }
    for (int i = 0; i < fixed_count; ++i, ++leaf) {
        if (rng.below(2)) {
            directed.push_back(mgo::DirectedEdge{leaf, 0});
            inward_leaves.push_back(leaf);
        } else {
            directed.push_back(mgo::DirectedEdge{0, leaf});
            outward_leaves.push_back(leaf);
        }
    }
    StarInstance star;
    star.free_spokes = free_count;
    star.graph = mgo::MixedGraph(leaf, std::move(directed), std::move(undirected));
    const int path_count = 1 + rng.below(max_paths);
    for (int i = 0; i < path_count; ++i) {
        const int shape = rng.below(3);
        if (shape == 0) {
            const int entry = inward_leaves[rng.below(static_cast<int>(inward_leaves.size()))];
            int exit = outward_leaves[rng.below(static_cast<int>(outward_leaves.size()))];
            if (entry == exit) {
                // A spoke cannot carry both ends; fall back to a one-edge path.
                star.requests.push_back(mgo::Request{i, entry, 0});
                continue;
            }
            star.requests.push_back(mgo::Request{i, entry, exit});
        } else if (shape == 1) {
            const int entry = inward_leaves[rng.below(static_cast<int>(inward_leaves.size()))];
            star.requests.push_back(mgo::Request{i, entry, 0});
        } else {
            const int exit = outward_leaves[rng.below(static_cast<int>(outward_leaves.size()))];
            star.requests.push_back(mgo::Request{i, 0, exit});
        }
    }
    return star;
}

// Satisfied local-path index sets of a star, one per assignment of its free
// spokes (bit k of the assignment = k-th free spoke points outward).
inline std::vector<std::vector<int>> enumerate_star_satisfied(const mgo::LocalStar& star) {
    std::vector<int> free_spokes;
    for (std::size_t i = 0; i < star.spokes.size(); ++i) {
        if (!star.spokes[i].fixed) {
            free_spokes.push_back(static_cast<int>(i));
        }
    }
    std::vector<std::vector<int>> result;
    for (unsigned assignment = 0; assignment < (1u << free_spokes.size()); ++assignment) {
        std::vector<int> outward(star.spokes.size(), -1);
        for (std::size_t i = 0; i < star.spokes.size(); ++i) {
            if (star.spokes[i].fixed) {
                outward[i] = star.spokes[i].outward;
            }
        }
        for (std::size_t k = 0; k < free_spokes.size(); ++k) {
            outward[free_spokes[k]] = (assignment >> k) & 1u;
        }
        std::vector<int> satisfied;
        for (std::size_t p = 0; p < star.local_paths.size(); ++p) {
            const mgo::LocalPath& lp = star.local_paths[p];
            bool ok = true;
            if (lp.entry_spoke >= 0 && outward[lp.entry_spoke] != 0) {
                ok = false;
            }
            if (lp.exit_spoke >= 0 && outward[lp.exit_spoke] != 1) {
                ok = false;
            }
            if (ok) {
                satisfied.push_back(static_cast<int>(p));
            }
        }
        result.push_back(std::move(satisfied));
    }
    return result;
}

// Mixed-acyclic instance with a rich undirected part: an undirected forest
// plus random directed edges, each kept only when it creates no proper cycle.
// A fixed point of cycle contraction, with junctions of several free spokes.
inline mgo::MixedGraph random_acyclic_mixed(Rng& rng, int n, int directed_attempts) {
    std::vector<mgo::UndirectedEdge> undirected;
    for (int v = 1; v < n; ++v) {
        if (rng.unit() < 0.8) {
            undirected.push_back(mgo::UndirectedEdge{rng.below(v), v});
        }
    }
    std::vector<mgo::DirectedEdge> directed;
    for (int attempt = 0; attempt < directed_attempts; ++attempt) {
        const int u = rng.below(n);
        const int w = rng.below(n);
        if (u == w) {
            continue;
        }
        directed.push_back(mgo::DirectedEdge{u, w});
        if (!mgo::is_mixed_acyclic(mgo::MixedGraph(n, directed, undirected))) {
            directed.pop_back();
        }
    }
    return mgo::MixedGraph(n, std::move(directed), std::move(undirected));
}

inline std::vector<mgo::Request> random_requests(Rng& rng, int n, int count) {
    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s < n; ++s) {
        for (int t = 0; t < n; ++t) {
            if (s != t) {
                pairs.emplace_back(s, t);
            }
        }
    }
    std::vector<mgo::Request> requests;
    count = std::min<int>(count, static_cast<int>(pairs.size()));
    for (int i = 0; i < count; ++i) {
        std::swap(pairs[i], pairs[i + rng.below(static_cast<int>(pairs.size()) - i)]);
        requests.push_back(mgo::Request{i, pairs[i].first, pairs[i].second});
    }
    return requests;
}

}  // namespace oracle
