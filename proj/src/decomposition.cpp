#include "mgo/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace mgo {

namespace {

// Simple undirected adjacency of the graph's undirected version, deduplicated.
std::vector<std::set<Vertex>> simple_adjacency(const MixedGraph& graph) {
    std::vector<std::set<Vertex>> adj(graph.vertex_count());
    auto add = [&](Vertex u, Vertex v) {
        adj[u].insert(v);
        adj[v].insert(u);
    };
    for (const auto& e : graph.directed_edges()) {
        add(e.tail, e.head);
    }
    for (const auto& e : graph.undirected_edges()) {
        add(e.a, e.b);
    }
    return adj;
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    // Returns false when x and y were already connected.
    bool unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x == y) {
            return false;
        }
        parent[x] = y;
        return true;
    }
};

// All edges of the undirected version as endpoint pairs.
std::vector<std::pair<Vertex, Vertex>> undirected_version_edges(const MixedGraph& graph) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(graph.directed_count() + graph.undirected_count());
    for (const auto& e : graph.directed_edges()) {
        edges.emplace_back(e.tail, e.head);
    }
    for (const auto& e : graph.undirected_edges()) {
        edges.emplace_back(e.a, e.b);
    }
    return edges;
}

bool deleting_leaves_forest(const MixedGraph& graph, const std::vector<char>& removed) {
    UnionFind uf(graph.vertex_count());
    for (const auto& [u, v] : undirected_version_edges(graph)) {
        if (removed[u] || removed[v]) {
            continue;
        }
        if (!uf.unite(u, v)) {
            return false;
        }
    }
    return true;
}

}  // namespace

int TreeDecomposition::width() const {
    int max_bag = 0;
    for (const auto& bag : bags) {
        max_bag = std::max(max_bag, static_cast<int>(bag.size()));
    }
    return max_bag - 1;
}

std::vector<std::vector<int>> TreeDecomposition::tree_adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (const auto& [a, b] : tree_edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& list : adj) {
        std::sort(list.begin(), list.end());
    }
    return adj;
}

TreeDecomposition tree_decomposition_min_fill(const MixedGraph& graph) {
    const int n = graph.vertex_count();
    TreeDecomposition result;
    if (n == 0) {
        return result;
    }
    std::vector<std::set<Vertex>> adj = simple_adjacency(graph);
    std::vector<char> eliminated(n, 0);
    std::vector<int> elimination_order;
    std::vector<int> bag_of(n, -1);  // vertex -> bag created when it was eliminated

    for (int round = 0; round < n; ++round) {
        // Pick the vertex whose elimination adds the fewest fill edges.
        int best = -1;
        long long best_fill = -1;
        for (Vertex v = 0; v < n; ++v) {
            if (eliminated[v]) {
                continue;
            }
            long long fill = 0;
            for (auto it = adj[v].begin(); it != adj[v].end(); ++it) {
                for (auto jt = std::next(it); jt != adj[v].end(); ++jt) {
                    if (!adj[*it].count(*jt)) {
                        ++fill;
                    }
                }
            }
            if (best < 0 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }

        std::vector<Vertex> bag(adj[best].begin(), adj[best].end());
        bag.push_back(best);
        std::sort(bag.begin(), bag.end());
        bag_of[best] = static_cast<int>(result.bags.size());
        result.bags.push_back(std::move(bag));
        elimination_order.push_back(best);

        for (Vertex u : adj[best]) {
            for (Vertex w : adj[best]) {
                if (u < w) {
                    adj[u].insert(w);
                    adj[w].insert(u);
                }
            }
        }
        for (Vertex u : adj[best]) {
            adj[u].erase(best);
        }
        adj[best].clear();
        eliminated[best] = 1;
    }

    // Bag i connects to the bag of the earliest-eliminated later neighbor;
    // components without one are chained to the previous root to keep a tree.
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) {
        position[elimination_order[i]] = i;
    }
    int previous_root = -1;
    for (int i = 0; i < n; ++i) {
        const Vertex v = elimination_order[i];
        const auto& bag = result.bags[i];
        int parent = -1;
        for (Vertex u : bag) {
            if (u == v) {
                continue;
            }
            if (parent < 0 || position[u] < position[parent]) {
                parent = u;
            }
        }
        if (parent >= 0) {
            result.tree_edges.emplace_back(i, bag_of[parent]);
        } else if (previous_root >= 0) {
            result.tree_edges.emplace_back(previous_root, i);
            previous_root = i;
        } else {
            previous_root = i;
        }
    }
    validate_decomposition(graph, result);
    return result;
}

void validate_decomposition(const MixedGraph& graph, const TreeDecomposition& decomposition) {
    const int n = graph.vertex_count();
    const int bag_count = static_cast<int>(decomposition.bags.size());
    for (const auto& bag : decomposition.bags) {
        for (Vertex v : bag) {
            if (v < 0 || v >= n) {
                throw ValidationError("decomposition: bag vertex " + std::to_string(v) +
                                      " out of range");
            }
        }
    }
    for (const auto& [a, b] : decomposition.tree_edges) {
        if (a < 0 || a >= bag_count || b < 0 || b >= bag_count) {
            throw ValidationError("decomposition: tree edge endpoint out of range");
        }
    }

    // The bag graph must be a tree (or empty alongside an empty graph).
    if (bag_count > 0) {
        if (static_cast<int>(decomposition.tree_edges.size()) != bag_count - 1) {
            throw ValidationError("decomposition: bag tree must have exactly " +
                                  std::to_string(bag_count - 1) + " edges");
        }
        UnionFind uf(bag_count);
        for (const auto& [a, b] : decomposition.tree_edges) {
            if (!uf.unite(a, b)) {
                throw ValidationError("decomposition: bag tree contains a cycle");
            }
        }
    }

    std::vector<char> covered(n, 0);
    for (const auto& bag : decomposition.bags) {
        for (Vertex v : bag) {
            covered[v] = 1;
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (!covered[v]) {
            throw ValidationError("decomposition property (1): vertex " + std::to_string(v) +
                                  " is in no bag");
        }
    }

    auto bag_contains = [&](int bag, Vertex v) {
        const auto& b = decomposition.bags[bag];
        return std::binary_search(b.begin(), b.end(), v);
    };
    for (const auto& [u, v] : undirected_version_edges(graph)) {
        bool found = false;
        for (int i = 0; i < bag_count && !found; ++i) {
            found = bag_contains(i, u) && bag_contains(i, v);
        }
        if (!found) {
            throw ValidationError("decomposition property (2): edge {" + std::to_string(u) +
                                  "," + std::to_string(v) + "} has no common bag");
        }
    }

    const auto tree_adj = decomposition.tree_adjacency();
    for (Vertex v = 0; v < n; ++v) {
        std::vector<int> holding;
        for (int i = 0; i < bag_count; ++i) {
            if (bag_contains(i, v)) {
                holding.push_back(i);
            }
        }
        if (holding.empty()) {
            continue;
        }
        // BFS within the holding set.
        std::vector<char> in_holding(bag_count, 0);
        for (int b : holding) {
            in_holding[b] = 1;
        }
        std::deque<int> queue{holding.front()};
        std::vector<char> seen(bag_count, 0);
        seen[holding.front()] = 1;
        int reached = 0;
        while (!queue.empty()) {
            const int b = queue.front();
            queue.pop_front();
            ++reached;
            for (int next : tree_adj[b]) {
                if (in_holding[next] && !seen[next]) {
                    seen[next] = 1;
                    queue.push_back(next);
                }
            }
        }
        if (reached != static_cast<int>(holding.size())) {
            throw ValidationError("decomposition property (3): bags holding vertex " +
                                  std::to_string(v) + " are not connected");
        }
    }
}

int centroid(const std::vector<std::vector<int>>& tree_adjacency,
             const std::vector<int>& node_subset) {
    if (node_subset.empty()) {
        throw ContractViolation("centroid: empty subset");
    }
    const int total = static_cast<int>(node_subset.size());
    std::vector<char> in_subset(tree_adjacency.size(), 0);
    for (int v : node_subset) {
        in_subset[v] = 1;
    }

    // Subtree sizes via an iterative rooted traversal; also checks
    // connectivity of the induced subtree.
    const int root = *std::min_element(node_subset.begin(), node_subset.end());
    std::vector<int> parent(tree_adjacency.size(), -2);
    std::vector<int> order;
    order.reserve(total);
    parent[root] = -1;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int next : tree_adjacency[v]) {
            if (in_subset[next] && parent[next] == -2) {
                parent[next] = v;
                stack.push_back(next);
            }
        }
    }
    if (static_cast<int>(order.size()) != total) {
        throw ContractViolation("centroid: subset does not induce a connected subtree");
    }
    std::vector<int> size(tree_adjacency.size(), 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (parent[*it] >= 0) {
            size[parent[*it]] += size[*it];
        }
    }

    int best = -1;
    int best_worst = total + 1;
    for (int v : node_subset) {
        int worst = total - size[v];  // component holding the parent
        for (int next : tree_adjacency[v]) {
            if (in_subset[next] && parent[next] == v) {
                worst = std::max(worst, size[next]);
            }
        }
        if (worst < best_worst || (worst == best_worst && v < best)) {
            best = v;
            best_worst = worst;
        }
    }
    internal_check(2 * best_worst <= total + 1,
                   "centroid removal must halve the subtree");
    return best;
}

FeedbackVertexSet feedback_vertex_set_heuristic(const MixedGraph& graph) {
    const int n = graph.vertex_count();
    const auto edges = undirected_version_edges(graph);
    std::vector<char> removed(n, 0);
    FeedbackVertexSet result;
    result.method = FeedbackVertexSet::Method::heuristic;

    while (true) {
        // Peel degree <= 1 vertices until a fixed point; what survives is the
        // 2-core of the residual multigraph.
        bool peeled = true;
        std::vector<char> alive(n, 0);
        for (Vertex v = 0; v < n; ++v) {
            alive[v] = !removed[v];
        }
        while (peeled) {
            peeled = false;
            std::vector<int> deg(n, 0);
            for (const auto& [u, v] : edges) {
                if (alive[u] && alive[v]) {
                    ++deg[u];
                    ++deg[v];
                }
            }
            for (Vertex v = 0; v < n; ++v) {
                if (alive[v] && deg[v] <= 1) {
                    alive[v] = 0;
                    peeled = true;
                }
            }
        }
        Vertex pick = -1;
        int pick_degree = -1;
        std::vector<int> core_degree(n, 0);
        for (const auto& [u, v] : edges) {
            if (alive[u] && alive[v]) {
                ++core_degree[u];
                ++core_degree[v];
            }
        }
        for (Vertex v = 0; v < n; ++v) {
            if (alive[v] && core_degree[v] > pick_degree) {
                pick = v;
                pick_degree = core_degree[v];
            }
        }
        if (pick < 0) {
            break;  // nothing left with degree >= 2: forest
        }
        removed[pick] = 1;
        result.vertices.push_back(pick);
    }
    std::sort(result.vertices.begin(), result.vertices.end());
    validate_fvs(graph, result.vertices);
    return result;
}

FeedbackVertexSet feedback_vertex_set_exact(const MixedGraph& graph, int vertex_cap) {
    const int n = graph.vertex_count();
    if (n > vertex_cap) {
        throw CapExceeded("exact feedback vertex set limited to " + std::to_string(vertex_cap) +
                          " vertices, graph has " + std::to_string(n));
    }
    FeedbackVertexSet result;
    result.method = FeedbackVertexSet::Method::exact;
    // Sizes ascending, masks ascending within a size: first valid set wins.
    for (int size = 0; size <= n; ++size) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != size) {
                continue;
            }
            std::vector<char> removed(n, 0);
            for (int v = 0; v < n; ++v) {
                removed[v] = (mask >> v) & 1u;
            }
            if (deleting_leaves_forest(graph, removed)) {
                for (int v = 0; v < n; ++v) {
                    if (removed[v]) {
                        result.vertices.push_back(v);
                    }
                }
                return result;
            }
        }
    }
    internal_check(false, "removing all vertices always leaves a forest");
    return result;
}

void validate_fvs(const MixedGraph& graph, const std::vector<Vertex>& vertices) {
    const int n = graph.vertex_count();
    std::vector<char> removed(n, 0);
    for (Vertex v : vertices) {
        if (v < 0 || v >= n) {
            throw ValidationError("feedback vertex set: vertex " + std::to_string(v) +
                                  " out of range");
        }
        removed[v] = 1;
    }
    if (deleting_leaves_forest(graph, removed)) {
        return;
    }
    // Build a witness: the first edge closing a cycle plus the residual-forest
    // path between its endpoints.
    UnionFind uf(n);
    std::vector<std::vector<Vertex>> forest(n);
    for (const auto& [u, v] : undirected_version_edges(graph)) {
        if (removed[u] || removed[v]) {
            continue;
        }
        if (uf.unite(u, v)) {
            forest[u].push_back(v);
            forest[v].push_back(u);
            continue;
        }
        std::vector<Vertex> parent(n, -2);
        parent[u] = -1;
        std::deque<Vertex> queue{u};
        while (!queue.empty()) {
            const Vertex x = queue.front();
            queue.pop_front();
            for (Vertex next : forest[x]) {
                if (parent[next] == -2) {
                    parent[next] = x;
                    queue.push_back(next);
                }
            }
        }
        std::string cycle;
        for (Vertex x = v; x != -1; x = parent[x]) {
            cycle += std::to_string(x) + (parent[x] == -1 ? "" : " ");
        }
        throw ValidationError("feedback vertex set leaves a cycle: " + cycle + " " +
                              std::to_string(v));
    }
}

bool undirected_version_is_forest(const MixedGraph& graph) {
    UnionFind uf(graph.vertex_count());
    for (const auto& [u, v] : undirected_version_edges(graph)) {
        if (!uf.unite(u, v)) {
            return false;
        }
    }
    return true;
}

}  // namespace mgo
