#include "mgo/reductions.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace mgo {

namespace {

std::string pair_key(int a, int b) {
    return std::to_string(a) + "," + std::to_string(b);
}

}  // namespace

GeneratedInstance gen_from_independent_set(const SimpleUndirectedGraph& source) {
    const int q = source.vertex_count;
    if (q < 0) {
        throw InputError("independent-set reduction: negative vertex count");
    }
    std::set<std::pair<int, int>> edge_set;
    for (auto [a, b] : source.edges) {
        if (a < 0 || a >= q || b < 0 || b >= q) {
            throw InputError("independent-set reduction: edge endpoint out of range");
        }
        if (a == b) {
            throw InputError("independent-set reduction: self-loop");
        }
        edge_set.insert({std::min(a, b), std::max(a, b)});
    }

    // Vertex layout: sources 0..q-1, targets q..2q-1, then one 4-vertex
    // gadget per pair {a,b} in lexicographic order. Within gadget (a,b):
    // v_a, u_a on path a and v_b, u_b on path b.
    std::map<std::pair<int, int>, int> gadget_base;
    int next = 2 * q;
    for (int a = 0; a < q; ++a) {
        for (int b = a + 1; b < q; ++b) {
            gadget_base[{a, b}] = next;
            next += 4;
        }
    }

    GeneratedInstance out;
    std::vector<std::vector<Vertex>> paths(q);
    for (int i = 0; i < q; ++i) {
        std::vector<Vertex>& path = paths[i];
        path.push_back(i);  // s_i
        for (int j = 0; j < q; ++j) {
            if (j == i) {
                continue;
            }
            const int a = std::min(i, j);
            const int b = std::max(i, j);
            const int base = gadget_base[{a, b}];
            const Vertex va = base, ua = base + 1, vb = base + 2, ub = base + 3;
            if (i == a) {
                path.push_back(va);
                path.push_back(ua);
            } else if (edge_set.count({a, b})) {
                // Adjacent source vertices: reroute through the other side so
                // both paths need edge {v_a, u_a}, oppositely.
                path.push_back(vb);
                path.push_back(ua);
                path.push_back(va);
                path.push_back(ub);
            } else {
                path.push_back(vb);
                path.push_back(ub);
            }
        }
        path.push_back(q + i);  // t_i
    }

    // Collect the undirected edges along the paths in first-use order.
    std::map<std::pair<Vertex, Vertex>, int> edge_id;
    std::vector<UndirectedEdge> undirected;
    for (const auto& path : paths) {
        for (std::size_t s = 0; s + 1 < path.size(); ++s) {
            const Vertex u = std::min(path[s], path[s + 1]);
            const Vertex v = std::max(path[s], path[s + 1]);
            if (edge_id.emplace(std::pair{u, v}, static_cast<int>(undirected.size())).second) {
                undirected.push_back(UndirectedEdge{u, v});
            }
        }
    }

    out.graph = MixedGraph(next, {}, std::move(undirected));
    for (int i = 0; i < q; ++i) {
        out.requests.push_back(Request{i, i, q + i});
    }
    out.mandated_paths = std::move(paths);
    out.metadata.emplace_back("kind", "independent_set_reduction");
    out.metadata.emplace_back("source_vertices", std::to_string(q));
    out.metadata.emplace_back("source_edges", std::to_string(edge_set.size()));
    out.metadata.emplace_back("value_relation", "max_independent_set(source) == optimum");
    for (int i = 0; i < q; ++i) {
        out.metadata.emplace_back("request." + std::to_string(i),
                                  "source_vertex " + std::to_string(i));
    }
    return out;
}

GeneratedInstance gen_from_dicut(const SimpleDirectedGraph& source) {
    const int q = source.vertex_count;
    if (q <= 0) {
        throw InputError("dicut reduction: vertex count must be positive");
    }
    std::set<std::pair<int, int>> arc_set;
    for (auto [u, w] : source.arcs) {
        if (u < 0 || u >= q || w < 0 || w >= q) {
            throw InputError("dicut reduction: arc endpoint out of range");
        }
        if (u == w) {
            throw InputError("dicut reduction: self-loop");
        }
        if (!arc_set.insert({u, w}).second) {
            throw InputError("dicut reduction: duplicate arc " + pair_key(u, w));
        }
    }

    const int rows = 2 * q - 1;
    const int cols = 3;
    auto id = [cols](int r, int c) { return (r - 1) * cols + (c - 1); };

    std::vector<DirectedEdge> directed;
    std::vector<UndirectedEdge> undirected;
    // Column 1 <-> 2 horizontals: odd rows carry the cut-encoding undirected
    // edge of their source vertex, even rows point away from column 1.
    for (int r = 1; r <= rows; ++r) {
        if (r % 2 == 1) {
            undirected.push_back(UndirectedEdge{id(r, 1), id(r, 2)});
        } else {
            directed.push_back(DirectedEdge{id(r, 1), id(r, 2)});
        }
    }
    // Column 2 <-> 3 horizontals: top rung rightward, everything below points
    // back into column 2 (the bottom rung closes the clockwise cycle).
    for (int r = 1; r <= rows; ++r) {
        if (r == 1) {
            directed.push_back(DirectedEdge{id(r, 2), id(r, 3)});
        } else {
            directed.push_back(DirectedEdge{id(r, 3), id(r, 2)});
        }
    }
    // Column 1 verticals: oriented away from the even-row vertices.
    for (int r = 1; r < rows; ++r) {
        if (r % 2 == 0) {
            directed.push_back(DirectedEdge{id(r, 1), id(r + 1, 1)});
        } else {
            directed.push_back(DirectedEdge{id(r + 1, 1), id(r, 1)});
        }
    }
    // Column 2 verticals run up, column 3 verticals run down.
    for (int r = 1; r < rows; ++r) {
        directed.push_back(DirectedEdge{id(r + 1, 2), id(r, 2)});
    }
    for (int r = 1; r < rows; ++r) {
        directed.push_back(DirectedEdge{id(r, 3), id(r + 1, 3)});
    }

    GeneratedInstance out;
    out.graph = MixedGraph(rows * cols, std::move(directed), std::move(undirected));
    int request_id = 0;
    for (auto [u, w] : source.arcs) {
        out.requests.push_back(Request{request_id++, id(2 * u + 1, 1), id(2 * w + 1, 1)});
    }
    out.metadata.emplace_back("kind", "dicut_reduction");
    out.metadata.emplace_back("source_vertices", std::to_string(q));
    out.metadata.emplace_back("source_arcs", std::to_string(arc_set.size()));
    out.metadata.emplace_back("grid", std::to_string(rows) + "x" + std::to_string(cols));
    out.metadata.emplace_back("value_relation", "max_dicut(source) == optimum");
    for (int i = 0; i < q; ++i) {
        out.metadata.emplace_back("source_vertex." + std::to_string(i),
                                  "grid_vertex " + std::to_string(id(2 * i + 1, 1)) +
                                      " encoder_edge " + std::to_string(i));
    }
    return out;
}

GridInstance gen_grid_full_orientation(int rows, int cols) {
    if (rows < 2 || cols < 2) {
        throw InputError("grid orientation needs rows, cols >= 2; a 1-wide grid is a path "
                         "and is handled by other means");
    }
    auto id = [cols](int r, int c) { return (r - 1) * cols + (c - 1); };

    std::vector<UndirectedEdge> undirected;
    std::vector<Arc> arcs;
    // Horizontals: top row joins the clockwise perimeter rightward, every
    // other row points left.
    for (int r = 1; r <= rows; ++r) {
        for (int c = 1; c < cols; ++c) {
            undirected.push_back(UndirectedEdge{id(r, c), id(r, c + 1)});
            if (r == 1) {
                arcs.push_back(Arc{id(r, c), id(r, c + 1)});
            } else {
                arcs.push_back(Arc{id(r, c + 1), id(r, c)});
            }
        }
    }
    // Verticals: leftmost column up, every other column down.
    for (int r = 1; r < rows; ++r) {
        for (int c = 1; c <= cols; ++c) {
            undirected.push_back(UndirectedEdge{id(r, c), id(r + 1, c)});
            if (c == 1) {
                arcs.push_back(Arc{id(r + 1, c), id(r, c)});
            } else {
                arcs.push_back(Arc{id(r, c), id(r + 1, c)});
            }
        }
    }

    GridInstance out;
    out.rows = rows;
    out.cols = cols;
    out.graph = MixedGraph(rows * cols, {}, std::move(undirected));
    out.orientation.arcs = std::move(arcs);
    internal_check(!validate_orientation(out.graph, out.orientation).has_value(),
                   "grid orientation must be total and consistent");
    return out;
}

GeneratedInstance gen_random_instance(const RandomInstanceParams& params) {
    if (params.vertex_count < 0) {
        throw InputError("random instance: negative vertex count");
    }
    for (double p : {params.directed_probability, params.undirected_probability}) {
        if (p < 0.0 || p > 1.0) {
            throw InputError("random instance: probability outside [0,1]");
        }
    }
    const long long max_requests =
        static_cast<long long>(params.vertex_count) * (params.vertex_count - 1);
    if (params.request_count < 0 || params.request_count > max_requests) {
        throw InputError("random instance: cannot sample " +
                         std::to_string(params.request_count) + " distinct requests from " +
                         std::to_string(std::max(max_requests, 0ll)) + " ordered pairs");
    }

    std::mt19937_64 rng(params.seed);
    // Uniform doubles drawn from the top 53 bits: identical on every platform,
    // unlike the standard distributions.
    auto draw = [&rng]() { return (rng() >> 11) * (1.0 / 9007199254740992.0); };

    std::vector<DirectedEdge> directed;
    std::vector<UndirectedEdge> undirected;
    for (Vertex u = 0; u < params.vertex_count; ++u) {
        for (Vertex v = u + 1; v < params.vertex_count; ++v) {
            if (draw() < params.undirected_probability) {
                undirected.push_back(UndirectedEdge{u, v});
            } else if (draw() < params.directed_probability) {
                if (draw() < 0.5) {
                    directed.push_back(DirectedEdge{u, v});
                } else {
                    directed.push_back(DirectedEdge{v, u});
                }
            }
        }
    }

    std::vector<std::pair<Vertex, Vertex>> pairs;
    pairs.reserve(max_requests > 0 ? max_requests : 0);
    for (Vertex s = 0; s < params.vertex_count; ++s) {
        for (Vertex t = 0; t < params.vertex_count; ++t) {
            if (s != t) {
                pairs.emplace_back(s, t);
            }
        }
    }
    // Hand-rolled partial Fisher-Yates keeps the byte-identical guarantee.
    for (int i = 0; i < params.request_count; ++i) {
        const std::size_t j = i + rng() % (pairs.size() - i);
        std::swap(pairs[i], pairs[j]);
    }

    GeneratedInstance out;
    out.graph = MixedGraph(params.vertex_count, std::move(directed), std::move(undirected));
    for (int i = 0; i < params.request_count; ++i) {
        out.requests.push_back(Request{i, pairs[i].first, pairs[i].second});
    }
    out.metadata.emplace_back("kind", "random");
    out.metadata.emplace_back("vertices", std::to_string(params.vertex_count));
    out.metadata.emplace_back("directed_probability",
                              std::to_string(params.directed_probability));
    out.metadata.emplace_back("undirected_probability",
                              std::to_string(params.undirected_probability));
    out.metadata.emplace_back("requests", std::to_string(params.request_count));
    out.metadata.emplace_back("seed", std::to_string(params.seed));
    return out;
}

}  // namespace mgo
