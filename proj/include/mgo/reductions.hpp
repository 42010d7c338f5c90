#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mgo/graph.hpp"

namespace mgo {

/// Output of an instance generator: the instance itself plus provenance
/// metadata (key/value, emission order preserved) recording how generated
/// vertices and requests correspond to the source problem and which value
/// relation the construction preserves.
struct GeneratedInstance {
    MixedGraph graph;
    std::vector<Request> requests;
    /// Mandated vertex paths, one per request, for fixed-path instances;
    /// empty otherwise.
    std::vector<std::vector<Vertex>> mandated_paths;
    std::vector<std::pair<std::string, std::string>> metadata;
};

struct SimpleUndirectedGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;
};

struct SimpleDirectedGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> arcs;
};

/// Fixed-path instance whose optimum equals the maximum independent set of
/// the source graph: one source-target path per source vertex, every two
/// paths crossing in a four-vertex gadget that shares an edge (oppositely
/// directed) exactly when the source vertices are adjacent.
GeneratedInstance gen_from_independent_set(const SimpleUndirectedGraph& source);

/// Mixed grid instance (2|V'|-1 rows, 3 columns) whose optimum equals the
/// maximum directed cut of the source digraph. Every source vertex keeps a
/// single undirected edge whose orientation encodes its side of the cut; the
/// rest of the grid is pre-directed (outer columns form a clockwise cycle,
/// middle rungs point back into the cycle).
GeneratedInstance gen_from_dicut(const SimpleDirectedGraph& source);

struct GridInstance {
    MixedGraph graph;      // all edges undirected
    Orientation orientation;
    int rows = 0;
    int cols = 0;
};

/// Fully undirected rows x cols grid together with the orientation that makes
/// it strongly connected: a clockwise cycle along the perimeter, interior
/// horizontal edges pointing left, interior vertical edges pointing down.
/// Refuses 1 x m and n x 1 grids (paths behave differently).
GridInstance gen_grid_full_orientation(int rows, int cols);

struct RandomInstanceParams {
    int vertex_count = 0;
    double directed_probability = 0.0;
    double undirected_probability = 0.0;
    int request_count = 0;
    unsigned long long seed = 0;
};

/// Seeded random mixed graph plus distinct random request pairs. Identical
/// parameters and seed reproduce the instance bit for bit.
GeneratedInstance gen_random_instance(const RandomInstanceParams& params);

}  // namespace mgo
