#pragma once

#include <string>
#include <vector>

#include "mgo/decomposition.hpp"
#include "mgo/graph.hpp"
#include "mgo/local_orient.hpp"
#include "mgo/pathfinding.hpp"

namespace mgo {

/// Per-run accounting counters. Every guarantee a solver claims is asserted
/// at runtime against these numbers; they are reported so callers can
/// re-check the arithmetic.
struct Certificate {
    std::string algorithm;
    int vertex_count = 0;
    int requests_total = 0;
    int routable = 0;
    int unroutable = 0;

    // Greedy main loop.
    long long iterations = 0;
    std::vector<int> per_iteration_discards;
    long long discards_total = 0;
    int max_iteration_removals = 0;
    int main_loop_satisfied = 0;         // paths oriented by the loop
    int pending_final = 0;               // paths left when the loop stopped
    long long exit_min_pending_degree = -1;

    // Local (star) phase.
    bool local_phase_run = false;
    Vertex junction_vertex = -1;
    int junction_crossing = 0;           // pending paths through the junction
    int local_satisfied = 0;
    int pre_blocked = 0;                 // must stay 0 at greedy call sites

    // Degree-bounded greedy.
    int delta = 0;                       // longest routed path
    bool aborted_to_local = false;

    // Class-based solvers.
    std::vector<int> class_sizes;
    int chosen_class = -1;
    int levels = 0;
    int width = -1;                      // decomposition width actually used
    int fvs_size = -1;

    // Exhaustive solver.
    long long enumerated = 0;
};

struct SolveResult {
    Orientation orientation;          // total, over the solved graph
    std::vector<int> satisfied;       // request ids, ascending, re-verified
    Certificate certificate;
    double wall_seconds = 0.0;
};

/// Greedy orientation with an exact cube threshold: while some pending path
/// conflicts with fewer than (n*|P|)^(1/3) others (compared as degree^3 <
/// n*|P|), the lowest-degree one is oriented source-to-target and its
/// conflictors are discarded; any leftover pending paths are handed to the
/// star solver at the most-crossed vertex. Requires a mixed-acyclic graph.
SolveResult solve_greedy_cuberoot(const MixedGraph& graph, const std::vector<Request>& requests);

/// Greedy orientation in request-id order that stops at the first path
/// conflicting with more than sqrt(delta*|P|) pending paths (compared as
/// conflicts^2 > delta*|P|), where delta is the longest routed path; the
/// most-crossed vertex on that path finishes the job via the star solver.
SolveResult solve_greedy_delta(const MixedGraph& graph, const std::vector<Request>& requests);

/// Classifies paths by recursive centroids of a tree decomposition, solves
/// each bag-vertex collection as a star, merges non-conflicting collections
/// per class, and keeps the best class.
SolveResult solve_treewidth(const MixedGraph& graph, const std::vector<Request>& requests,
                            const TreeDecomposition& decomposition);

/// Classifies paths by the first feedback vertex they cross; paths avoiding
/// the set live in a forest and go through the centroid tree solver. The best
/// single class wins.
SolveResult solve_fvs(const MixedGraph& graph, const std::vector<Request>& requests,
                      const FeedbackVertexSet& fvs);

/// Recursive vertex-centroid classification for graphs whose undirected
/// version is a forest; same-level stars sit in vertex-disjoint subtrees and
/// are merged into one orientation, and the best level wins.
SolveResult solve_tree_centroid(const MixedGraph& graph, const std::vector<Request>& requests);

/// Enumerates all 2^|E_U| orientations. Ties go to the lexicographically
/// smallest direction bit-vector (bit i set = edge i reversed relative to its
/// stored endpoints). Refuses above the cap.
SolveResult solve_exact(const MixedGraph& graph, const std::vector<Request>& requests,
                        int undirected_cap = 20);

/// Variant where each request is satisfied only when its mandated path is
/// oriented source-to-target end to end.
struct FixedPathInstance {
    MixedGraph graph;
    std::vector<Request> requests;
    std::vector<RoutedPath> mandated_paths;  // one per request, same order
};

/// Resolves vertex sequences to edges (directed edges preferred, then the
/// lowest-id undirected edge) and validates them: simple, endpoint-matching,
/// directed edges traversed forward.
FixedPathInstance make_fixed_path_instance(MixedGraph graph, std::vector<Request> requests,
                                           const std::vector<std::vector<Vertex>>& vertex_paths);

enum class FixedPathMode { greedy, exact };

/// A request set is simultaneously satisfiable iff its paths are pairwise
/// non-conflicting, so this is an independent-set problem on the conflict
/// graph: exact solves it by branch and bound (capped), greedy repeatedly
/// takes the path with the fewest conflicts. `satisfied` lists the requests
/// whose mandated path ended up fully oriented.
SolveResult solve_fixed_paths(const FixedPathInstance& instance, FixedPathMode mode,
                              int exact_cap = 30);

}  // namespace mgo
