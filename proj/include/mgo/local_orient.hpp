#pragma once

#include <vector>

#include "mgo/graph.hpp"
#include "mgo/pathfinding.hpp"

namespace mgo {

/// One edge incident to a star's center. A spoke is fixed when its direction
/// is already decided (a directed edge, or an undirected edge the current
/// partial orientation has assigned), otherwise free.
struct Spoke {
    EdgeRef edge;
    Vertex neighbor;
    bool fixed = false;
    bool outward = false;  // meaningful only when fixed: center -> neighbor
};

/// Intersection of a routed path with a center's star: at most two spokes.
/// `entry_spoke` carries the path into the center, `exit_spoke` out of it;
/// either may be absent when the path starts or ends at the center.
/// local_source/local_target are the path's nearest-to-source and
/// nearest-to-target vertices inside the star.
struct LocalPath {
    int path_index;        // into the crossing-path list the star was built from
    int entry_spoke = -1;  // index into LocalStar::spokes, -1 when absent
    int exit_spoke = -1;
    Vertex local_source = -1;
    Vertex local_target = -1;
};

struct LocalStar {
    Vertex center = -1;
    std::vector<Spoke> spokes;
    std::vector<LocalPath> local_paths;
};

/// Builds the star of `v` and localizes every crossing path onto it. Every
/// path must contain `v`; spokes are tagged against `partial`.
LocalStar build_local_star(const MixedGraph& graph, const PartialOrientation& partial,
                           Vertex v, const std::vector<const RoutedPath*>& crossing_paths);

struct StarOrientationResult {
    /// Direction chosen for every free spoke: (spoke index, outward).
    std::vector<std::pair<int, bool>> decisions;
    /// Indices into LocalStar::local_paths satisfied by the chosen directions.
    std::vector<int> satisfied;
    /// Local paths with no fixed spoke pointing the wrong way; the guarantee
    /// denominator. satisfied.size() >= ceil(live/4).
    int live = 0;
    /// Paths dropped because a fixed spoke already blocks them.
    int pre_blocked = 0;
};

/// Derandomized star orientation: free spokes are decided in ascending edge-id
/// order by comparing the two conditional expectations of the number of
/// satisfied local paths under uniform random directions for the rest.
/// Expectations are tracked in exact quarter units, so the bound
/// |satisfied| >= ceil(live / 4) is checked without rounding.
StarOrientationResult orient_star_derandomized(const LocalStar& star);

/// Orients every undirected edge on every given path along that path's
/// traversal, keeps the existing partial assignments, and fills the remaining
/// edges lower-to-higher. The inputs must be shortest routed paths through a
/// common center, simultaneously satisfied by one star orientation, on a
/// mixed-acyclic graph; under those preconditions no two of them can disagree
/// on an edge, and a detected disagreement is reported as an internal
/// invariant failure rather than an input error.
Orientation extend_to_global(const MixedGraph& graph, const PartialOrientation& partial,
                             const std::vector<const RoutedPath*>& satisfied_paths);

struct LocalSolveResult {
    Orientation orientation;
    std::vector<int> satisfied_requests;  // ids, ascending
    int crossing_count = 0;
    int pre_blocked = 0;
};

/// Star construction, derandomized orientation, and global extension in one
/// call: satisfies at least a quarter of the unblocked paths crossing `v`.
LocalSolveResult local_solve(const MixedGraph& graph, const PartialOrientation& partial,
                             Vertex v, const std::vector<const RoutedPath*>& crossing_paths);

/// The subset of crossing paths the derandomized star orientation satisfies,
/// without extending to a full orientation. Building block for the solvers
/// that merge several stars into one orientation.
std::vector<const RoutedPath*> star_satisfied_paths(const MixedGraph& graph,
                                                    const PartialOrientation& partial, Vertex v,
                                                    const std::vector<const RoutedPath*>& crossing,
                                                    int* pre_blocked_out = nullptr);

}  // namespace mgo
