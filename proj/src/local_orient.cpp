#include "mgo/local_orient.hpp"

#include <algorithm>
#include <cassert>

namespace mgo {

LocalStar build_local_star(const MixedGraph& graph, const PartialOrientation& partial,
                           Vertex v, const std::vector<const RoutedPath*>& crossing_paths) {
    if (v < 0 || v >= graph.vertex_count()) {
        throw ContractViolation("build_local_star: center out of range");
    }
    LocalStar star;
    star.center = v;

    // Spokes follow the canonical incidence order, so free (undirected) spokes
    // come out in ascending edge-id order.
    std::vector<int> directed_spoke(graph.directed_count(), -1);
    std::vector<int> undirected_spoke(graph.undirected_count(), -1);
    for (const EdgeRef& e : graph.incident(v)) {
        Spoke spoke;
        spoke.edge = e;
        if (e.kind == EdgeKind::directed) {
            const DirectedEdge& d = graph.directed(e.index);
            spoke.neighbor = d.tail == v ? d.head : d.tail;
            spoke.fixed = true;
            spoke.outward = d.tail == v;
            directed_spoke[e.index] = static_cast<int>(star.spokes.size());
        } else {
            const UndirectedEdge& u = graph.undirected(e.index);
            spoke.neighbor = other_endpoint(u, v);
            if (partial.assigned(e.index)) {
                spoke.fixed = true;
                spoke.outward = partial.arc(e.index).from == v;
            }
            undirected_spoke[e.index] = static_cast<int>(star.spokes.size());
        }
        star.spokes.push_back(spoke);
    }

    for (std::size_t i = 0; i < crossing_paths.size(); ++i) {
        const RoutedPath& path = *crossing_paths[i];
        LocalPath local;
        local.path_index = static_cast<int>(i);
        for (const PathStep& step : path.steps) {
            const int spoke = step.edge.kind == EdgeKind::directed
                                  ? directed_spoke[step.edge.index]
                                  : undirected_spoke[step.edge.index];
            if (spoke < 0) {
                continue;
            }
            if (step.to == v) {
                internal_check(local.entry_spoke < 0, "path enters a star center twice");
                local.entry_spoke = spoke;
            } else if (step.from == v) {
                internal_check(local.exit_spoke < 0, "path leaves a star center twice");
                local.exit_spoke = spoke;
            }
        }
        if (local.entry_spoke < 0 && local.exit_spoke < 0) {
            throw ContractViolation("build_local_star: path for request " +
                                    std::to_string(path.request_id) +
                                    " does not touch the star of vertex " + std::to_string(v));
        }
        local.local_source =
            local.entry_spoke >= 0 ? star.spokes[local.entry_spoke].neighbor : v;
        local.local_target = local.exit_spoke >= 0 ? star.spokes[local.exit_spoke].neighbor : v;
        star.local_paths.push_back(local);
    }
    return star;
}

namespace {

// Weight of a local path in quarter units: 4 once certain, 0 once blocked,
// otherwise halved per undecided spoke. The sum over paths is four times the
// expected number of satisfied paths under uniform random free directions.
struct PathState {
    bool blocked = false;
    int undecided = 0;

    int weight() const { return blocked ? 0 : (4 >> undecided); }
};

}  // namespace

StarOrientationResult orient_star_derandomized(const LocalStar& star) {
    const int spoke_count = static_cast<int>(star.spokes.size());
    // needs[s]: local paths requiring spoke s, with the direction they need.
    struct Need {
        int path;
        bool outward;
    };
    std::vector<std::vector<Need>> needs(spoke_count);
    std::vector<PathState> state(star.local_paths.size());

    for (std::size_t i = 0; i < star.local_paths.size(); ++i) {
        const LocalPath& lp = star.local_paths[i];
        internal_check(lp.entry_spoke != lp.exit_spoke || lp.entry_spoke < 0,
                       "local path enters and leaves on the same spoke");
        auto account = [&](int spoke, bool outward) {
            if (spoke < 0) {
                return;
            }
            const Spoke& s = star.spokes[spoke];
            if (s.fixed) {
                if (s.outward != outward) {
                    state[i].blocked = true;
                }
            } else {
                needs[spoke].push_back({static_cast<int>(i), outward});
                ++state[i].undecided;
            }
        };
        account(lp.entry_spoke, /*outward=*/false);
        account(lp.exit_spoke, /*outward=*/true);
    }

    StarOrientationResult result;
    long long expectation4 = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i].blocked) {
            ++result.pre_blocked;
        } else {
            ++result.live;
        }
        expectation4 += state[i].weight();
    }
    const long long initial4 = expectation4;

    for (int spoke = 0; spoke < spoke_count; ++spoke) {
        if (star.spokes[spoke].fixed) {
            continue;
        }
        long long gain_outward = 0;
        long long gain_inward = 0;
        for (const Need& need : needs[spoke]) {
            const int w = state[need.path].weight();
            // The matching branch doubles the weight, the other zeroes it.
            (need.outward ? gain_outward : gain_inward) += w;
            (need.outward ? gain_inward : gain_outward) -= w;
        }
        internal_check(gain_outward + gain_inward == 0,
                       "star expectation branches must average to the current value");
        const Spoke& s = star.spokes[spoke];
        bool outward;
        if (gain_outward != gain_inward) {
            outward = gain_outward > gain_inward;
        } else {
            outward = star.center < s.neighbor;  // tie: lower endpoint to higher
        }
        for (const Need& need : needs[spoke]) {
            if (need.outward == outward) {
                --state[need.path].undecided;
            } else {
                state[need.path].blocked = true;
            }
        }
        const long long next4 = expectation4 + (outward ? gain_outward : gain_inward);
        internal_check(next4 >= expectation4, "star expectation must never decrease");
        expectation4 = next4;
        result.decisions.emplace_back(spoke, outward);
    }

    for (std::size_t i = 0; i < state.size(); ++i) {
        internal_check(state[i].blocked || state[i].undecided == 0,
                       "every spoke of a live path must be decided");
        if (!state[i].blocked) {
            result.satisfied.push_back(static_cast<int>(i));
        }
    }
    internal_check(4 * static_cast<long long>(result.satisfied.size()) == expectation4,
                   "final expectation must equal the satisfied count");
    internal_check(4 * static_cast<long long>(result.satisfied.size()) >= initial4,
                   "derandomization fell below the starting expectation");
    internal_check(static_cast<int>(result.satisfied.size()) * 4 >= result.live,
                   "star orientation satisfied less than a quarter of the live paths");
    return result;
}

Orientation extend_to_global(const MixedGraph& graph, const PartialOrientation& partial,
                             const std::vector<const RoutedPath*>& satisfied_paths) {
    PartialOrientation combined = partial;
    if (combined.edge_count() != graph.undirected_count()) {
        throw ContractViolation("extend_to_global: partial orientation size mismatch");
    }
    for (const RoutedPath* path : satisfied_paths) {
        for (const auto& [edge_id, arc] : path->undirected_dirs) {
            if (combined.assigned(edge_id)) {
                internal_check(combined.arc(edge_id) == arc,
                               "extension hit conflicting directions on edge " +
                                   std::to_string(edge_id));
            } else {
                combined.assign(edge_id, arc);
            }
        }
    }
    for (int id = 0; id < graph.undirected_count(); ++id) {
        if (!combined.assigned(id)) {
            const UndirectedEdge& e = graph.undirected(id);
            combined.assign(id, Arc{std::min(e.a, e.b), std::max(e.a, e.b)});
        }
    }
    return to_orientation(combined);
}

std::vector<const RoutedPath*> star_satisfied_paths(const MixedGraph& graph,
                                                    const PartialOrientation& partial, Vertex v,
                                                    const std::vector<const RoutedPath*>& crossing,
                                                    int* pre_blocked_out) {
    const LocalStar star = build_local_star(graph, partial, v, crossing);
    const StarOrientationResult oriented = orient_star_derandomized(star);
    if (pre_blocked_out != nullptr) {
        *pre_blocked_out = oriented.pre_blocked;
    }
    std::vector<const RoutedPath*> satisfied;
    satisfied.reserve(oriented.satisfied.size());
    for (int local_index : oriented.satisfied) {
        satisfied.push_back(crossing[star.local_paths[local_index].path_index]);
    }
    return satisfied;
}

LocalSolveResult local_solve(const MixedGraph& graph, const PartialOrientation& partial,
                             Vertex v, const std::vector<const RoutedPath*>& crossing_paths) {
    LocalSolveResult result;
    result.crossing_count = static_cast<int>(crossing_paths.size());
    const std::vector<const RoutedPath*> satisfied =
        star_satisfied_paths(graph, partial, v, crossing_paths, &result.pre_blocked);
    result.orientation = extend_to_global(graph, partial, satisfied);
    for (const RoutedPath* path : satisfied) {
        result.satisfied_requests.push_back(path->request_id);
    }
    std::sort(result.satisfied_requests.begin(), result.satisfied_requests.end());
    return result;
}

}  // namespace mgo
