#include "mgo/local_orient.hpp"

#include <gtest/gtest.h>

#include "mgo/preprocess.hpp"
#include "mgo/reductions.hpp"
#include "mgo/solvers.hpp"
#include "oracles.hpp"

using namespace mgo;

namespace {

std::vector<const RoutedPath*> pointers(const std::vector<RoutedPath>& paths) {
    std::vector<const RoutedPath*> out;
    for (const RoutedPath& p : paths) {
        out.push_back(&p);
    }
    return out;
}

}  // namespace

TEST(BuildLocalStar, LocalizesPathsToTheirSpokes) {
    // Center 6 with neighbors 3 (v_1), 4 (v_2), 5 (v_3); request 0 runs
    // 0 -> 3 -> 6 -> 4 -> 7, request 2 ends at the center.
    const MixedGraph g(9, {},
                       {UndirectedEdge{0, 3}, UndirectedEdge{3, 6}, UndirectedEdge{6, 4},
                        UndirectedEdge{4, 7}, UndirectedEdge{1, 3}, UndirectedEdge{6, 8},
                        UndirectedEdge{2, 5}, UndirectedEdge{5, 6}});
    const std::vector<Request> requests{{0, 0, 7}, {1, 1, 8}, {2, 2, 6}};
    const auto routing = route_all(g, requests);
    ASSERT_EQ(routing.paths.size(), 3u);
    const auto ptrs = pointers(routing.paths);
    const LocalStar star = build_local_star(g, PartialOrientation(g.undirected_count()), 6, ptrs);

    ASSERT_EQ(star.local_paths.size(), 3u);
    // Request 0 enters on neighbor 3 and leaves on neighbor 4.
    EXPECT_EQ(star.local_paths[0].local_source, 3);
    EXPECT_EQ(star.local_paths[0].local_target, 4);
    ASSERT_GE(star.local_paths[0].entry_spoke, 0);
    ASSERT_GE(star.local_paths[0].exit_spoke, 0);
    // Request 2 ends at the center: entry spoke only, local target is the center.
    EXPECT_GE(star.local_paths[2].entry_spoke, 0);
    EXPECT_EQ(star.local_paths[2].exit_spoke, -1);
    EXPECT_EQ(star.local_paths[2].local_target, 6);
    // Localizations have length 1 or 2.
    for (const LocalPath& lp : star.local_paths) {
        const int length = (lp.entry_spoke >= 0) + (lp.exit_spoke >= 0);
        EXPECT_GE(length, 1);
        EXPECT_LE(length, 2);
    }
}

TEST(BuildLocalStar, PathMissingTheStarIsRejected) {
    const MixedGraph g(4, {}, {UndirectedEdge{0, 1}, UndirectedEdge{2, 3}});
    const auto routing = route_all(g, {{0, 0, 1}});
    const auto ptrs = pointers(routing.paths);
    EXPECT_THROW(build_local_star(g, PartialOrientation(g.undirected_count()), 2, ptrs),
                 ContractViolation);
}

TEST(OrientStar, SinglePathAlwaysSatisfied) {
    const MixedGraph g(2, {}, {UndirectedEdge{0, 1}});
    const auto routing = route_all(g, {{0, 1, 0}});
    const LocalStar star =
        build_local_star(g, PartialOrientation(1), 0, pointers(routing.paths));
    const auto result = orient_star_derandomized(star);
    EXPECT_EQ(result.satisfied.size(), 1u);
    EXPECT_EQ(result.live, 1);
    EXPECT_EQ(result.pre_blocked, 0);
}

TEST(OrientStar, OpposingPathsSatisfyExactlyOne) {
    // Two length-2 paths both needing spokes {1,0} and {0,2}, oppositely.
    const MixedGraph g(3, {}, {UndirectedEdge{0, 1}, UndirectedEdge{0, 2}});
    const auto routing = route_all(g, {{0, 1, 2}, {1, 2, 1}});
    const LocalStar star =
        build_local_star(g, PartialOrientation(2), 0, pointers(routing.paths));
    const auto result = orient_star_derandomized(star);
    EXPECT_EQ(result.satisfied.size(), 1u);
}

TEST(OrientStar, QuarterBoundAgainstExhaustiveOptimum) {
    for (unsigned long long seed = 1; seed <= 120; ++seed) {
        oracle::Rng rng(seed);
        const oracle::StarInstance star_instance =
            oracle::random_star(rng, 8, 12, /*allow_fixed=*/true);
        const auto routing = route_all(star_instance.graph, star_instance.requests);
        ASSERT_TRUE(routing.unroutable.empty());
        const LocalStar star =
            build_local_star(star_instance.graph,
                             PartialOrientation(star_instance.graph.undirected_count()), 0,
                             pointers(routing.paths));
        const auto result = orient_star_derandomized(star);
        EXPECT_EQ(result.pre_blocked, 0) << "seed " << seed;
        EXPECT_EQ(result.live, static_cast<int>(star.local_paths.size()));
        for (const LocalPath& lp : star.local_paths) {
            const int length = (lp.entry_spoke >= 0) + (lp.exit_spoke >= 0);
            EXPECT_GE(length, 1);
            EXPECT_LE(length, 2);
        }

        const int optimum = static_cast<int>(
            solve_exact(star_instance.graph, star_instance.requests).satisfied.size());
        const int got = static_cast<int>(result.satisfied.size());
        EXPECT_LE(got, optimum) << "seed " << seed;
        EXPECT_GE(4 * got, result.live) << "seed " << seed;
        EXPECT_GE(4 * got, optimum) << "seed " << seed;
    }
}

TEST(ExtendToGlobal, EmptySetIsTheDefaultRule) {
    const MixedGraph g(3, {}, {UndirectedEdge{2, 1}, UndirectedEdge{0, 2}});
    const Orientation orientation =
        extend_to_global(g, PartialOrientation(g.undirected_count()), {});
    EXPECT_EQ(orientation.arcs[0], (Arc{1, 2}));  // lower id to higher
    EXPECT_EQ(orientation.arcs[1], (Arc{0, 2}));
}

TEST(ExtendToGlobal, SinglePathIsOrientedAlongItsTraversal) {
    const MixedGraph g(3, {}, {UndirectedEdge{0, 1}, UndirectedEdge{1, 2}});
    const auto routing = route_all(g, {{0, 2, 0}});
    const Orientation orientation =
        extend_to_global(g, PartialOrientation(2), pointers(routing.paths));
    EXPECT_EQ(orientation.arcs[0], (Arc{1, 0}));
    EXPECT_EQ(orientation.arcs[1], (Arc{2, 1}));
    EXPECT_EQ(count_satisfied(g, orientation, {{0, 2, 0}}).count, 1);
}

TEST(ExtendToGlobal, PartialAssignmentsAreKept) {
    const MixedGraph g(4, {}, {UndirectedEdge{0, 1}, UndirectedEdge{2, 3}});
    PartialOrientation partial(2);
    partial.assign(1, Arc{3, 2});
    const Orientation orientation = extend_to_global(g, partial, {});
    EXPECT_EQ(orientation.arcs[1], (Arc{3, 2}));
}

// Any locally satisfiable set extends to a global orientation satisfying it,
// on preprocessed acyclic instances: enumerated star orientations, verified
// by reachability.
TEST(ExtendToGlobal, LocallySatisfiedSetsExtendWithoutConflict) {
    int instances_checked = 0;
    for (unsigned long long seed = 1; instances_checked < 40; ++seed) {
        ASSERT_LT(seed, 4000u) << "generator starved";
        RandomInstanceParams params;
        params.vertex_count = 9;
        params.directed_probability = 0.25;
        params.undirected_probability = 0.35;
        params.request_count = 7;
        params.seed = seed;
        const GeneratedInstance inst = gen_random_instance(params);
        const auto pre = contract_cycles(inst.graph, inst.requests);
        if (pre.requests.empty()) {
            continue;
        }
        const auto routing = route_all(pre.graph, pre.requests);
        if (routing.paths.empty()) {
            continue;
        }
        // Junction: the most crossed vertex.
        std::vector<int> crossing(pre.graph.vertex_count(), 0);
        for (const RoutedPath& p : routing.paths) {
            for (Vertex v : p.vertices) {
                ++crossing[v];
            }
        }
        const Vertex junction = static_cast<Vertex>(
            std::max_element(crossing.begin(), crossing.end()) - crossing.begin());
        std::vector<const RoutedPath*> through;
        for (const RoutedPath& p : routing.paths) {
            if (p.crosses(junction)) {
                through.push_back(&p);
            }
        }
        if (through.empty()) {
            continue;
        }
        ++instances_checked;
        const LocalStar star = build_local_star(
            pre.graph, PartialOrientation(pre.graph.undirected_count()), junction, through);
        for (const auto& satisfied_indices : oracle::enumerate_star_satisfied(star)) {
            std::vector<const RoutedPath*> satisfied;
            std::vector<Request> check;
            for (int local_index : satisfied_indices) {
                const RoutedPath* p = through[star.local_paths[local_index].path_index];
                satisfied.push_back(p);
                check.push_back(Request{p->request_id, p->source, p->target});
            }
            // Must not throw the conflict invariant.
            const Orientation orientation = extend_to_global(
                pre.graph, PartialOrientation(pre.graph.undirected_count()), satisfied);
            const auto verified = count_satisfied(pre.graph, orientation, check);
            EXPECT_EQ(verified.count, static_cast<int>(check.size())) << "seed " << seed;
        }
    }
}

TEST(LocalSolve, SinglePath) {
    const MixedGraph g(3, {}, {UndirectedEdge{0, 1}, UndirectedEdge{1, 2}});
    const auto routing = route_all(g, {{0, 0, 2}});
    const auto result =
        local_solve(g, PartialOrientation(2), 1, pointers(routing.paths));
    EXPECT_EQ(result.satisfied_requests, (std::vector<int>{0}));
    EXPECT_EQ(result.crossing_count, 1);
}

TEST(LocalSolve, FourPairwiseConflictingPathsKeepAtLeastOne) {
    // Four length-2 paths through the hub, pairwise conflicting on spokes.
    const MixedGraph g(3, {}, {UndirectedEdge{0, 1}, UndirectedEdge{0, 2}});
    const std::vector<Request> requests{{0, 1, 2}, {1, 2, 1}, {2, 1, 2}, {3, 2, 1}};
    const auto routing = route_all(g, requests);
    const auto result = local_solve(g, PartialOrientation(2), 0, pointers(routing.paths));
    EXPECT_GE(result.satisfied_requests.size(), 1u);
    const auto verified = count_satisfied(g, result.orientation, requests);
    EXPECT_GE(verified.count, 1);
}

TEST(LocalSolve, BoundedByStarExhaustiveOptimum) {
    for (unsigned long long seed = 500; seed < 560; ++seed) {
        oracle::Rng rng(seed);
        const oracle::StarInstance star_instance =
            oracle::random_star(rng, 6, 10, /*allow_fixed=*/true);
        const auto routing = route_all(star_instance.graph, star_instance.requests);
        const auto result =
            local_solve(star_instance.graph,
                        PartialOrientation(star_instance.graph.undirected_count()), 0,
                        pointers(routing.paths));
        const int optimum = static_cast<int>(
            solve_exact(star_instance.graph, star_instance.requests).satisfied.size());
        const int got = static_cast<int>(result.satisfied_requests.size());
        EXPECT_LE(got, optimum);
        EXPECT_GE(4 * got, static_cast<int>(routing.paths.size()));
        // The returned orientation satisfies everything it claims.
        std::vector<Request> claimed;
        for (int id : result.satisfied_requests) {
            claimed.push_back(star_instance.requests[id]);
        }
        EXPECT_EQ(count_satisfied(star_instance.graph, result.orientation, claimed).count,
                  static_cast<int>(claimed.size()));
    }
}
