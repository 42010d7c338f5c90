#include "mgo/pathfinding.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "mgo/reductions.hpp"
#include "oracles.hpp"

using namespace mgo;

namespace {

GeneratedInstance random_instance(unsigned long long seed, int n, int requests) {
    RandomInstanceParams params;
    params.vertex_count = n;
    params.directed_probability = 0.25;
    params.undirected_probability = 0.3;
    params.request_count = requests;
    params.seed = seed;
    return gen_random_instance(params);
}

std::string fingerprint(const RoutedPath& p) {
    std::ostringstream out;
    out << p.request_id << ':' << p.source << "->" << p.target;
    for (const PathStep& s : p.steps) {
        out << '|' << (s.edge.kind == EdgeKind::directed ? 'D' : 'U') << s.edge.index << ','
            << s.from << ',' << s.to;
    }
    return out.str();
}

// A two-step path through a shared undirected edge, built by hand.
RoutedPath hand_path(const MixedGraph& g, int request_id, std::vector<PathStep> steps) {
    RoutedPath p;
    p.request_id = request_id;
    p.source = steps.front().from;
    p.target = steps.back().to;
    p.steps = std::move(steps);
    finalize_path(p);
    return p;
}

}  // namespace

TEST(ShortestMixedPath, SourceEqualsTargetGivesEmptyPath) {
    const MixedGraph g(2, {}, {UndirectedEdge{0, 1}});
    const auto path = shortest_mixed_path(g, 1, 1);
    ASSERT_TRUE(path.has_value());
    EXPECT_EQ(path->length(), 0);
    EXPECT_EQ(path->vertices, (std::vector<Vertex>{1}));
}

TEST(ShortestMixedPath, TwoStepUniquePath) {
    // a->b directed, {b,c} undirected, request (a,c).
    const MixedGraph g(3, {DirectedEdge{0, 1}}, {UndirectedEdge{1, 2}});
    const auto path = shortest_mixed_path(g, 0, 2);
    ASSERT_TRUE(path.has_value());
    EXPECT_EQ(path->length(), 2);
    EXPECT_EQ(path->steps[0].edge.kind, EdgeKind::directed);
    EXPECT_EQ(path->steps[1].edge.kind, EdgeKind::undirected);
    EXPECT_EQ(path->steps[1].from, 1);
    EXPECT_EQ(path->steps[1].to, 2);
}

TEST(ShortestMixedPath, AgainstDirectedEdgeIsUnreachable) {
    const MixedGraph g(2, {DirectedEdge{0, 1}}, {});
    EXPECT_FALSE(shortest_mixed_path(g, 1, 0).has_value());
}

TEST(ShortestMixedPath, LengthMatchesEnumerationOracle) {
    for (unsigned long long seed = 1; seed <= 50; ++seed) {
        const auto inst = random_instance(seed, 4 + static_cast<int>(seed % 9), 0);
        for (Vertex s = 0; s < inst.graph.vertex_count(); ++s) {
            for (Vertex t = 0; t < inst.graph.vertex_count(); ++t) {
                const auto path = shortest_mixed_path(inst.graph, s, t);
                const int expected = oracle::enumerate_shortest_length(inst.graph, s, t);
                if (expected < 0) {
                    EXPECT_FALSE(path.has_value()) << "seed " << seed;
                } else {
                    ASSERT_TRUE(path.has_value()) << "seed " << seed;
                    EXPECT_EQ(path->length(), expected)
                        << "seed " << seed << " pair " << s << "->" << t;
                    // Vertex-simple.
                    std::vector<Vertex> vs = path->vertices;
                    std::sort(vs.begin(), vs.end());
                    EXPECT_EQ(std::unique(vs.begin(), vs.end()), vs.end());
                }
            }
        }
    }
}

TEST(RouteAll, AdjacentRequestsGetUnitPaths) {
    const MixedGraph g(3, {}, {UndirectedEdge{0, 1}, UndirectedEdge{1, 2}});
    const auto routing = route_all(g, {{0, 0, 1}, {1, 2, 1}});
    EXPECT_TRUE(routing.unroutable.empty());
    ASSERT_EQ(routing.paths.size(), 2u);
    EXPECT_EQ(routing.paths[0].length(), 1);
    EXPECT_EQ(routing.paths[1].length(), 1);
}

TEST(RouteAll, DirectedBridgeBlocksReverseRequests) {
    const MixedGraph g(4, {DirectedEdge{1, 2}}, {UndirectedEdge{0, 1}, UndirectedEdge{2, 3}});
    const auto routing = route_all(g, {{0, 0, 3}, {1, 3, 0}});
    EXPECT_EQ(routing.unroutable, (std::vector<int>{1}));
    ASSERT_EQ(routing.paths.size(), 1u);
    EXPECT_EQ(routing.paths[0].request_id, 0);
}

TEST(RouteAll, MatchesPerRequestRouting) {
    for (unsigned long long seed = 60; seed < 90; ++seed) {
        const auto inst = random_instance(seed, 9, 8);
        const auto routing = route_all(inst.graph, inst.requests);
        std::size_t routable = 0;
        for (const Request& r : inst.requests) {
            auto single = shortest_mixed_path(inst.graph, r.source, r.target);
            if (single.has_value()) {
                ASSERT_GT(routing.paths.size(), routable);
                single->request_id = r.id;
                EXPECT_EQ(fingerprint(routing.paths[routable]), fingerprint(*single))
                    << "seed " << seed;
                ++routable;
            } else {
                EXPECT_TRUE(std::find(routing.unroutable.begin(), routing.unroutable.end(),
                                      r.id) != routing.unroutable.end());
            }
        }
        EXPECT_EQ(routing.paths.size(), routable);
    }
}

TEST(RouteAll, RejectsUnnormalizedRequests) {
    const MixedGraph g(2, {}, {UndirectedEdge{0, 1}});
    EXPECT_THROW(route_all(g, {{0, 1, 1}}), ContractViolation);
}

TEST(InConflict, OppositeSharedEdgeYieldsWitness) {
    const MixedGraph g(4, {},
                       {UndirectedEdge{0, 1}, UndirectedEdge{1, 2}, UndirectedEdge{2, 3}});
    const RoutedPath p = hand_path(
        g, 0, {{EdgeRef{EdgeKind::undirected, 0}, 0, 1}, {EdgeRef{EdgeKind::undirected, 1}, 1, 2}});
    const RoutedPath q = hand_path(
        g, 1, {{EdgeRef{EdgeKind::undirected, 2}, 3, 2}, {EdgeRef{EdgeKind::undirected, 1}, 2, 1}});
    const auto witness = in_conflict(p, q);
    ASSERT_TRUE(witness.has_value());
    EXPECT_EQ(witness->edge_id, 1);
    EXPECT_EQ(witness->first_direction, (Arc{1, 2}));
    EXPECT_EQ(witness->second_direction, (Arc{2, 1}));
    // Symmetry and irreflexivity.
    EXPECT_TRUE(in_conflict(q, p).has_value());
    EXPECT_FALSE(in_conflict(p, p).has_value());
}

TEST(InConflict, SharedDirectedEdgeNeverConflicts) {
    const MixedGraph g(4, {DirectedEdge{1, 2}}, {UndirectedEdge{0, 1}, UndirectedEdge{2, 3}});
    const RoutedPath p = hand_path(
        g, 0, {{EdgeRef{EdgeKind::undirected, 0}, 0, 1}, {EdgeRef{EdgeKind::directed, 0}, 1, 2}});
    const RoutedPath q = hand_path(
        g, 1, {{EdgeRef{EdgeKind::directed, 0}, 1, 2}, {EdgeRef{EdgeKind::undirected, 1}, 2, 3}});
    EXPECT_FALSE(in_conflict(p, q).has_value());
}

TEST(InConflict, MatchesExhaustiveSharedEdgeScan) {
    for (unsigned long long seed = 90; seed < 130; ++seed) {
        const auto inst = random_instance(seed, 10, 8);
        const auto routing = route_all(inst.graph, inst.requests);
        for (std::size_t i = 0; i < routing.paths.size(); ++i) {
            for (std::size_t j = 0; j < routing.paths.size(); ++j) {
                if (i == j) {
                    continue;
                }
                const auto& p = routing.paths[i];
                const auto& q = routing.paths[j];
                // Oracle: scan every shared undirected edge.
                bool expect_conflict = false;
                int lowest = -1;
                for (const auto& [id, arc] : p.undirected_dirs) {
                    const Arc* other = q.direction_on(id);
                    if (other != nullptr && !(*other == arc)) {
                        expect_conflict = true;
                        lowest = id;
                        break;
                    }
                }
                const auto witness = in_conflict(p, q);
                EXPECT_EQ(witness.has_value(), expect_conflict) << "seed " << seed;
                if (witness) {
                    EXPECT_EQ(witness->edge_id, lowest);
                }
            }
        }
    }
}

TEST(ConflictDegrees, DisjointPathsHaveDegreeZero) {
    const MixedGraph g(4, {}, {UndirectedEdge{0, 1}, UndirectedEdge{2, 3}});
    const auto routing = route_all(g, {{0, 0, 1}, {1, 2, 3}});
    const auto info = conflict_degrees(routing.paths);
    EXPECT_EQ(info.degree, (std::vector<int>{0, 0}));
    EXPECT_TRUE(info.pairs.empty());
}

TEST(ConflictDegrees, SharedEdgeSplitsIntoOpposingCamps) {
    // Six requests across one edge, three each way: each path conflicts with
    // the three opposite ones.
    const MixedGraph g(2, {}, {UndirectedEdge{0, 1}});
    std::vector<Request> requests;
    for (int i = 0; i < 3; ++i) {
        requests.push_back({i, 0, 1});
    }
    for (int i = 3; i < 6; ++i) {
        requests.push_back({i, 1, 0});
    }
    const auto routing = route_all(g, requests);
    const auto info = conflict_degrees(routing.paths);
    EXPECT_EQ(info.degree, (std::vector<int>(6, 3)));
    EXPECT_EQ(info.pairs.size(), 9u);
}

TEST(ConflictDegrees, OddSplitGivesFloorAndCeilingDegrees) {
    // Five paths over one edge, three forward and two backward: forward paths
    // conflict with floor(5/2), backward with ceil(5/2).
    const MixedGraph g(2, {}, {UndirectedEdge{0, 1}});
    std::vector<Request> requests;
    for (int i = 0; i < 3; ++i) {
        requests.push_back({i, 0, 1});
    }
    for (int i = 3; i < 5; ++i) {
        requests.push_back({i, 1, 0});
    }
    const auto info = conflict_degrees(route_all(g, requests).paths);
    EXPECT_EQ(info.degree, (std::vector<int>{2, 2, 2, 3, 3}));
}

TEST(ConflictDegrees, DegreeMultisetInvariantUnderReordering) {
    const auto inst = random_instance(424242, 10, 8);
    auto routing = route_all(inst.graph, inst.requests);
    auto info = conflict_degrees(routing.paths);
    std::vector<RoutedPath> reversed(routing.paths.rbegin(), routing.paths.rend());
    auto reversed_info = conflict_degrees(reversed);
    std::reverse(reversed_info.degree.begin(), reversed_info.degree.end());
    EXPECT_EQ(info.degree, reversed_info.degree);
}

TEST(Routing, DeterministicAcrossRuns) {
    const auto inst = random_instance(31337, 11, 8);
    const auto first = route_all(inst.graph, inst.requests);
    const auto second = route_all(inst.graph, inst.requests);
    ASSERT_EQ(first.paths.size(), second.paths.size());
    for (std::size_t i = 0; i < first.paths.size(); ++i) {
        EXPECT_EQ(fingerprint(first.paths[i]), fingerprint(second.paths[i]));
    }
    EXPECT_EQ(first.unroutable, second.unroutable);
}
