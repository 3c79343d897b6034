#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "defset/graph.hpp"

using namespace defset;

TEST_CASE("edge and graph construction") {
    CHECK(make_edge(3, 1) == Edge{1, 3});
    CHECK(make_edge(1, 3) == Edge{1, 3});
    CHECK_THROWS_AS(make_edge(2, 2), std::invalid_argument);

    SimpleGraph g = make_graph(4, {{3, 1}, {1, 2}});
    CHECK(g.edges == std::vector<Edge>{{1, 2}, {1, 3}});
    CHECK(g.has_edge(2, 1));
    CHECK(g.has_edge(1, 3));
    CHECK(!g.has_edge(2, 3));

    CHECK_THROWS_AS(make_graph(3, {{1, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(make_graph(3, {{1, 2}, {2, 1}}), std::invalid_argument);
    CHECK(!find_even_circuit(make_graph(0, {})));
}

TEST_CASE("edge-count threshold") {
    CHECK(even_circuit_threshold(3) == 3);
    CHECK(even_circuit_threshold(4) == 4);
    CHECK(even_circuit_threshold(5) == 5);
    CHECK(even_circuit_threshold(6) == 7);
    CHECK(even_circuit_threshold(7) == 8);
    CHECK(even_circuit_threshold(12) == 15);
}

TEST_CASE("even circuit from an even simple cycle") {
    SimpleGraph g = make_graph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    auto t = find_even_circuit(g);
    REQUIRE(t);
    CHECK(t->even());
    CHECK(t->length() == 4);
    CHECK(!validate_trail(g, *t));
}

TEST_CASE("even circuit from two odd cycles sharing a vertex") {
    // Two triangles meeting at vertex 1; no even simple cycle exists.
    SimpleGraph g = make_graph(5, {{1, 2}, {2, 3}, {1, 3}, {1, 4}, {4, 5}, {1, 5}});
    auto t = find_even_circuit(g);
    REQUIRE(t);
    CHECK(t->walk == std::vector<int>{1, 2, 3, 1, 4, 5});
    CHECK(t->length() == 6);
    CHECK(t->even());
    CHECK(!validate_trail(g, *t));
}

TEST_CASE("no even circuit in a single odd cycle or a forest") {
    CHECK(!find_even_circuit(make_graph(3, {{1, 2}, {2, 3}, {1, 3}})));
    CHECK(!find_even_circuit(make_graph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}})));
    CHECK(!find_even_circuit(make_graph(1, {})));
    // Two triangles with no shared vertex.
    CHECK(!find_even_circuit(
        make_graph(6, {{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}})));
}

TEST_CASE("trail validation catches defects") {
    SimpleGraph g = make_graph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}});
    CHECK(validate_trail(g, ClosedTrail{{1, 2, 4}}));            // 2-4 not an edge
    CHECK(validate_trail(g, ClosedTrail{{1, 2, 1, 2}}));         // repeated edge
    CHECK(!validate_trail(g, ClosedTrail{{1, 2, 3, 4}}));
}

TEST_CASE("bipartite cycle search") {
    // K_{2,2} as parts {1,2} and {3,4}.
    SimpleGraph g = make_graph(4, {{1, 3}, {1, 4}, {2, 3}, {2, 4}});
    auto t = find_cycle_bipartite(g, 2);
    REQUIRE(t);
    CHECK(t->walk == std::vector<int>{1, 3, 2, 4});
    CHECK(!validate_trail(g, *t));

    SimpleGraph forest = make_graph(4, {{1, 3}, {1, 4}, {2, 4}});
    CHECK(!find_cycle_bipartite(forest, 2));

    CHECK_THROWS_AS(find_cycle_bipartite(make_graph(4, {{1, 2}}), 2),
                    std::invalid_argument);
}

TEST_CASE("alternate partition of an even trail") {
    ClosedTrail t{{1, 2, 3, 1, 4, 5}};
    auto [f1, f2] = alternate_partition(t);
    CHECK(f1 == std::vector<Edge>{{1, 2}, {1, 3}, {4, 5}});
    CHECK(f2 == std::vector<Edge>{{2, 3}, {1, 4}, {1, 5}});
    CHECK(degree_balanced(f1, f2));

    // The two parts tile the trail's edge set.
    std::vector<Edge> all = f1;
    all.insert(all.end(), f2.begin(), f2.end());
    std::sort(all.begin(), all.end());
    std::vector<Edge> expect = t.edges();
    std::sort(expect.begin(), expect.end());
    CHECK(all == expect);

    CHECK_THROWS_AS(alternate_partition(ClosedTrail{{1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("degree balance is a real check") {
    CHECK(degree_balanced({}, {}));
    CHECK(!degree_balanced({{1, 2}}, {{3, 4}}));
    CHECK(degree_balanced({{1, 2}, {3, 4}}, {{1, 4}, {2, 3}}));
}

TEST_CASE("oriented edges follow the walk, normalized edges do not") {
    ClosedTrail t{{1, 3, 2, 4}};
    CHECK(t.oriented_edges() ==
          std::vector<std::pair<int, int>>{{1, 3}, {3, 2}, {2, 4}, {4, 1}});
    CHECK(t.edges() == std::vector<Edge>{{1, 3}, {2, 3}, {2, 4}, {1, 4}});
}

TEST_CASE("search agrees with the exhaustive reference on random graphs") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        const int v = 3 + static_cast<int>(rng() % 5);  // 3..7 vertices
        std::vector<Edge> edges;
        for (int a = 1; a <= v; ++a)
            for (int b = a + 1; b <= v; ++b)
                if (rng() % 3 == 0) edges.push_back({a, b});
        SimpleGraph g = make_graph(v, edges);

        auto found = find_even_circuit(g);
        CHECK(found.has_value() == even_circuit_exists_brute(g));
        if (found) {
            CHECK(found->even());
            CHECK(!validate_trail(g, *found));
        }
    }
}

TEST_CASE("dense graphs above the threshold always yield a trail") {
    // Every graph on 5 vertices with 6+ edges, by direct enumeration.
    std::vector<Edge> all;
    for (int a = 1; a <= 5; ++a)
        for (int b = a + 1; b <= 5; ++b) all.push_back({a, b});
    REQUIRE(all.size() == 10);
    for (unsigned mask = 0; mask < (1u << 10); ++mask) {
        if (__builtin_popcount(mask) <= even_circuit_threshold(5)) continue;
        std::vector<Edge> edges;
        for (size_t i = 0; i < all.size(); ++i)
            if (mask & (1u << i)) edges.push_back(all[i]);
        SimpleGraph g = make_graph(5, edges);
        auto t = find_even_circuit(g);
        REQUIRE(t);
        CHECK(t->even());
        CHECK(!validate_trail(g, *t));
    }
}
