#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "jts/chordal.hpp"
#include "jts/graph.hpp"
#include "jts/vertex_set.hpp"
#include "test_util.hpp"

using namespace jts;

TEST_CASE("vertex set canonical representation and operations") {
    VertexSet a{3, 1, 2, 3, 1};
    CHECK(a.size() == 3);
    CHECK(a.members() == std::vector<int>{1, 2, 3});
    CHECK(a.contains(2));
    CHECK(!a.contains(4));

    VertexSet b{2, 4};
    CHECK(a.set_intersection(b) == VertexSet{2});
    CHECK(a.set_union(b) == VertexSet{1, 2, 3, 4});
    CHECK(a.set_difference(b) == VertexSet{1, 3});
    CHECK(a.intersection_size(b) == 1);
    CHECK(a.intersects(b));
    CHECK(!VertexSet{1}.intersects(VertexSet{2}));
    CHECK(VertexSet{2}.subset_of(a));
    CHECK(!a.subset_of(b));
    CHECK(VertexSet{}.subset_of(a));

    a.insert(0);
    CHECK(a.min() == 0);
    a.erase(2);
    CHECK(a == VertexSet{0, 1, 3});
    CHECK(a.to_string() == "0 1 3");
}

TEST_CASE("graph edges and induced subgraphs") {
    Graph k4(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
    CHECK(k4.num_edges() == 6);
    k4.add_edge(0, 1);  // duplicate is a no-op
    CHECK(k4.num_edges() == 6);

    Graph e = induced_subgraph(k4, VertexSet{0, 1});
    CHECK(e.num_vertices() == 2);
    CHECK(e.num_edges() == 1);

    Graph same = induced_subgraph(k4, VertexSet{0, 1, 2, 3});
    CHECK(same == k4);

    CHECK_THROWS_AS(induced_subgraph(k4, VertexSet{0, 9}), std::out_of_range);
    CHECK_THROWS(k4.add_edge(1, 1));
}

TEST_CASE("graph edge mask round trip") {
    std::mt19937_64 eng(7);
    for (int rep = 0; rep < 50; ++rep) {
        std::uint64_t mask = eng() & ((std::uint64_t{1} << 21) - 1);
        Graph g = Graph::from_edge_mask(7, mask);
        CHECK(g.edge_mask() == mask);
    }
}

TEST_CASE("edge list text format round trip") {
    Graph g = testutil::seven_a();
    std::ostringstream os;
    write_edge_list(os, g);
    std::istringstream is("# a comment\n\n" + os.str());
    Graph h = read_edge_list(is);
    CHECK(h == g);
}

TEST_CASE("decomposability of the small named cases") {
    // chordless 4-cycle
    Graph c4(4);
    c4.add_edge(0, 1);
    c4.add_edge(1, 2);
    c4.add_edge(2, 3);
    c4.add_edge(3, 0);
    CHECK(!is_decomposable(c4));

    Graph k4 = Graph::from_edge_mask(4, (1u << 6) - 1);
    auto mcs = maximum_cardinality_search(k4);
    CHECK(mcs.decomposable);
    REQUIRE(mcs.decomposition.has_value());
    CHECK(mcs.decomposition->cliques == std::vector<VertexSet>{VertexSet{0, 1, 2, 3}});

    for (int v : {1, 2, 5, 9}) CHECK(is_decomposable(Graph(v)));

    Graph c5(5);
    for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
    CHECK(!is_decomposable(c5));
}

TEST_CASE("seven-vertex example pair decomposes as constructed") {
    auto mcs = maximum_cardinality_search(testutil::seven_a());
    REQUIRE(mcs.decomposable);
    auto cliques = mcs.decomposition->cliques;
    std::sort(cliques.begin(), cliques.end());
    std::vector<VertexSet> expect{{0, 1}, {1, 2}, {1, 6}, {0, 3, 4}, {4, 5}};
    std::sort(expect.begin(), expect.end());
    CHECK(cliques == expect);

    auto mcs_b = maximum_cardinality_search(testutil::seven_b());
    REQUIRE(mcs_b.decomposable);
    auto cb = mcs_b.decomposition->cliques;
    CHECK(std::find(cb.begin(), cb.end(), VertexSet{0, 1, 6}) != cb.end());

    // a clique of the decomposition induces a complete subgraph
    Graph sub = induced_subgraph(testutil::seven_a(), VertexSet{0, 3, 4});
    CHECK(sub.num_edges() == 3);
}

TEST_CASE("mcs agrees with brute-force chordality - exhaustive to v=6") {
    for (int v = 2; v <= 6; ++v) {
        const std::uint64_t total = std::uint64_t{1} << (v * (v - 1) / 2);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            Graph g = Graph::from_edge_mask(v, mask);
            bool fast = is_decomposable(g);
            bool slow = testutil::chordal_by_cycles(g);
            if (fast != slow) {
                CAPTURE(v);
                CAPTURE(mask);
                REQUIRE(fast == slow);
            }
        }
    }
}

TEST_CASE("mcs agrees with brute-force chordality - sampled v=7") {
    std::mt19937_64 eng(20240811);
    for (int rep = 0; rep < 3000; ++rep) {
        std::uint64_t mask = eng() & ((std::uint64_t{1} << 21) - 1);
        Graph g = Graph::from_edge_mask(7, mask);
        REQUIRE(is_decomposable(g) == testutil::chordal_by_cycles(g));
    }
}

TEST_CASE("decomposition cliques, separators and the counting identity") {
    // exhaustive over v=5, plus the running-intersection invariant
    for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
        Graph g = Graph::from_edge_mask(5, mask);
        auto mcs = maximum_cardinality_search(g);
        if (!mcs.decomposable) continue;
        const auto& dec = *mcs.decomposition;

        auto got = dec.cliques;
        auto want = testutil::max_cliques_brute(g);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        REQUIRE(got == want);

        long sum = 0;
        for (const auto& c : dec.cliques) sum += c.size();
        for (const auto& s : dec.separators) sum -= s.size();
        REQUIRE(sum == 5);

        // S_i = C_i ∩ (C_1 ∪ … ∪ C_{i-1}) and S_i ⊆ C_{parent}
        VertexSet acc = dec.cliques[0];
        for (int i = 1; i < dec.size(); ++i) {
            REQUIRE(dec.separators[i] == dec.cliques[i].set_intersection(acc));
            REQUIRE(dec.parents[i] < i);
            REQUIRE(dec.separators[i].subset_of(dec.cliques[dec.parents[i]]));
            acc = acc.set_union(dec.cliques[i]);
        }
    }
}

TEST_CASE("count of decomposable graphs on few vertices") {
    // 61 of the 64 labelled graphs on 4 vertices are chordal (the three
    // 4-cycles are not)
    int dec4 = 0;
    for (std::uint64_t mask = 0; mask < 64; ++mask)
        if (is_decomposable(Graph::from_edge_mask(4, mask))) ++dec4;
    CHECK(dec4 == 61);
}
