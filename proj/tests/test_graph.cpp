#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "majority/majority.hpp"

using namespace majority;

namespace {

template <class Fn>
errc thrown_code(Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected a majority::Error");
}

Graph k33() {
    EdgeList raw;
    raw.n = 6;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) raw.edges.push_back({i, j});
    return build_graph(raw, 3);
}

}  // namespace

TEST_CASE("build_graph validates and canonicalizes") {
    EdgeList tri{3, {{0, 1}, {0, 2}, {1, 2}}, {}};
    CHECK(thrown_code([&] { build_graph(tri, 3); }) == errc::even_degree);

    tri.loops = {0, 1, 2};
    Graph g = build_graph(tri, 3);
    CHECK(g.n == 3);
    CHECK(g.d_max == 3);
    for (int v = 0; v < 3; ++v) {
        CHECK(g.degree(v) == 3);
        CHECK(g.has_loop(v));
    }
    std::vector<std::pair<int, int>> want = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    CHECK(g.edges == want);
    CHECK(g.adj[0] == std::vector<int>{0, 1, 2});
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 1));  // the loop shows up as self-adjacency

    CHECK(thrown_code([] {
              return build_graph({2, {{0, 1}, {1, 0}}, {}}, 3);
          }) == errc::duplicate_edge);
    CHECK(thrown_code([] {
              return build_graph({2, {{0, 1}}, {1, 1}}, 3);
          }) == errc::duplicate_edge);
    CHECK(thrown_code([] {
              return build_graph({2, {{1, 1}}, {}}, 3);
          }) == errc::invalid_params);
    CHECK(thrown_code([] {
              return build_graph({2, {{0, 3}}, {}}, 3);
          }) == errc::invalid_params);
    CHECK(thrown_code([] { return build_graph({0, {}, {}}, 3); }) == errc::invalid_params);
    CHECK(thrown_code([&] { return build_graph(tri, 1); }) == errc::degree_exceeded);
    CHECK(thrown_code([] {
              // two looped triangles, no path between them
              return build_graph(
                  {6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}}, {0, 1, 2, 3, 4, 5}}, 3);
          }) == errc::disconnected);
}

TEST_CASE("normalize_odd_degrees toggles loops within the cap") {
    // plain 4-cycle: every vertex even, room for a loop
    EdgeList square{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {}};
    Graph g = normalize_odd_degrees(square, 3, 3);
    for (int v = 0; v < 4; ++v) {
        CHECK(g.degree(v) == 3);
        CHECK(g.has_loop(v));
    }

    // an odd vertex (ring edges plus loop) is left alone
    EdgeList withloop{4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, {0}};
    Graph h = normalize_odd_degrees(withloop, 3, 3);
    CHECK(h.has_loop(0));
    for (int v = 0; v < 4; ++v) CHECK(h.degree(v) == 3);

    // a vertex made even by its own loop loses the loop instead
    EdgeList two{2, {{0, 1}}, {0}};
    Graph q = normalize_odd_degrees(two, 3, 3);
    CHECK_FALSE(q.has_loop(0));
    CHECK(q.degree(0) == 1);
    CHECK(q.degree(1) == 1);

    // even vertex already at its cap cannot be fixed
    EdgeList tri{3, {{0, 1}, {0, 2}, {1, 2}}, {}};
    CHECK(thrown_code([&] { return normalize_odd_degrees(tri, 2, 3); }) ==
          errc::cannot_normalize);

    CHECK(thrown_code([&] {
              return normalize_odd_degrees(tri, std::vector<int>{3, 3}, 3);
          }) == errc::invalid_params);
}

TEST_CASE("path family: degrees, spheres, eccentricity") {
    Graph g = gen_path(7);
    CHECK(g.n == 7);
    CHECK(g.d_max == 3);
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(6) == 1);
    CHECK_FALSE(g.has_loop(0));
    for (int v = 1; v < 6; ++v) {
        CHECK(g.degree(v) == 3);
        CHECK(g.has_loop(v));
    }

    CHECK(sphere_sizes(g, 3, 3) == std::vector<std::int64_t>{1, 2, 2, 2});
    CHECK(sphere_sizes(g, 0, 6) == std::vector<std::int64_t>{1, 1, 1, 1, 1, 1, 1});
    CHECK(g.ball(3, 1) == std::vector<int>{2, 3, 4});
    CHECK(g.eccentricity(0) == 6);
    CHECK(g.eccentricity(3) == 3);
    CHECK(g.distances(0)[6] == 6);
}

TEST_CASE("torus family: 5-regular with wraparound distances") {
    Graph g = gen_torus(4, 4);
    CHECK(g.n == 16);
    CHECK(g.d_max == 5);
    for (int v = 0; v < g.n; ++v) {
        CHECK(g.degree(v) == 5);
        CHECK(g.has_loop(v));
    }
    // (0,0) to (2,2): two steps each way, wrap or not
    CHECK(g.distances(0)[2 * 4 + 2] == 4);
    CHECK(g.eccentricity(0) == 4);
    // (0,0) to (0,3) wraps around in one step
    CHECK(g.distances(0)[3] == 1);
}

TEST_CASE("tree_ball family: regular tree with looped root case") {
    Graph tiny = gen_tree_ball(3, 0);
    CHECK(tiny.n == 1);
    CHECK(tiny.has_loop(0));
    CHECK(tiny.degree(0) == 1);

    Graph g = gen_tree_ball(3, 2);
    CHECK(g.n == 10);
    CHECK(sphere_sizes(g, 0, 2) == std::vector<std::int64_t>{1, 3, 6});
    CHECK(g.degree(0) == 3);
    CHECK_FALSE(g.has_loop(0));
    // leaves are odd already
    for (int v = 4; v < 10; ++v) CHECK(g.degree(v) == 1);

    CHECK(thrown_code([] { return gen_tree_ball(4, 2); }) == errc::invalid_params);
}

TEST_CASE("complete and circular ladder families") {
    Graph k4 = gen_complete(4);
    CHECK(k4.n == 4);
    CHECK(k4.d_max == 3);
    CHECK(k4.edges.size() == 6);
    for (int v = 0; v < 4; ++v) {
        CHECK(k4.degree(v) == 3);
        CHECK_FALSE(k4.has_loop(v));
    }

    Graph cl8 = gen_circular_ladder(8);
    CHECK(cl8.n == 16);
    CHECK(cl8.edges.size() == 24);
    for (int v = 0; v < 16; ++v) CHECK(cl8.degree(v) == 3);
    CHECK(cl8.adjacent(0, 1));
    CHECK(cl8.adjacent(0, 7));
    CHECK(cl8.adjacent(0, 8));
    CHECK_FALSE(cl8.adjacent(0, 9));

    Graph b = k33();
    CHECK(b.n == 6);
    CHECK(b.distances(0)[1] == 2);
    CHECK(b.ball(0, 1) == std::vector<int>{0, 3, 4, 5});
}

TEST_CASE("random odd graphs are valid and reproducible") {
    Rng rng(2026);
    for (int k = 0; k < 25; ++k) {
        Graph g = random_odd_graph(30, 7, rng);
        CHECK(g.n >= 1);
        CHECK(g.d_max <= 7);
        for (int v = 0; v < g.n; ++v) {
            CHECK(g.degree(v) % 2 == 1);
            CHECK(g.degree(v) <= g.d_max);
        }
    }

    Rng a(7), b(7);
    Graph ga = random_odd_graph(30, 7, a);
    Graph gb = random_odd_graph(30, 7, b);
    CHECK(ga.n == gb.n);
    CHECK(ga.edges == gb.edges);
}
