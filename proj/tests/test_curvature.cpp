#include "doctest.h"
#include "oracles.hpp"
#include "riccigraph/curvature.hpp"
#include "riccigraph/errors.hpp"
#include "riccigraph/families.hpp"
#include "riccigraph/measure.hpp"

using namespace ricci;

namespace {

Rat oracle_kappa(const Graph& g, int x, int y) {
    auto mu = random_walk_measure(g, x);
    auto nu = random_walk_measure(g, y);
    return 1 - dual_enumeration_oracle(g, mu, nu) / Rat(*hop_distance(g, x, y));
}

Graph petersen() {
    GraphBuilder b;
    for (int i = 0; i < 10; ++i) b.add_vertex("p" + std::to_string(i));
    for (int i = 0; i < 5; ++i) {
        b.add_edge(i, (i + 1) % 5);      // outer cycle
        b.add_edge(i, i + 5);            // spokes
        b.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
    }
    return b.build();
}

}  // namespace

TEST_CASE("ricci examples") {
    Graph k5 = generate_family("complete:5");
    CHECK(ricci_curvature(k5, 0, 1) == rat(3, 4));

    Graph t = load_edge_list("x y\nx a\nx b\ny c\ny d", false);
    CHECK(ricci_curvature(t, t.vertex("x"), t.vertex("y")) == rat(-2, 3));

    Graph c4 = generate_family("cycle:4");
    CHECK(ricci_curvature(c4, 0, 1) == oracle_kappa(c4, 0, 1));
    CHECK(ricci_curvature(c4, 0, 1) == 0);

    CHECK_THROWS_AS(ricci_curvature(k5, 2, 2), SameVertexError);
    Graph split = load_edge_list("a b\nc d", false);
    CHECK_THROWS_AS(ricci_curvature(split, 0, 2), CrossComponentError);
}

TEST_CASE("lower_bound_linyau examples") {
    Graph star = generate_family("star:3");
    CHECK(lower_bound_linyau(star, 1, 0) == 0);  // leaf end has degree 1

    Graph t = load_edge_list("x y\nx a\nx b\ny c\ny d", false);
    CHECK(lower_bound_linyau(t, t.vertex("x"), t.vertex("y")) == rat(-2, 3));

    Graph w = load_edge_list("x y 2\nx a 1", true);
    // d_x = 3, d_y = 2: -2(1 - 2/3 - 1)_+ = 0
    REQUIRE(w.weighted_degree(w.vertex("y")) == 2);
    CHECK(lower_bound_linyau(w, w.vertex("x"), w.vertex("y")) == 0);
    CHECK_THROWS_AS(lower_bound_linyau(t, t.vertex("a"), t.vertex("b")), NotAdjacentError);
}

TEST_CASE("lower_bound_triangle examples") {
    for (int n = 3; n <= 9; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        auto [bound, tag] = lower_bound_triangle(kn, 0, 1);
        CHECK(bound == rat(n - 2, n - 1));
        CHECK(tag == CaseTag::BNeg);
    }

    // With no triangles the bound reduces to the degree-only bound.
    Graph tree = generate_family("tree:random:25:2");
    for (auto [x, y] : tree.edges())
        CHECK(lower_bound_triangle(tree, x, y).first == lower_bound_linyau(tree, x, y));

    // Degrees 3 and 3 with one shared neighbor: A = B = 0, bound = 1/3,
    // attained exactly on this witness graph.
    Graph w = load_edge_list("x y\nx a\ny a\nx c\ny b", false);
    auto [bound, tag] = lower_bound_triangle(w, w.vertex("x"), w.vertex("y"));
    CHECK(bound == rat(1, 3));
    CHECK(tag == CaseTag::ANonneg);
    CHECK(oracle_kappa(w, w.vertex("x"), w.vertex("y")) == rat(1, 3));
    CHECK(ricci_curvature(w, w.vertex("x"), w.vertex("y")) == rat(1, 3));
}

TEST_CASE("upper_bound_triangle examples") {
    Graph tree = generate_family("tree:random:12:9");
    for (auto [x, y] : tree.edges()) CHECK(upper_bound_triangle(tree, x, y) == 0);
    for (int n = 3; n <= 9; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        CHECK(upper_bound_triangle(kn, 0, 1) == rat(n - 2, n - 1));
    }
    Graph w = load_edge_list("a b 1\nb c 1\na c 2", true);
    CHECK(upper_bound_triangle(w, w.vertex("a"), w.vertex("b")) == rat(1, 2));
}

TEST_CASE("min_triangles_for_positive examples") {
    Graph g = load_edge_list("x y\nx a\nx b\nx c\nx d\ny a\ny b\ny c\ny d", false);
    REQUIRE(g.weighted_degree(g.vertex("x")) == 5);
    CHECK(min_triangles_for_positive(g, g.vertex("x"), g.vertex("y"), rat(1, 2)) == 3);

    for (int n = 4; n <= 9; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        CHECK(min_triangles_for_positive(kn, 0, 1, rat(n - 2, n - 1)) == n - 2);
    }

    Graph k4 = generate_family("complete:4");
    CHECK(min_triangles_for_positive(k4, 0, 1, rat(1, 3)) == 1);
    CHECK_THROWS_AS(min_triangles_for_positive(k4, 0, 1, Rat(0)), InvalidArgumentError);
}

TEST_CASE("edge_report examples") {
    Graph k4 = generate_family("complete:4");
    auto r = edge_report(k4, 0, 1);
    CHECK(r.kappa == rat(2, 3));
    CHECK(*r.lower_triangle == rat(2, 3));
    CHECK(*r.upper_triangle == rat(2, 3));
    CHECK(r.lower_tight);
    CHECK(r.upper_tight);
    CHECK(*r.sharp == 2);

    Graph star = generate_family("star:5");
    auto s = edge_report(star, 0, 1);
    CHECK(s.kappa == 0);
    CHECK(*s.lower_linyau == 0);

    // Non-adjacent pairs carry kappa alone.
    Graph p4 = generate_family("path:4");
    auto far = edge_report(p4, 0, 3);
    CHECK(far.distance == 3);
    CHECK(!far.sharp.has_value());
    CHECK(!far.lower_triangle.has_value());
}

TEST_CASE("sandwich holds on random 8-vertex graphs, checked against the oracle") {
    for (unsigned long seed = 1; seed <= 10; ++seed) {
        Graph g = generate_family("gnp:8:0.5:" + std::to_string(seed));
        if (!test_oracles::is_connected(g)) continue;
        for (auto [x, y] : g.edges()) {
            auto r = edge_report(g, x, y);
            CHECK(r.kappa == oracle_kappa(g, x, y));
            CHECK(*r.lower_linyau <= *r.lower_triangle);
            CHECK(*r.lower_triangle <= r.kappa);
            CHECK(r.kappa <= *r.upper_triangle);
            CHECK(*r.upper_triangle <= 1);
        }
    }
}

TEST_CASE("case B_NEG pins kappa to the upper bound") {
    for (const Graph& g : test_oracles::small_connected_corpus(8, 40))
        for (auto [x, y] : g.edges()) {
            auto r = edge_report(g, x, y);
            if (r.case_tag == CaseTag::BNeg) {
                CHECK(r.kappa == *r.upper_triangle);
                CHECK(r.upper_tight);
            }
        }
}

TEST_CASE("trees attain the degree-only bound") {
    for (unsigned long seed = 1; seed <= 8; ++seed) {
        Graph t = generate_family("tree:random:40:" + std::to_string(seed));
        for (auto [x, y] : t.edges()) {
            auto r = edge_report(t, x, y);
            CHECK(r.kappa == *r.lower_linyau);
            CHECK(r.lower_tight);
        }
    }
}

TEST_CASE("curvature symmetry") {
    for (const Graph& g : test_oracles::small_connected_corpus(7, 20))
        for (auto [x, y] : g.edges()) {
            CHECK(ricci_curvature(g, x, y) == ricci_curvature(g, y, x));
            CHECK(lower_bound_triangle(g, x, y).first == lower_bound_triangle(g, y, x).first);
        }
}

TEST_CASE("kappa never exceeds 1") {
    for (const Graph& g : test_oracles::small_connected_corpus(8, 30))
        for (int x = 0; x < g.vertex_count(); ++x)
            for (int y = x + 1; y < g.vertex_count(); ++y)
                CHECK(ricci_curvature(g, x, y) <= 1);
}

TEST_CASE("non-neighbor curvature dominates the edge minimum") {
    for (const Graph& g : test_oracles::small_connected_corpus(7, 20)) {
        std::optional<Rat> edge_min;
        for (auto [x, y] : g.edges()) {
            Rat k = ricci_curvature(g, x, y);
            if (!edge_min || k < *edge_min) edge_min = k;
        }
        if (!edge_min) continue;
        for (int x = 0; x < g.vertex_count(); ++x)
            for (int y = x + 1; y < g.vertex_count(); ++y)
                if (!g.adjacent(x, y)) CHECK(ricci_curvature(g, x, y) >= *edge_min);
    }
}

TEST_CASE("scalar_report examples") {
    for (int n = 4; n <= 9; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        auto r = scalar_report(kn, 0);
        CHECK(r.mean_kappa == rat(n - 2, n - 1));
        CHECK(r.upper == r.mean_kappa);  // equality on complete graphs
        CHECK(r.clustering == 1);
    }

    Graph t = generate_family("tree:random:20:4");
    for (int x = 0; x < t.vertex_count(); ++x) {
        if (t.neighbor_count(x) < 2) continue;
        auto r = scalar_report(t, x);
        CHECK(r.clustering == 0);
        CHECK(r.upper == 0);
        CHECK(r.mean_kappa <= 0);
        CHECK(r.mean_kappa >= -2);
    }

    Graph c5 = generate_family("cycle:5");
    auto r = scalar_report(c5, 0);
    CHECK(r.clustering == 0);
    CHECK(r.lower <= r.mean_kappa);
    CHECK(r.mean_kappa <= r.upper);

    Graph w = load_edge_list("a b 2\nb c 1\na c 1", true);
    CHECK_THROWS_AS(scalar_report(w, 0), WeightedGraphError);
    Graph p3 = generate_family("path:3");
    CHECK_THROWS_AS(scalar_report(p3, 0), DegreeError);
}

TEST_CASE("scalar sandwich with refinement on a corpus") {
    for (const Graph& g : test_oracles::small_connected_corpus(8, 40))
        for (int x = 0; x < g.vertex_count(); ++x) {
            if (g.neighbor_count(x) < 2) continue;
            auto r = scalar_report(g, x);
            CHECK(r.lower <= r.mean_kappa);
            CHECK(r.mean_kappa <= r.upper);
            if (r.refined_lower) CHECK(*r.refined_lower <= r.mean_kappa);
        }
}

TEST_CASE("graph_report examples") {
    Graph p = petersen();
    std::vector<std::pair<int, int>> edges = p.edges();
    auto rows = graph_report(p, edges, 4);
    REQUIRE(rows.size() == 15);
    const Rat kappa = rows[0].report->kappa;
    for (const auto& row : rows) {
        REQUIRE(row.report.has_value());
        CHECK(row.report->kappa == kappa);  // vertex-transitive
    }
    CHECK(kappa == oracle_kappa(p, 0, 1));

    CHECK(graph_report(p, {}, 2).empty());

    Graph k2 = generate_family("complete:2");
    auto single = graph_report(k2, k2.edges(), 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].report->kappa == 0);
}

TEST_CASE("graph_report records per-row failures") {
    Graph split = load_edge_list("a b\nc d", false);
    auto rows = graph_report(split, {{0, 2}, {0, 1}}, 2);
    REQUIRE(rows.size() == 2);
    CHECK(!rows[0].report.has_value());
    CHECK(!rows[0].error.empty());
    CHECK(rows[1].report.has_value());
}

TEST_CASE("weighted sandwich on random weighted graphs") {
    for (unsigned long seed = 1; seed <= 8; ++seed) {
        Graph base = generate_family("gnp:9:0.5:" + std::to_string(100 + seed));
        Graph w = test_oracles::with_random_weights(base, seed);
        for (auto [x, y] : w.edges()) {
            auto r = edge_report(w, x, y);
            CHECK(*r.lower_linyau <= *r.lower_triangle);
            CHECK(*r.lower_triangle <= r.kappa);
            CHECK(r.kappa <= *r.upper_triangle);
            CHECK(*r.upper_triangle <= 1);
        }
    }
}
