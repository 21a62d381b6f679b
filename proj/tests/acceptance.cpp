// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "riccigraph/bakry_emery.hpp"
#include "riccigraph/curvature.hpp"
#include "riccigraph/families.hpp"
#include "riccigraph/measure.hpp"
#include "riccigraph/transport.hpp"

using namespace ricci;

namespace {

struct Criterion {
    bool ok = true;
    std::string detail;
    long checks = 0;

    void expect(bool condition, const std::string& what) {
        ++checks;
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

struct DualityLedger {
    long verified = 0;
    long failed = 0;
    std::string first_failure;
} duality;

// Every W1 the suite computes goes through here, so the duality criterion
// covers the whole run.
Rat checked_w1(const Graph& g, int x, int y) {
    auto mu = random_walk_measure(g, x);
    auto nu = random_walk_measure(g, y);
    auto res = wasserstein1(g, mu, nu);
    auto check = verify_plan(g, mu, nu, res);
    if (check.ok) {
        ++duality.verified;
    } else {
        ++duality.failed;
        if (duality.first_failure.empty())
            duality.first_failure = g.label(x) + "-" + g.label(y) + ": " + check.failures.front();
    }
    return res.value;
}

Rat edge_kappa(const Graph& g, int x, int y) { return 1 - checked_w1(g, x, y); }

std::vector<Graph> erdos_renyi_corpus() {
    std::vector<Graph> graphs;
    struct Block {
        double p;
        int n_lo, n_hi, count;
    };
    const Block blocks[] = {{0.1, 30, 50, 34}, {0.3, 15, 40, 33}, {0.6, 10, 30, 33}};
    unsigned long seed = 1000;
    for (const auto& block : blocks) {
        int made = 0;
        int n = block.n_lo;
        while (made < block.count) {
            char spec[64];
            std::snprintf(spec, sizeof(spec), "gnp:%d:%g:%lu", n, block.p, seed++);
            Graph g = generate_family(spec);
            if (test_oracles::is_connected(g)) {
                graphs.push_back(std::move(g));
                ++made;
                n = n >= block.n_hi ? block.n_lo : n + 1;
            }
        }
    }
    return graphs;
}

Graph random_weighted_tree(int n, unsigned long seed) {
    return test_oracles::with_random_weights(
        generate_family("tree:random:" + std::to_string(n) + ":" + std::to_string(seed)), seed);
}

// ---- criteria ----

Criterion complete_graphs() {
    Criterion c;
    for (int n = 2; n <= 12; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        const Rat expected = rat(n - 2, n - 1);
        for (auto [x, y] : kn.edges()) {
            auto r = edge_report(kn, x, y);
            c.expect(r.kappa == expected, "kappa off on K_" + std::to_string(n));
            c.expect(*r.lower_triangle == expected && *r.upper_triangle == expected,
                     "bounds not tight on K_" + std::to_string(n));
            c.expect(edge_kappa(kn, x, y) == expected, "certified kappa off");
        }
    }
    return c;
}

Criterion random_trees() {
    Criterion c;
    for (unsigned long seed = 1; seed <= 50; ++seed) {
        int n = 20 + static_cast<int>((seed * 37) % 181);  // up to 200 vertices
        Graph t = generate_family("tree:random:" + std::to_string(n) + ":" + std::to_string(seed));
        for (auto [x, y] : t.edges()) {
            Rat expected = lower_bound_linyau(t, x, y);
            Rat kappa = edge_kappa(t, x, y);
            c.expect(kappa == expected, "tree edge misses the closed form");
            if (t.neighbor_count(x) == 1 || t.neighbor_count(y) == 1)
                c.expect(kappa == 0, "degree-1 edge with nonzero kappa");
        }
    }
    return c;
}

Criterion bound_sandwich(const std::vector<Graph>& corpus) {
    Criterion c;
    for (const Graph& g : corpus) {
        for (auto [x, y] : g.edges()) {
            auto r = edge_report(g, x, y);
            c.expect(*r.lower_linyau <= *r.lower_triangle && *r.lower_triangle <= r.kappa &&
                         r.kappa <= *r.upper_triangle && *r.upper_triangle <= 1,
                     "sandwich violated");
            if (r.case_tag == CaseTag::BNeg)
                c.expect(r.kappa == *r.upper_triangle, "B-negative case not exact");
            c.expect(edge_kappa(g, x, y) == r.kappa, "certified kappa differs");
        }
    }
    return c;
}

Criterion duality_certificates() {
    Criterion c;
    c.expect(duality.verified > 0, "no transport calls were certified");
    c.expect(duality.failed == 0, duality.first_failure);
    c.checks = duality.verified;
    return c;
}

Criterion oracle_equivalence() {
    Criterion c;
    long graphs = 0;
    for (int n = 4; n <= 8; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        Graph cn = generate_family("cycle:" + std::to_string(n));
        Graph pn = generate_family("path:" + std::to_string(n));
        Graph sn = generate_family("star:" + std::to_string(n - 1));
        for (const Graph* g : {&kn, &cn, &pn, &sn}) {
            ++graphs;
            for (auto [x, y] : g->edges()) {
                auto mu = random_walk_measure(*g, x);
                auto nu = random_walk_measure(*g, y);
                c.expect(wasserstein1(*g, mu, nu).value == dual_enumeration_oracle(*g, mu, nu),
                         "flow and oracle disagree");
            }
        }
    }
    unsigned long seed = 5000;
    while (graphs < 210) {
        int n = 4 + static_cast<int>(seed % 5);
        double p = (seed % 3 == 0) ? 0.3 : (seed % 3 == 1 ? 0.5 : 0.8);
        char spec[64];
        std::snprintf(spec, sizeof(spec), "gnp:%d:%g:%lu", n, p, seed++);
        Graph g = generate_family(spec);
        if (!test_oracles::is_connected(g)) continue;
        ++graphs;
        for (auto [x, y] : g.edges()) {
            auto mu = random_walk_measure(g, x);
            auto nu = random_walk_measure(g, y);
            c.expect(wasserstein1(g, mu, nu).value == dual_enumeration_oracle(g, mu, nu),
                     "flow and oracle disagree on " + std::string(spec));
        }
    }
    return c;
}

Criterion gamma2_identity() {
    Criterion c;
    std::mt19937_64 rng(42);
    long graphs = 0;
    unsigned long seed = 9000;
    while (graphs < 50) {
        int n = 5 + static_cast<int>(seed % 6);
        char spec[64];
        std::snprintf(spec, sizeof(spec), "gnp:%d:0.5:%lu", n, seed++);
        Graph g = generate_family(spec);
        if (!test_oracles::is_connected(g)) continue;
        Graph target = (graphs % 3 == 2) ? test_oracles::with_random_weights(g, seed) : g;
        ++graphs;
        for (int trial = 0; trial < 20; ++trial) {
            int x = static_cast<int>(rng() % target.vertex_count());
            auto f = make_function_on_ball(target, x,
                                           [&](int) { return test_oracles::random_rat(rng); });
            std::map<int, Rat> values;
            for (std::size_t i = 0; i < f.domain.size(); ++i) values[f.domain[i]] = f.values[i];
            c.expect(gamma2(target, f, x) ==
                         test_oracles::gamma2_iterated_oracle(target, values, x),
                     "gamma2 assembly differs from the iterated definition");
        }
    }
    for (int n = 3; n <= 8; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        for (int trial = 0; trial < 10; ++trial) {
            auto f = make_function_on_ball(kn, 0,
                                           [&](int) { return test_oracles::random_rat(rng); });
            Rat lap = laplacian(kn, f, 0);
            Rat residual =
                gamma2(kn, f, 0) - lap * lap / 2 - rat(4 - n, 2 * (n - 1)) * gamma(kn, f, 0);
            Rat pair_sum(0);
            for (const Neighbor& a : kn.neighbors(0))
                for (const Neighbor& b : kn.neighbors(0)) {
                    if (a.to >= b.to) continue;
                    Rat diff = f.at(a.to) - f.at(b.to);
                    pair_sum += diff * diff;
                }
            c.expect(residual == pair_sum / Rat((n - 1) * (n - 1)),
                     "complete-graph identity residual is not the pair sum");
        }
        auto fbar = peak_test_function(kn, 0);
        Rat lap = laplacian(kn, fbar, 0);
        c.expect(gamma(kn, fbar, 0) != 0, "peak function has vanishing gradient form");
        c.expect(gamma2(kn, fbar, 0) - lap * lap / 2 ==
                     rat(4 - n, 2 * (n - 1)) * gamma(kn, fbar, 0),
                 "peak function does not annihilate the pair sum");
    }
    return c;
}

Criterion cd_closed_form_bounds() {
    Criterion c;
    const auto m2 = DimensionParam::finite(Rat(2));
    std::vector<Graph> corpus;
    for (int n = 2; n <= 8; ++n) corpus.push_back(generate_family("complete:" + std::to_string(n)));
    for (unsigned long s = 1; s <= 6; ++s)
        corpus.push_back(generate_family("tree:random:25:" + std::to_string(s)));
    corpus.push_back(generate_family("star:7"));
    corpus.push_back(generate_family("cycle:9"));
    {
        unsigned long seed = 300;
        int made = 0;
        while (made < 8) {
            char spec[64];
            std::snprintf(spec, sizeof(spec), "gnp:%d:0.45:%lu", 12 + made, seed++);
            Graph g = generate_family(spec);
            if (!test_oracles::is_connected(g)) continue;
            corpus.push_back(std::move(g));
            ++made;
        }
    }
    std::vector<Graph> weighted;
    for (unsigned long s = 1; s <= 4; ++s) {
        weighted.push_back(random_weighted_tree(12, s));
        Graph base = generate_family("gnp:10:0.5:" + std::to_string(40 + s));
        weighted.push_back(test_oracles::with_random_weights(base, s));
    }

    long positive_vertices = 0;
    for (const Graph& g : corpus) {
        for (int x = 0; x < g.vertex_count(); ++x) {
            if (g.neighbor_count(x) == 0) continue;
            c.expect(cd_verify(g, x, m2, cd_bound_degree(g, x)).verdict, "degree bound fails");
            c.expect(cd_verify(g, x, m2, cd_bound_triangle(g, x)).verdict,
                     "triangle bound fails");
            c.expect(cd_verify(g, x, m2, cd_bound_triangle_weighted(g, x)).verdict,
                     "unit-weight t_w bound fails");
            std::optional<Rat> min_kappa;
            for (const Neighbor& n : g.neighbors(x)) {
                Rat k = edge_kappa(g, x, n.to);
                if (!min_kappa || k < *min_kappa) min_kappa = k;
            }
            if (min_kappa && *min_kappa > 0) {
                ++positive_vertices;
                c.expect(cd_verify(g, x, m2, cd_bound_positive_curvature(g, x, std::nullopt))
                             .verdict,
                         "positive-curvature bound fails");
                c.expect(
                    cd_verify(g, x, m2, cd_bound_positive_curvature(g, x, *min_kappa)).verdict,
                    "positive-curvature bound with k fails");
                c.expect(cd_bound_positive_curvature_rough(g, x, *min_kappa) <=
                             cd_bound_positive_curvature(g, x, *min_kappa),
                         "rough bound beats the refined bound");
            }
        }
    }
    c.expect(positive_vertices > 0, "positive-curvature corollaries never exercised");
    for (const Graph& g : weighted) {
        for (int x = 0; x < g.vertex_count(); ++x) {
            if (g.neighbor_count(x) == 0) continue;
            c.expect(cd_verify(g, x, m2, cd_bound_degree(g, x)).verdict,
                     "weighted degree bound fails");
            c.expect(cd_verify(g, x, m2, cd_bound_triangle_weighted(g, x)).verdict,
                     "weighted t_w bound fails");
        }
    }
    return c;
}

Criterion cd_optimality() {
    Criterion c;
    const double tol = 1e-9;
    for (int n = 3; n <= 10; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        auto r2 = cd_optimal_k(kn, 0, DimensionParam::finite(Rat(2)), tol);
        c.expect(std::abs(r2.k_opt - (4.0 - n) / (2.0 * (n - 1))) <= tol,
                 "K_n optimum off at m=2");
        auto rn = cd_optimal_k(kn, 0, DimensionParam::finite(Rat(n - 1)), tol);
        c.expect(std::abs(rn.k_opt - (n - 2.0) / (2.0 * (n - 1))) <= tol,
                 "K_n optimum off at m=n-1");
    }
    Graph tree = generate_family("regular-tree:3:3");
    auto rt = cd_optimal_k(tree, 0, DimensionParam::finite(Rat(2)), tol);
    c.expect(std::abs(rt.k_opt - (2.0 / 3.0 - 1.0)) <= tol, "regular-tree optimum off");
    return c;
}

Criterion scalar_sandwich(const std::vector<Graph>& corpus) {
    Criterion c;
    for (const Graph& g : corpus) {
        for (int x = 0; x < g.vertex_count(); ++x) {
            if (g.neighbor_count(x) < 2) continue;
            auto r = scalar_report(g, x);
            c.expect(r.lower <= r.mean_kappa && r.mean_kappa <= r.upper, "scalar sandwich fails");
            if (r.refined_lower)
                c.expect(*r.refined_lower <= r.mean_kappa, "refined scalar bound fails");
        }
    }
    for (int n = 4; n <= 9; ++n) {
        Graph kn = generate_family("complete:" + std::to_string(n));
        auto r = scalar_report(kn, 0);
        c.expect(r.upper == r.mean_kappa, "upper bound not attained on K_n");
    }
    return c;
}

Criterion weighted_graphs() {
    Criterion c;
    for (unsigned long seed = 1; seed <= 20; ++seed) {
        Graph t = random_weighted_tree(10 + static_cast<int>(seed % 20), seed);
        for (auto [x, y] : t.edges())
            c.expect(edge_kappa(t, x, y) == lower_bound_linyau(t, x, y),
                     "weighted tree misses the closed form");
    }
    int made = 0;
    unsigned long seed = 700;
    while (made < 50) {
        int n = 8 + static_cast<int>(seed % 23);  // up to 30 vertices
        char spec[64];
        std::snprintf(spec, sizeof(spec), "gnp:%d:0.4:%lu", n, seed++);
        Graph base = generate_family(spec);
        if (!test_oracles::is_connected(base)) continue;
        Graph g = test_oracles::with_random_weights(base, seed);
        ++made;
        for (auto [x, y] : g.edges()) {
            auto [lower, tag] = lower_bound_triangle(g, x, y);
            Rat kappa = edge_kappa(g, x, y);
            Rat upper = upper_bound_triangle(g, x, y);
            c.expect(lower_bound_linyau(g, x, y) <= lower && lower <= kappa && kappa <= upper &&
                         upper <= 1,
                     "weighted sandwich fails on " + std::string(spec));
        }
    }
    return c;
}

Criterion diameter_consistency(const std::vector<Graph>& corpus) {
    Criterion c;
    long positives = 0;
    std::vector<Graph> graphs;
    for (int n = 2; n <= 12; ++n)
        graphs.push_back(generate_family("complete:" + std::to_string(n)));
    for (const Graph& g : corpus) graphs.push_back(g);
    for (const Graph& g : graphs) {
        if (!test_oracles::is_connected(g)) continue;
        std::optional<Rat> min_kappa;
        for (auto [x, y] : g.edges()) {
            Rat k = edge_kappa(g, x, y);
            if (!min_kappa || k < *min_kappa) min_kappa = k;
        }
        if (!min_kappa || *min_kappa <= 0) continue;
        ++positives;
        int diameter = 0;
        for (int v = 0; v < g.vertex_count(); ++v)
            for (int u = v + 1; u < g.vertex_count(); ++u)
                diameter = std::max(diameter, *hop_distance(g, v, u));
        c.expect(Rat(diameter) <= 2 / *min_kappa, "diameter exceeds 2/k");
    }
    c.expect(positives > 0, "no positively curved graph exercised");
    return c;
}

struct Outcome {
    int id;
    std::string name;
    Criterion result;
    double seconds;
    double budget;  // 0 = none
};

}  // namespace

int main() {
    std::vector<Outcome> outcomes;
    auto timed = [&](int id, const std::string& name, double budget, auto&& fn) {
        auto start = std::chrono::steady_clock::now();
        Criterion c = fn();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        outcomes.push_back({id, name, std::move(c), secs, budget});
    };

    const std::vector<Graph> er = erdos_renyi_corpus();

    timed(1, "complete graphs exact", 5.0, complete_graphs);
    timed(2, "random trees exact", 30.0, random_trees);
    timed(3, "bound sandwich on Erdos-Renyi corpus", 120.0, [&] { return bound_sandwich(er); });
    timed(5, "oracle equivalence", 0.0, oracle_equivalence);
    timed(6, "gamma2 identity", 0.0, gamma2_identity);
    timed(7, "closed-form CD bounds verify", 0.0, cd_closed_form_bounds);
    timed(8, "CD optimality", 60.0, cd_optimality);
    timed(9, "scalar sandwich", 0.0, [&] { return scalar_sandwich(er); });
    timed(10, "weighted graphs", 0.0, weighted_graphs);
    timed(11, "diameter consistency", 0.0, [&] { return diameter_consistency(er); });
    // Evaluated last so the ledger covers every certified transport call above.
    timed(4, "duality certificates", 0.0, duality_certificates);
    std::sort(outcomes.begin(), outcomes.end(),
              [](const Outcome& a, const Outcome& b) { return a.id < b.id; });

    bool all_ok = true;
    for (const auto& o : outcomes) {
        bool ok = o.result.ok && (o.budget == 0.0 || o.seconds <= o.budget);
        all_ok = all_ok && ok;
        std::printf("%s criterion %2d: %s (%ld checks, %.2fs%s)", ok ? "PASS" : "FAIL", o.id,
                    o.name.c_str(), o.result.checks, o.seconds,
                    o.budget > 0 ? (" / budget " + std::to_string((int)o.budget) + "s").c_str()
                                 : "");
        if (!o.result.ok) std::printf(" -- %s", o.result.detail.c_str());
        if (o.result.ok && o.budget > 0 && o.seconds > o.budget) std::printf(" -- over budget");
        std::printf("\n");
    }
    return all_ok ? 0 : 1;
}
