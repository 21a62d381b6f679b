#include "riccigraph/transport.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>

#include "riccigraph/errors.hpp"

namespace ricci {

namespace {

constexpr long kInf = std::numeric_limits<long>::max() / 4;

// Distances from src to every target, early-exiting once all are settled.
// Unresolved targets are reported as -1.
std::vector<int> distances_to_targets(const Graph& g, int src, const std::vector<int>& targets) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::vector<int> out(targets.size(), -1);
    std::size_t remaining = 0;
    for (std::size_t j = 0; j < targets.size(); ++j)
        if (targets[j] != src) ++remaining;
    dist[src] = 0;
    std::deque<int> queue{src};
    while (!queue.empty() && remaining > 0) {
        int u = queue.front();
        queue.pop_front();
        for (const Neighbor& n : g.neighbors(u)) {
            if (dist[n.to] >= 0) continue;
            dist[n.to] = dist[u] + 1;
            for (std::size_t j = 0; j < targets.size(); ++j)
                if (targets[j] == n.to) --remaining;
            queue.push_back(n.to);
        }
    }
    for (std::size_t j = 0; j < targets.size(); ++j) out[j] = dist[targets[j]];
    return out;
}

// Min-cost flow with successive shortest augmenting paths and node potentials.
// Costs are small nonnegative integers; capacities and flows are exact.
class MinCostFlow {
public:
    explicit MinCostFlow(int nodes) : adj_(nodes), potential_(nodes, 0) {}

    void add_arc(int from, int to, long cost, const mpz_class& cap) {
        adj_[from].push_back({to, cost, cap, adj_[to].size()});
        adj_[to].push_back({from, -cost, mpz_class(0), adj_[from].size() - 1});
    }

    // Pushes flow from source to sink until demand is met; returns total cost.
    // The required amount is known feasible by construction, so an unreachable
    // sink mid-run indicates a broken instance.
    mpz_class run(int source, int sink, const mpz_class& required) {
        mpz_class sent = 0;
        mpz_class cost = 0;
        while (sent < required) {
            if (!dijkstra(source, sink)) throw Error("transport instance is infeasible");
            mpz_class push = required - sent;
            for (int v = sink; v != source;) {
                const auto [u, idx] = parent_[v];
                const Arc& arc = adj_[u][idx];
                if (arc.cap - arc.flow < push) push = arc.cap - arc.flow;
                v = u;
            }
            for (int v = sink; v != source;) {
                const auto [u, idx] = parent_[v];
                Arc& arc = adj_[u][idx];
                arc.flow += push;
                adj_[v][arc.rev].flow -= push;
                cost += push * arc.cost;
                v = u;
            }
            sent += push;
        }
        return cost;
    }

    long potential(int node) const { return potential_[node]; }

    mpz_class flow_on(int from, std::size_t arc_index) const { return adj_[from][arc_index].flow; }

private:
    struct Arc {
        int to;
        long cost;
        mpz_class cap;
        std::size_t rev;
        mpz_class flow = 0;
    };

    bool dijkstra(int source, int sink) {
        const int n = static_cast<int>(adj_.size());
        std::vector<long> dist(n, kInf);
        parent_.assign(n, {-1, 0});
        // Ties resolved toward the lower node index for reproducible plans.
        std::priority_queue<std::pair<long, int>, std::vector<std::pair<long, int>>,
                            std::greater<>>
            heap;
        dist[source] = 0;
        heap.emplace(0, source);
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d > dist[u]) continue;
            for (std::size_t i = 0; i < adj_[u].size(); ++i) {
                const Arc& arc = adj_[u][i];
                if (arc.cap - arc.flow <= 0) continue;
                long nd = d + arc.cost + potential_[u] - potential_[arc.to];
                if (nd < dist[arc.to]) {
                    dist[arc.to] = nd;
                    parent_[arc.to] = {u, i};
                    heap.emplace(nd, arc.to);
                }
            }
        }
        if (dist[sink] >= kInf) return false;
        for (int v = 0; v < n; ++v)
            potential_[v] += std::min(dist[v], dist[sink]);
        return true;
    }

    std::vector<std::vector<Arc>> adj_;
    std::vector<long> potential_;
    std::vector<std::pair<int, std::size_t>> parent_;
};

mpz_class lcm_of_denominators(const VertexMeasure& mu, const VertexMeasure& nu) {
    mpz_class l = 1;
    for (const Atom& a : mu.atoms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.mass.get_den().get_mpz_t());
    for (const Atom& a : nu.atoms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.mass.get_den().get_mpz_t());
    return l;
}

mpz_class scaled_mass(const Atom& a, const mpz_class& lcm) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), lcm.get_mpz_t(), a.mass.get_den().get_mpz_t());
    return q * a.mass.get_num();
}

std::vector<int> joint_support(const VertexMeasure& mu, const VertexMeasure& nu) {
    std::vector<int> support = mu.support();
    for (const Atom& a : nu.atoms) support.push_back(a.vertex);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return support;
}

void check_measures(const VertexMeasure& mu, const VertexMeasure& nu) {
    if (mu.atoms.empty() || nu.atoms.empty())
        throw EmptyMeasureError("transport requires nonempty measures");
    if (mu.total_mass() != 1 || nu.total_mass() != 1)
        throw InvalidArgumentError("transport requires probability measures (mass 1)");
}

}  // namespace

long TransportResult::dual_at(int vertex) const {
    auto it = std::lower_bound(dual.begin(), dual.end(), vertex,
                               [](const auto& p, int key) { return p.first < key; });
    if (it == dual.end() || it->first != vertex)
        throw InvalidArgumentError("dual potential missing at vertex " + std::to_string(vertex));
    return it->second;
}

std::vector<std::vector<int>> pairwise_distance_matrix(const Graph& g,
                                                       const std::vector<int>& sources,
                                                       const std::vector<int>& targets) {
    std::vector<std::vector<int>> matrix;
    matrix.reserve(sources.size());
    for (int s : sources) {
        g.check_vertex(s);
        auto row = distances_to_targets(g, s, targets);
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] < 0)
                throw CrossComponentError("vertices '" + g.label(s) + "' and '" +
                                          g.label(targets[j]) + "' are in different components");
        matrix.push_back(std::move(row));
    }
    return matrix;
}

TransportResult wasserstein1(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu) {
    check_measures(mu, nu);

    const auto src_vertices = mu.support();
    const auto dst_vertices = nu.support();
    const auto cost = pairwise_distance_matrix(g, src_vertices, dst_vertices);

    const int ns = static_cast<int>(mu.atoms.size());
    const int nt = static_cast<int>(nu.atoms.size());
    const int source = ns + nt;
    const int sink = ns + nt + 1;

    const mpz_class lcm = lcm_of_denominators(mu, nu);
    // Bipartite capacities are slack (never binding), so optimal flow arcs keep
    // residual capacity and the final potentials are dual-feasible everywhere.
    const mpz_class slack_cap = lcm + 1;

    MinCostFlow flow(ns + nt + 2);
    std::vector<std::vector<std::size_t>> arc_index(ns, std::vector<std::size_t>(nt));
    for (int i = 0; i < ns; ++i) flow.add_arc(source, i, 0, scaled_mass(mu.atoms[i], lcm));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) {
            // adj_[i] holds the reverse of its supply arc at slot 0, then one
            // forward arc per target in j order.
            arc_index[i][j] = static_cast<std::size_t>(j) + 1;
            flow.add_arc(i, ns + j, cost[i][j], slack_cap);
        }
    for (int j = 0; j < nt; ++j) flow.add_arc(ns + j, sink, 0, scaled_mass(nu.atoms[j], lcm));

    const mpz_class total_cost = flow.run(source, sink, lcm);

    TransportResult result;
    result.value = Rat(total_cost, lcm);
    result.value.canonicalize();

    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) {
            mpz_class f = flow.flow_on(i, arc_index[i][j]);
            if (f > 0) {
                Rat mass(f, lcm);
                mass.canonicalize();
                result.plan.push_back({mu.atoms[i].vertex, nu.atoms[j].vertex, mass});
            }
        }

    // Dual certificate: extend the target-side potentials to a single integer
    // 1-Lipschitz function f(z) = min_j (v_j + d(z, t_j)) on the joint support.
    const auto support = joint_support(mu, nu);
    std::vector<long> dual_value(support.size(), kInf);
    for (int j = 0; j < nt; ++j) {
        const long vj = -flow.potential(ns + j);
        auto d = distances_to_targets(g, nu.atoms[j].vertex, support);
        for (std::size_t k = 0; k < support.size(); ++k) {
            if (d[k] < 0)
                throw CrossComponentError("transport supports span multiple components");
            dual_value[k] = std::min(dual_value[k], vj + d[k]);
        }
    }
    const long shift = *std::min_element(dual_value.begin(), dual_value.end());
    result.dual.reserve(support.size());
    for (std::size_t k = 0; k < support.size(); ++k)
        result.dual.emplace_back(support[k], dual_value[k] - shift);
    return result;
}

PlanCheck verify_plan(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu,
                      const TransportResult& result) {
    PlanCheck check;
    auto fail = [&](const std::string& reason) {
        check.ok = false;
        check.failures.push_back(reason);
    };

    std::vector<std::pair<int, Rat>> by_src, by_dst;
    Rat plan_cost(0);
    bool cost_defined = true;
    for (const PlanEntry& e : result.plan) {
        if (e.mass <= 0) fail("plan entry with nonpositive mass");
        bool found = false;
        for (auto& [v, m] : by_src)
            if (v == e.src) {
                m += e.mass;
                found = true;
            }
        if (!found) by_src.emplace_back(e.src, e.mass);
        found = false;
        for (auto& [v, m] : by_dst)
            if (v == e.dst) {
                m += e.mass;
                found = true;
            }
        if (!found) by_dst.emplace_back(e.dst, e.mass);
        auto d = hop_distance(g, e.src, e.dst);
        if (!d) {
            fail("plan moves mass across components");
            cost_defined = false;
        } else {
            plan_cost += e.mass * Rat(*d);
        }
    }

    auto marginals_match = [](const std::vector<std::pair<int, Rat>>& sums,
                              const VertexMeasure& m) {
        if (sums.size() != m.atoms.size()) return false;
        for (const auto& [v, total] : sums)
            if (m.mass_at(v) != total) return false;
        return true;
    };
    if (!marginals_match(by_src, mu)) fail("source marginal mismatch");
    if (!marginals_match(by_dst, nu)) fail("target marginal mismatch");
    if (cost_defined && plan_cost != result.value) fail("plan cost differs from reported value");

    const auto support = joint_support(mu, nu);
    for (int v : support) {
        bool present = false;
        for (const auto& [u, _] : result.dual)
            if (u == v) present = true;
        if (!present) {
            fail("dual potential missing on joint support");
            return check;
        }
    }
    const auto dist = pairwise_distance_matrix(g, support, support);
    for (std::size_t a = 0; a < support.size(); ++a)
        for (std::size_t b = a + 1; b < support.size(); ++b) {
            long fa = result.dual_at(support[a]);
            long fb = result.dual_at(support[b]);
            long gap = fa > fb ? fa - fb : fb - fa;
            if (gap > dist[a][b]) {
                fail("dual potential is not 1-Lipschitz");
                a = support.size();
                break;
            }
        }

    Rat dual_objective(0);
    for (const Atom& a : mu.atoms) dual_objective += a.mass * Rat(result.dual_at(a.vertex));
    for (const Atom& a : nu.atoms) dual_objective -= a.mass * Rat(result.dual_at(a.vertex));
    if (dual_objective != result.value) fail("duality gap is nonzero");

    return check;
}

Rat dual_enumeration_oracle(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu,
                            int radius) {
    check_measures(mu, nu);
    if (radius < 0) throw InvalidArgumentError("oracle radius must be >= 0");
    const auto support = joint_support(mu, nu);
    if (support.size() > 12)
        throw SupportTooLargeError("joint support has " + std::to_string(support.size()) +
                                   " vertices; oracle guard is 12");
    const auto dist = pairwise_distance_matrix(g, support, support);

    std::vector<Rat> net(support.size(), Rat(0));
    for (std::size_t k = 0; k < support.size(); ++k)
        net[k] = mu.mass_at(support[k]) - nu.mass_at(support[k]);

    std::vector<int> values(support.size(), 0);
    Rat best(0);  // the zero function is always feasible
    bool have_best = false;

    auto recurse = [&](auto&& self, std::size_t k, const Rat& partial) -> void {
        if (k == support.size()) {
            if (!have_best || partial > best) {
                best = partial;
                have_best = true;
            }
            return;
        }
        int lo = 0, hi = radius;
        for (std::size_t i = 0; i < k; ++i) {
            lo = std::max(lo, values[i] - dist[i][k]);
            hi = std::min(hi, values[i] + dist[i][k]);
        }
        for (int v = lo; v <= hi; ++v) {
            values[k] = v;
            self(self, k + 1, Rat(partial + Rat(v) * net[k]));
        }
    };
    recurse(recurse, 0, Rat(0));
    if (!have_best) throw Error("oracle enumeration found no feasible function");
    return best;
}

Rat dual_enumeration_oracle(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu) {
    const auto support = joint_support(mu, nu);
    if (support.size() > 12)
        throw SupportTooLargeError("joint support has " + std::to_string(support.size()) +
                                   " vertices; oracle guard is 12");
    int diameter = 0;
    const auto dist = pairwise_distance_matrix(g, support, support);
    for (const auto& row : dist)
        for (int d : row) diameter = std::max(diameter, d);
    return dual_enumeration_oracle(g, mu, nu, diameter);
}

}  // namespace ricci
