#include "riccigraph/measure.hpp"

#include <algorithm>

#include "riccigraph/errors.hpp"

namespace ricci {

Rat VertexMeasure::mass_at(int vertex) const {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), vertex,
                               [](const Atom& a, int key) { return a.vertex < key; });
    if (it == atoms.end() || it->vertex != vertex) return Rat(0);
    return it->mass;
}

Rat VertexMeasure::total_mass() const {
    Rat sum(0);
    for (const Atom& a : atoms) sum += a.mass;
    return sum;
}

std::vector<int> VertexMeasure::support() const {
    std::vector<int> s;
    s.reserve(atoms.size());
    for (const Atom& a : atoms) s.push_back(a.vertex);
    return s;
}

VertexMeasure random_walk_measure(const Graph& g, int x) {
    if (g.neighbor_count(x) == 0)
        throw IsolatedVertexError("vertex '" + g.label(x) +
                                  "' is isolated; its random-walk measure is undefined");
    VertexMeasure m;
    m.base = x;
    const Rat& d = g.weighted_degree(x);
    m.atoms.reserve(g.neighbor_count(x));
    for (const Neighbor& n : g.neighbors(x)) m.atoms.push_back({n.to, Rat(n.weight / d)});
    return m;
}

VertexMeasure make_vertex_measure(const Graph& g, int base,
                                  const std::vector<Atom>& atoms) {
    g.check_vertex(base);
    VertexMeasure m;
    m.base = base;
    m.atoms = atoms;
    std::sort(m.atoms.begin(), m.atoms.end(),
              [](const Atom& a, const Atom& b) { return a.vertex < b.vertex; });
    for (std::size_t i = 0; i < m.atoms.size(); ++i) {
        g.check_vertex(m.atoms[i].vertex);
        if (m.atoms[i].mass <= 0)
            throw InvalidArgumentError("measure atoms need positive mass");
        if (i > 0 && m.atoms[i].vertex == m.atoms[i - 1].vertex)
            throw InvalidArgumentError("duplicate atom at vertex " +
                                       std::to_string(m.atoms[i].vertex));
    }
    return m;
}

Rat intersection_mass(const Graph& g, int x, int y) {
    if (!g.adjacent(x, y))
        throw NotAdjacentError("vertices '" + g.label(x) + "' and '" + g.label(y) +
                               "' are not adjacent");
    const Rat& dx = g.weighted_degree(x);
    const Rat& dy = g.weighted_degree(y);
    auto a = g.neighbors(x);
    auto b = g.neighbors(y);
    Rat sum(0);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to)
            ++i;
        else if (a[i].to > b[j].to)
            ++j;
        else {
            sum += rat_min(Rat(a[i].weight / dx), Rat(b[j].weight / dy));
            ++i;
            ++j;
        }
    }
    return sum;
}

Rat total_variation_overlap_check(const VertexMeasure& mu, const VertexMeasure& nu) {
    Rat sum(0);
    std::size_t i = 0, j = 0;
    while (i < mu.atoms.size() && j < nu.atoms.size()) {
        if (mu.atoms[i].vertex < nu.atoms[j].vertex)
            ++i;
        else if (mu.atoms[i].vertex > nu.atoms[j].vertex)
            ++j;
        else {
            sum += rat_min(mu.atoms[i].mass, nu.atoms[j].mass);
            ++i;
            ++j;
        }
    }
    return sum;
}

}  // namespace ricci
