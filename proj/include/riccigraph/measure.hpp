#pragma once

#include <vector>

#include "riccigraph/graph.hpp"
#include "riccigraph/rational.hpp"

namespace ricci {

struct Atom {
    int vertex;
    Rat mass;
};

// Sparse exact probability measure on vertices; atoms sorted by vertex,
// masses positive and summing to 1.
struct VertexMeasure {
    int base = -1;
    std::vector<Atom> atoms;

    Rat mass_at(int vertex) const;
    Rat total_mass() const;
    std::vector<int> support() const;
};

// One random-walk step from x: mass w_xy / d_x on each neighbor y.
VertexMeasure random_walk_measure(const Graph& g, int x);

// Measure with explicit atoms; masses must be positive and vertices distinct.
VertexMeasure make_vertex_measure(const Graph& g, int base,
                                  const std::vector<Atom>& atoms);

// Overlap of the walk measures of adjacent x, y:
// sum over common neighbors z of min(w_zx / d_x, w_zy / d_y).
// Unweighted this is #(x,y) / max(d_x, d_y).
Rat intersection_mass(const Graph& g, int x, int y);

// sum_z min(mu(z), nu(z)); cross-check for intersection_mass.
Rat total_variation_overlap_check(const VertexMeasure& mu, const VertexMeasure& nu);

}  // namespace ricci
