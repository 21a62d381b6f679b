#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riccigraph/graph.hpp"
#include "riccigraph/measure.hpp"
#include "riccigraph/rational.hpp"

namespace ricci {

struct PlanEntry {
    int src;
    int dst;
    Rat mass;
};

// Exact optimal transport between two vertex measures under the hop metric.
// `plan` is an optimal coupling; `dual` an integer 1-Lipschitz potential on the
// joint support, normalized to minimum 0, whose objective equals `value`.
struct TransportResult {
    Rat value;
    std::vector<PlanEntry> plan;
    std::vector<std::pair<int, long>> dual;  // sorted by vertex

    long dual_at(int vertex) const;
};

// Exact W1 via integer min-cost flow on the bipartite supply/demand instance:
// masses are scaled to integers by the lcm of atom denominators, hop-distance
// costs come from truncated breadth-first searches, and the flow is solved by
// successive shortest augmenting paths with node potentials.
TransportResult wasserstein1(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu);

struct PlanCheck {
    bool ok = true;
    std::vector<std::string> failures;
};

// Exact recheck of a transport result: plan marginals, cost consistency,
// dual Lipschitz bound on every joint-support pair, and zero duality gap.
PlanCheck verify_plan(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu,
                      const TransportResult& result);

// Independent Kantorovich oracle: maximizes sum(f dmu) - sum(f dnu) over all
// integer-valued 1-Lipschitz functions on the joint support with values in
// {0..radius}. With radius at least the joint-support diameter this equals W1.
// Guarded to joint supports of at most 12 vertices.
Rat dual_enumeration_oracle(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu,
                            int radius);
// Convenience overload using the joint-support diameter as the radius.
Rat dual_enumeration_oracle(const Graph& g, const VertexMeasure& mu, const VertexMeasure& nu);

// Hop distances restricted to S x T, one truncated search per row.
// Throws CrossComponentError when any pair is unreachable.
std::vector<std::vector<int>> pairwise_distance_matrix(const Graph& g,
                                                       const std::vector<int>& sources,
                                                       const std::vector<int>& targets);

}  // namespace ricci
