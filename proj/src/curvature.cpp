#include "riccigraph/curvature.hpp"

#include "riccigraph/errors.hpp"
#include "riccigraph/measure.hpp"
#include "riccigraph/parallel.hpp"

namespace ricci {

namespace {

void require_adjacent(const Graph& g, int x, int y) {
    if (!g.adjacent(x, y))
        throw NotAdjacentError("vertices '" + g.label(x) + "' and '" + g.label(y) +
                               "' are not adjacent");
}

}  // namespace

std::string case_tag_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::ANonneg: return "A_NONNEG";
        case CaseTag::ANegBNonneg: return "A_NEG_B_NONNEG";
        case CaseTag::BNeg: return "B_NEG";
    }
    return "?";
}

Rat ricci_curvature(const Graph& g, int x, int y) {
    if (x == y)
        throw SameVertexError("curvature is defined along pairs of distinct vertices");
    auto d = hop_distance(g, x, y);
    if (!d)
        throw CrossComponentError("vertices '" + g.label(x) + "' and '" + g.label(y) +
                                  "' are in different components");
    auto result = wasserstein1(g, random_walk_measure(g, x), random_walk_measure(g, y));
    return 1 - result.value / Rat(*d);
}

Rat lower_bound_linyau(const Graph& g, int x, int y) {
    require_adjacent(g, x, y);
    const Rat w = *g.edge_weight(x, y);
    const Rat slack = 1 - w / g.weighted_degree(x) - w / g.weighted_degree(y);
    return -2 * positive_part(slack);
}

std::pair<Rat, CaseTag> lower_bound_triangle(const Graph& g, int x, int y) {
    require_adjacent(g, x, y);
    const Rat& dx = g.weighted_degree(x);
    const Rat& dy = g.weighted_degree(y);
    const Rat w = *g.edge_weight(x, y);

    Rat overlap_min(0), overlap_max(0);
    auto a = g.neighbors(x);
    auto b = g.neighbors(y);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to)
            ++i;
        else if (a[i].to > b[j].to)
            ++j;
        else {
            Rat from_x = a[i].weight / dx;
            Rat from_y = b[j].weight / dy;
            overlap_min += rat_min(from_x, from_y);
            overlap_max += rat_max(from_x, from_y);
            ++i;
            ++j;
        }
    }

    const Rat base = 1 - w / dx - w / dy;
    const Rat A = base - overlap_max;
    const Rat B = base - overlap_min;
    CaseTag tag = A >= 0 ? CaseTag::ANonneg : (B >= 0 ? CaseTag::ANegBNonneg : CaseTag::BNeg);
    Rat bound = -positive_part(A) - positive_part(B) + overlap_min;
    return {bound, tag};
}

Rat upper_bound_triangle(const Graph& g, int x, int y) { return intersection_mass(g, x, y); }

long min_triangles_for_positive(const Graph& g, int x, int y, const Rat& k) {
    require_adjacent(g, x, y);
    if (k <= 0) throw InvalidArgumentError("min_triangles_for_positive requires k > 0");
    return rat_ceil_long(Rat(k * rat_max(g.weighted_degree(x), g.weighted_degree(y))));
}

EdgeCurvatureReport edge_report(const Graph& g, int x, int y) {
    if (x == y)
        throw SameVertexError("curvature is defined along pairs of distinct vertices");
    auto d = hop_distance(g, x, y);
    if (!d)
        throw CrossComponentError("vertices '" + g.label(x) + "' and '" + g.label(y) +
                                  "' are in different components");
    EdgeCurvatureReport report;
    report.x = x;
    report.y = y;
    report.distance = *d;
    auto transport = wasserstein1(g, random_walk_measure(g, x), random_walk_measure(g, y));
    report.w1 = transport.value;
    report.kappa = 1 - report.w1 / Rat(*d);
    if (*d == 1) {
        report.sharp = triangle_count(g, x, y);
        auto [lower, tag] = lower_bound_triangle(g, x, y);
        report.case_tag = tag;
        report.lower_linyau = lower_bound_linyau(g, x, y);
        report.lower_triangle = lower;
        report.upper_triangle = upper_bound_triangle(g, x, y);
        report.lower_tight = report.kappa == lower;
        report.upper_tight = report.kappa == *report.upper_triangle;
    }
    return report;
}

ScalarCurvatureReport scalar_report(const Graph& g, int x) {
    if (g.is_weighted())
        throw WeightedGraphError(
            "scalar curvature bounds are stated for unweighted graphs only");
    const long d = g.neighbor_count(x);
    if (d < 2) throw DegreeError("scalar report needs at least 2 neighbors at '" + g.label(x) + "'");

    ScalarCurvatureReport report;
    report.x = x;
    report.clustering = clustering_coefficient(g, x);

    Rat sum(0);
    std::optional<CaseTag> shared_tag;
    bool uniform = true;
    Rat max_neighbor_degree(0);
    for (const Neighbor& n : g.neighbors(x)) {
        sum += ricci_curvature(g, x, n.to);
        max_neighbor_degree = rat_max(max_neighbor_degree, g.weighted_degree(n.to));
        auto [_, tag] = lower_bound_triangle(g, x, n.to);
        if (!shared_tag)
            shared_tag = tag;
        else if (*shared_tag != tag)
            uniform = false;
    }
    report.mean_kappa = sum / Rat(d);

    const Rat dx(d);
    const Rat D = max_neighbor_degree;
    const Rat dmax = rat_max(dx, D);
    const Rat& c = report.clustering;
    report.upper = (dx - 1) / dx * c;
    report.lower = -2 + (dx - 1) / dmax * c;
    if (uniform && shared_tag) {
        switch (*shared_tag) {
            case CaseTag::ANonneg:
                report.refined_lower =
                    -2 + 2 / dx + 2 / D + ((dx - 1) / dx + 2 * (dx - 1) / dmax) * c;
                break;
            case CaseTag::ANegBNonneg:
                report.refined_lower = -1 + 1 / dx + 1 / D + 2 * (dx - 1) / dmax * c;
                break;
            case CaseTag::BNeg:
                report.refined_lower = (dx - 1) / dmax * c;
                break;
        }
    }
    return report;
}

std::vector<EdgeReportRow> graph_report(const Graph& g,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        int workers) {
    std::vector<EdgeReportRow> rows(pairs.size());
    parallel_for(pairs.size(), workers, [&](std::size_t i) {
        auto [x, y] = pairs[i];
        rows[i].x = x;
        rows[i].y = y;
        try {
            rows[i].report = edge_report(g, x, y);
        } catch (const Error& e) {
            rows[i].error = e.what();
        }
    });
    return rows;
}

}  // namespace ricci
