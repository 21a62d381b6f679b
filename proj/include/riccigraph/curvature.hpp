#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riccigraph/graph.hpp"
#include "riccigraph/rational.hpp"
#include "riccigraph/transport.hpp"

namespace ricci {

// Feasibility classification of the two mass-moving steps in the triangle
// transfer plan; the sign pattern picks the curvature formula case.
enum class CaseTag { ANonneg, ANegBNonneg, BNeg };

std::string case_tag_name(CaseTag tag);

// kappa(x,y) = 1 - W1(m_x, m_y) / d(x,y) for distinct x, y in one component.
Rat ricci_curvature(const Graph& g, int x, int y);

// Degree-only lower bound for adjacent x, y: -2(1 - w_xy/d_x - w_xy/d_y)_+.
Rat lower_bound_linyau(const Graph& g, int x, int y);

// Triangle-aware lower bound -(A)_+ - (B)_+ + overlap for adjacent x, y, where
// A and B subtract the max- and min-overlap sums from 1 - w/d_x - w/d_y.
// On unweighted graphs: A = 1 - 1/d_x - 1/d_y - #/(d_x^d_y), B likewise with
// d_x v d_y, overlap = #/(d_x v d_y).
std::pair<Rat, CaseTag> lower_bound_triangle(const Graph& g, int x, int y);

// kappa(x,y) <= intersection_mass(x,y); unweighted #/(d_x v d_y).
Rat upper_bound_triangle(const Graph& g, int x, int y);

// Least triangle count through the edge compatible with kappa >= k > 0:
// ceil(k * (d_x v d_y)).
long min_triangles_for_positive(const Graph& g, int x, int y, const Rat& k);

struct EdgeCurvatureReport {
    int x = -1;
    int y = -1;
    int distance = 0;
    Rat w1;
    Rat kappa;
    // Bound fields are populated for adjacent pairs only; the bounds are
    // edge-local.
    std::optional<long> sharp;
    std::optional<CaseTag> case_tag;
    std::optional<Rat> lower_linyau;
    std::optional<Rat> lower_triangle;
    std::optional<Rat> upper_triangle;
    bool lower_tight = false;
    bool upper_tight = false;
};

EdgeCurvatureReport edge_report(const Graph& g, int x, int y);

struct ScalarCurvatureReport {
    int x = -1;
    Rat mean_kappa;
    Rat clustering;
    Rat upper;  // (d_x - 1)/d_x * c(x)
    Rat lower;  // -2 + (d_x - 1)/(d_x v D(x)) * c(x)
    std::optional<Rat> refined_lower;  // only when all incident edges share a case
};

// Degree-averaged curvature at x with the clustering-coefficient sandwich.
// Unweighted graphs only; needs at least two neighbors.
ScalarCurvatureReport scalar_report(const Graph& g, int x);

struct EdgeReportRow {
    int x = -1;
    int y = -1;
    std::optional<EdgeCurvatureReport> report;
    std::string error;  // nonempty when the pair failed
};

// Batch evaluation over explicit pairs; failures are recorded per row.
// Rows come back in input order; callers pick the order (the CLI sorts by
// label). Pure per-pair work fanned out over `workers` threads.
std::vector<EdgeReportRow> graph_report(const Graph& g,
                                        const std::vector<std::pair<int, int>>& pairs,
                                        int workers = 1);

}  // namespace ricci
