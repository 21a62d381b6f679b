#pragma once

#include <vector>

#include "riccigraph/rational.hpp"

namespace ricci {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<std::vector<Rat>>;

RatMat zero_matrix(std::size_t n);

// f^T M f
Rat evaluate_quadratic(const RatMat& M, const RatVec& f);

struct PsdCheck {
    bool psd = false;
    RatVec witness;  // when !psd: v with v^T M v < 0
};

// Exact positive-semidefiniteness of a symmetric rational matrix via LDL^T
// elimination with symmetric (largest-diagonal) pivoting.
PsdCheck check_positive_semidefinite(const RatMat& M);

// Pivot count of the same elimination; equals the rank for PSD input.
std::size_t psd_rank(const RatMat& M);

struct SchurReduction {
    RatMat reduced;             // form restricted to `keep` after minimizing out `eliminate`
    std::vector<RatVec> lift;   // minimizer: f_elim[k] = sum_j lift[k][j] * f_keep[j]
};

// Minimizes the quadratic form over the `eliminate` coordinates for fixed
// `keep` coordinates. Requires the eliminated block to be diagonal with
// strictly positive entries (true for the curvature-dimension forms, where
// only individual squared second differences reach the outer ring).
SchurReduction schur_eliminate_diagonal(const RatMat& M, const std::vector<std::size_t>& keep,
                                        const std::vector<std::size_t>& eliminate);

}  // namespace ricci
