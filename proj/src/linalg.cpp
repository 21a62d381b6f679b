#include "riccigraph/linalg.hpp"

#include <algorithm>

#include "riccigraph/errors.hpp"

namespace ricci {

RatMat zero_matrix(std::size_t n) { return RatMat(n, RatVec(n, Rat(0))); }

Rat evaluate_quadratic(const RatMat& M, const RatVec& f) {
    if (f.size() != M.size()) throw InvalidArgumentError("quadratic form size mismatch");
    Rat total(0);
    for (std::size_t i = 0; i < M.size(); ++i) {
        if (f[i] == 0) continue;
        Rat row(0);
        for (std::size_t j = 0; j < M.size(); ++j)
            if (f[j] != 0) row += M[i][j] * f[j];
        total += f[i] * row;
    }
    return total;
}

namespace {

struct Elimination {
    std::size_t pivot;
    std::vector<std::pair<std::size_t, Rat>> multipliers;  // over then-active indices
};

// Shared LDL^T elimination. Returns pivots performed; fills `witness` (in
// original coordinates) when the matrix is not PSD and `witness` is non-null.
std::size_t eliminate(RatMat M, RatVec* witness, bool* is_psd) {
    const std::size_t n = M.size();
    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    std::vector<Elimination> steps;

    auto lift_witness = [&](RatVec base) {
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            Rat value(0);
            for (const auto& [idx, coef] : it->multipliers) value += coef * base[idx];
            base[it->pivot] = -value;
        }
        return base;
    };

    std::size_t pivots = 0;
    while (!active.empty()) {
        // Any negative diagonal refutes PSD outright.
        std::size_t best = active[0];
        for (std::size_t i : active) {
            if (M[i][i] < 0) {
                if (witness) {
                    RatVec v(n, Rat(0));
                    v[i] = 1;
                    *witness = lift_witness(std::move(v));
                }
                *is_psd = false;
                return pivots;
            }
            if (M[i][i] > M[best][best]) best = i;
        }
        if (M[best][best] == 0) {
            // All remaining diagonals vanish: PSD iff the remaining block is 0.
            for (std::size_t i : active)
                for (std::size_t j : active)
                    if (M[i][j] != 0) {
                        if (witness) {
                            RatVec v(n, Rat(0));
                            v[i] = 1;
                            v[j] = M[i][j] > 0 ? Rat(-1) : Rat(1);
                            *witness = lift_witness(std::move(v));
                        }
                        *is_psd = false;
                        return pivots;
                    }
            *is_psd = true;
            return pivots;
        }

        const std::size_t p = best;
        const Rat d = M[p][p];
        active.erase(std::find(active.begin(), active.end(), p));
        Elimination step{p, {}};
        for (std::size_t r : active)
            if (M[p][r] != 0) step.multipliers.emplace_back(r, Rat(M[p][r] / d));
        for (const auto& [r, mr] : step.multipliers)
            for (const auto& [c, mc] : step.multipliers) M[r][c] -= mr * mc * d;
        steps.push_back(std::move(step));
        ++pivots;
    }
    *is_psd = true;
    return pivots;
}

}  // namespace

PsdCheck check_positive_semidefinite(const RatMat& M) {
    PsdCheck result;
    eliminate(M, &result.witness, &result.psd);
    return result;
}

std::size_t psd_rank(const RatMat& M) {
    bool psd = false;
    return eliminate(M, nullptr, &psd);
}

SchurReduction schur_eliminate_diagonal(const RatMat& M, const std::vector<std::size_t>& keep,
                                        const std::vector<std::size_t>& eliminate) {
    SchurReduction out;
    out.reduced = zero_matrix(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a)
        for (std::size_t b = 0; b < keep.size(); ++b) out.reduced[a][b] = M[keep[a]][keep[b]];

    out.lift.assign(eliminate.size(), RatVec(keep.size(), Rat(0)));
    for (std::size_t k = 0; k < eliminate.size(); ++k) {
        const std::size_t z = eliminate[k];
        const Rat& d = M[z][z];
        if (d <= 0) throw Error("eliminated block is not positive diagonal");
        for (std::size_t other : eliminate)
            if (other != z && M[z][other] != 0)
                throw Error("eliminated block is not diagonal");
        for (std::size_t a = 0; a < keep.size(); ++a) {
            out.lift[k][a] = -M[z][keep[a]] / d;
            for (std::size_t b = 0; b < keep.size(); ++b)
                out.reduced[a][b] -= M[z][keep[a]] * M[z][keep[b]] / d;
        }
    }
    return out;
}

}  // namespace ricci
