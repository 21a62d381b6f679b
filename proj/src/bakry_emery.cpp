#include "riccigraph/bakry_emery.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "riccigraph/errors.hpp"
#include "riccigraph/measure.hpp"

namespace ricci {

namespace {

void require_center(const FunctionOnBall& f, int x) {
    if (f.center != x)
        throw DomainMismatchError("function is centered at vertex " + std::to_string(f.center) +
                                  ", expected " + std::to_string(x));
}

Rat max_neighbor_degree(const Graph& g, int x) {
    if (g.neighbor_count(x) == 0)
        throw IsolatedVertexError("vertex '" + g.label(x) + "' is isolated");
    Rat best(0);
    for (const Neighbor& n : g.neighbors(x)) best = rat_max(best, g.weighted_degree(n.to));
    return best;
}

void require_unweighted(const Graph& g, const std::string& what) {
    if (g.is_weighted())
        throw WeightedGraphError(what + " is stated for unweighted graphs; use the weighted "
                                        "triangle bound instead");
}

}  // namespace

const Rat& FunctionOnBall::at(int vertex) const {
    auto it = std::lower_bound(domain.begin(), domain.end(), vertex);
    if (it == domain.end() || *it != vertex)
        throw DomainMismatchError("vertex " + std::to_string(vertex) +
                                  " is outside the function domain");
    return values[static_cast<std::size_t>(it - domain.begin())];
}

bool FunctionOnBall::has(int vertex) const {
    return std::binary_search(domain.begin(), domain.end(), vertex);
}

FunctionOnBall make_function_on_ball(const Graph& g, int center,
                                     const std::function<Rat(int)>& f) {
    FunctionOnBall out;
    out.center = center;
    out.domain = ball(g, center, 2);
    out.values.reserve(out.domain.size());
    for (int v : out.domain) out.values.push_back(f(v));
    return out;
}

FunctionOnBall constant_function(const Graph& g, int center, const Rat& value) {
    return make_function_on_ball(g, center, [&](int) { return value; });
}

FunctionOnBall peak_test_function(const Graph& g, int center) {
    return make_function_on_ball(g, center, [&](int v) {
        if (v == center) return Rat(2);
        if (g.adjacent(center, v)) return Rat(1);
        return Rat(0);
    });
}

Rat laplacian(const Graph& g, const FunctionOnBall& f, int x) {
    require_center(f, x);
    if (g.neighbor_count(x) == 0)
        throw IsolatedVertexError("vertex '" + g.label(x) + "' is isolated");
    const Rat& d = g.weighted_degree(x);
    Rat sum(0);
    for (const Neighbor& n : g.neighbors(x)) sum += n.weight / d * f.at(n.to);
    return sum - f.at(x);
}

Rat gamma(const Graph& g, const FunctionOnBall& f, const FunctionOnBall& h, int x) {
    require_center(f, x);
    require_center(h, x);
    const Rat& d = g.weighted_degree(x);
    const Rat fx = f.at(x);
    const Rat hx = h.at(x);
    Rat sum(0);
    for (const Neighbor& n : g.neighbors(x))
        sum += n.weight / d * (f.at(n.to) - fx) * (h.at(n.to) - hx);
    return sum / 2;
}

Rat gamma(const Graph& g, const FunctionOnBall& f, int x) { return gamma(g, f, f, x); }

Rat h_form(const Graph& g, const FunctionOnBall& f, int x) {
    require_center(f, x);
    const Rat& dx = g.weighted_degree(x);
    const Rat fx = f.at(x);
    Rat sum(0);
    for (const Neighbor& ny : g.neighbors(x)) {
        const Rat my = ny.weight / dx;
        const Rat fy = f.at(ny.to);
        const Rat& dy = g.weighted_degree(ny.to);
        for (const Neighbor& nz : g.neighbors(ny.to)) {
            const Rat step = fx - 2 * fy + f.at(nz.to);
            sum += my * (nz.weight / dy) * step * step;
        }
    }
    return sum / 4;
}

Rat gamma2(const Graph& g, const FunctionOnBall& f, int x) {
    const Rat lap = laplacian(g, f, x);
    return h_form(g, f, x) - gamma(g, f, x) + lap * lap / 2;
}

Rat gamma2_iterated(const Graph& g, const FunctionOnBall& f, int x) {
    require_center(f, x);
    const Rat& dx = g.weighted_degree(x);

    // Gamma(f,f) and Delta f as functions on x and its neighbors; each needs
    // f on a 1-ball around the evaluation point, available inside the 2-ball.
    auto gamma_at = [&](int v) {
        const Rat& d = g.weighted_degree(v);
        const Rat fv = f.at(v);
        Rat sum(0);
        for (const Neighbor& n : g.neighbors(v)) {
            const Rat diff = f.at(n.to) - fv;
            sum += n.weight / d * diff * diff;
        }
        return Rat(sum / 2);
    };
    auto laplacian_at = [&](int v) {
        const Rat& d = g.weighted_degree(v);
        Rat sum(0);
        for (const Neighbor& n : g.neighbors(v)) sum += n.weight / d * f.at(n.to);
        return Rat(sum - f.at(v));
    };

    const Rat gamma_x = gamma_at(x);
    const Rat lap_x = laplacian_at(x);
    const Rat fx = f.at(x);
    Rat delta_gamma = -gamma_x;
    Rat gamma_f_lapf(0);
    for (const Neighbor& n : g.neighbors(x)) {
        const Rat m = n.weight / dx;
        delta_gamma += m * gamma_at(n.to);
        gamma_f_lapf += m * (f.at(n.to) - fx) * (laplacian_at(n.to) - lap_x);
    }
    gamma_f_lapf /= 2;
    return (delta_gamma - 2 * gamma_f_lapf) / 2;
}

DimensionParam DimensionParam::finite(const Rat& m) {
    if (m < 1) throw InvalidArgumentError("dimension parameter must be >= 1");
    return DimensionParam(false, m);
}

DimensionParam DimensionParam::infinite() { return DimensionParam(true, Rat(0)); }

DimensionParam DimensionParam::parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinite();
    return finite(rat_from_string(text));
}

const Rat& DimensionParam::value() const {
    if (infinite_) throw InvalidArgumentError("infinite dimension parameter has no value");
    return value_;
}

std::string DimensionParam::to_string() const {
    return infinite_ ? "inf" : rat_to_string(value_);
}

Rat CDQuadraticForms::evaluate_Q(const FunctionOnBall& f) const {
    if (f.center != center || f.domain != domain)
        throw DomainMismatchError("function domain does not match the form domain");
    return evaluate_quadratic(Q, f.values);
}

Rat CDQuadraticForms::evaluate_G(const FunctionOnBall& f) const {
    if (f.center != center || f.domain != domain)
        throw DomainMismatchError("function domain does not match the form domain");
    return evaluate_quadratic(G, f.values);
}

CDQuadraticForms cd_forms(const Graph& g, int x, const DimensionParam& m) {
    if (g.neighbor_count(x) == 0)
        throw IsolatedVertexError("vertex '" + g.label(x) + "' is isolated");

    CDQuadraticForms forms;
    forms.center = x;
    forms.domain = ball(g, x, 2);
    forms.m = m;
    const std::size_t n = forms.domain.size();
    auto pos = [&](int v) {
        auto it = std::lower_bound(forms.domain.begin(), forms.domain.end(), v);
        return static_cast<std::size_t>(it - forms.domain.begin());
    };

    const Rat& dx = g.weighted_degree(x);
    const std::size_t px = pos(x);

    // Linear functional of the Laplacian at x.
    RatVec lap(n, Rat(0));
    for (const Neighbor& ny : g.neighbors(x)) lap[pos(ny.to)] += ny.weight / dx;
    lap[px] -= 1;

    forms.G = zero_matrix(n);
    for (const Neighbor& ny : g.neighbors(x)) {
        const Rat c = ny.weight / dx / 2;
        const std::size_t py = pos(ny.to);
        forms.G[py][py] += c;
        forms.G[px][px] += c;
        forms.G[py][px] -= c;
        forms.G[px][py] -= c;
    }

    RatMat H = zero_matrix(n);
    for (const Neighbor& ny : g.neighbors(x)) {
        const std::size_t py = pos(ny.to);
        const Rat my = ny.weight / dx;
        const Rat& dy = g.weighted_degree(ny.to);
        for (const Neighbor& nz : g.neighbors(ny.to)) {
            const Rat c = my * (nz.weight / dy) / 4;
            const std::size_t pz = pos(nz.to);
            // Rank-one update with u = e_x - 2 e_y + e_z (z may equal x).
            std::vector<std::pair<std::size_t, Rat>> u{{px, Rat(1)}, {py, Rat(-2)}};
            bool merged = false;
            for (auto& [idx, coef] : u)
                if (idx == pz) {
                    coef += 1;
                    merged = true;
                }
            if (!merged) u.emplace_back(pz, Rat(1));
            for (const auto& [ia, ca] : u)
                for (const auto& [ib, cb] : u) H[ia][ib] += c * ca * cb;
        }
    }

    const Rat lap_coef = m.is_infinite() ? Rat(1, 2) : Rat(Rat(1, 2) - 1 / m.value());
    forms.Q = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            forms.Q[i][j] = H[i][j] - forms.G[i][j] + lap_coef * lap[i] * lap[j];
    return forms;
}

namespace {

struct ReducedPencil {
    CDQuadraticForms forms;
    std::vector<int> inner;                 // neighbors of the center, sorted
    std::vector<std::size_t> inner_pos;     // positions in the ball domain
    std::vector<std::size_t> outer_pos;     // positions of radius-2 vertices
    std::size_t center_pos = 0;
    SchurReduction schur;                   // Q reduced onto the inner block
    RatMat g_reduced;                       // diagonal, positive
};

// Gauge f(center) = 0 (both forms kill constants), then minimize the outer
// ring out of Q exactly; G never touches the outer ring, so the pencil
// (Q_red, G_red) over the neighbor coordinates is exact.
ReducedPencil reduce(const Graph& g, int x, const DimensionParam& m) {
    ReducedPencil r;
    r.forms = cd_forms(g, x, m);
    const auto& domain = r.forms.domain;
    auto pos = [&](int v) {
        auto it = std::lower_bound(domain.begin(), domain.end(), v);
        return static_cast<std::size_t>(it - domain.begin());
    };
    r.center_pos = pos(x);
    for (int v : domain) {
        if (v == x) continue;
        if (g.adjacent(x, v)) {
            r.inner.push_back(v);
            r.inner_pos.push_back(pos(v));
        } else {
            r.outer_pos.push_back(pos(v));
        }
    }
    // Drop the center row/column by excluding it from both index sets.
    r.schur = schur_eliminate_diagonal(r.forms.Q, r.inner_pos, r.outer_pos);
    r.g_reduced = zero_matrix(r.inner.size());
    for (std::size_t a = 0; a < r.inner_pos.size(); ++a)
        for (std::size_t b = 0; b < r.inner_pos.size(); ++b)
            r.g_reduced[a][b] = r.forms.G[r.inner_pos[a]][r.inner_pos[b]];
    return r;
}

FunctionOnBall lift_witness(const ReducedPencil& r, const RatVec& inner_values) {
    FunctionOnBall f;
    f.center = r.forms.center;
    f.domain = r.forms.domain;
    f.values.assign(f.domain.size(), Rat(0));
    for (std::size_t a = 0; a < r.inner_pos.size(); ++a)
        f.values[r.inner_pos[a]] = inner_values[a];
    for (std::size_t k = 0; k < r.outer_pos.size(); ++k) {
        Rat v(0);
        for (std::size_t a = 0; a < inner_values.size(); ++a)
            v += r.schur.lift[k][a] * inner_values[a];
        f.values[r.outer_pos[k]] = v;
    }
    return f;
}

}  // namespace

CDResult cd_verify(const Graph& g, int x, const DimensionParam& m, const Rat& K) {
    auto r = reduce(g, x, m);
    const std::size_t n = r.inner.size();
    RatMat M = zero_matrix(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            M[a][b] = r.schur.reduced[a][b] - K * r.g_reduced[a][b];
    auto check = check_positive_semidefinite(M);

    CDResult result;
    result.center = x;
    result.m = m;
    result.mode = CDMode::Verify;
    result.K = K;
    result.verdict = check.psd;
    if (!check.psd) result.witness = lift_witness(r, check.witness);
    return result;
}

CDResult cd_optimal_k(const Graph& g, int x, const DimensionParam& m, double tol) {
    if (!(tol > 0)) throw InvalidArgumentError("tolerance must be positive");
    auto r = reduce(g, x, m);
    const int n = static_cast<int>(r.inner.size());

    // G is diagonal on the gauge-fixed neighbor coordinates, so the pencil
    // reduces to a standard symmetric eigenproblem for D^-1/2 Q D^-1/2.
    Eigen::VectorXd scale(n);
    for (int i = 0; i < n; ++i) scale(i) = 1.0 / std::sqrt(rat_to_double(r.g_reduced[i][i]));
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            B(i, j) = rat_to_double(r.schur.reduced[i][j]) * scale(i) * scale(j);
    B = ((B + B.transpose()) / 2.0).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(B);
    if (solver.info() != Eigen::Success)
        throw NumericalFailureError("eigenvalue solver failed to converge");
    const double k_opt = solver.eigenvalues()(0);
    Eigen::VectorXd u = solver.eigenvectors().col(0);

    // Residual is measured against the matrix scale.
    const double residual = (B * u - k_opt * u).norm();
    if (residual > tol * std::max(1.0, B.norm()))
        throw NumericalFailureError("eigenpair residual " + double_to_string(residual) +
                                    " exceeds tolerance");

    RatVec inner_values(n);
    for (int i = 0; i < n; ++i) inner_values[i] = Rat(u(i) * scale(i));

    CDResult result;
    result.center = x;
    result.m = m;
    result.mode = CDMode::Optimize;
    result.k_opt = k_opt;
    result.tolerance = tol;
    result.witness = lift_witness(r, inner_values);

    // Exact a-posteriori confirmation that K_opt - tol is admissible.
    auto confirm = cd_verify(g, x, m, Rat(Rat(k_opt) - Rat(tol)));
    if (!confirm.verdict)
        throw NumericalFailureError("exact check refutes the computed optimal curvature");
    return result;
}

Rat cd_bound_degree(const Graph& g, int x) {
    if (g.neighbor_count(x) == 0)
        throw IsolatedVertexError("vertex '" + g.label(x) + "' is isolated");
    Rat dw(0);
    for (const Neighbor& n : g.neighbors(x))
        dw = rat_max(dw, Rat(g.weighted_degree(n.to) / n.weight));
    return 2 / dw - 1;
}

Rat cd_bound_triangle(const Graph& g, int x) {
    require_unweighted(g, "the triangle-refined bound");
    const Rat D = max_neighbor_degree(g, x);
    std::optional<Rat> t;
    for (const Neighbor& n : g.neighbors(x)) {
        Rat candidate = 4 / g.weighted_degree(n.to) + Rat(triangle_count(g, x, n.to)) / D;
        if (!t || candidate < *t) t = candidate;
    }
    return *t / 2 - 1;
}

Rat cd_bound_positive_curvature(const Graph& g, int x, const std::optional<Rat>& k) {
    require_unweighted(g, "the positive-curvature bound");
    const Rat D = max_neighbor_degree(g, x);
    if (!k) return 5 / (2 * D) - 1;
    if (*k <= 0)
        throw HypothesisViolationError("positive-curvature bound needs k > 0, got " +
                                       rat_to_string(*k));
    const Rat& dx = g.weighted_degree(x);
    std::optional<Rat> t;
    for (const Neighbor& n : g.neighbors(x)) {
        const Rat dmax = rat_max(dx, g.weighted_degree(n.to));
        Rat candidate =
            4 / g.weighted_degree(n.to) + Rat(rat_ceil_long(Rat(*k * dmax))) / D;
        if (!t || candidate < *t) t = candidate;
    }
    return *t / 2 - 1;
}

Rat cd_bound_positive_curvature_rough(const Graph& g, int x, const Rat& k) {
    require_unweighted(g, "the positive-curvature bound");
    if (k <= 0)
        throw HypothesisViolationError("positive-curvature bound needs k > 0, got " +
                                       rat_to_string(k));
    const Rat D = max_neighbor_degree(g, x);
    return 2 / D + k * g.weighted_degree(x) / (2 * D) - 1;
}

Rat cd_bound_triangle_weighted(const Graph& g, int x) {
    if (g.neighbor_count(x) == 0)
        throw IsolatedVertexError("vertex '" + g.label(x) + "' is isolated");
    std::optional<Rat> t;
    for (const Neighbor& ny : g.neighbors(x)) {
        const Rat& dy = g.weighted_degree(ny.to);
        const Rat w = ny.weight;
        Rat sum = 4 * w / dy;
        auto a = g.neighbors(x);
        auto b = g.neighbors(ny.to);
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i].to < b[j].to)
                ++i;
            else if (a[i].to > b[j].to)
                ++j;
            else {
                const Rat& d1 = g.weighted_degree(a[i].to);
                sum += rat_min(Rat(w / dy), Rat(a[i].weight / d1)) * b[j].weight / w;
                ++i;
                ++j;
            }
        }
        if (!t || sum < *t) t = sum;
    }
    return *t / 2 - 1;
}

}  // namespace ricci
