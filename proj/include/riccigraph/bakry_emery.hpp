#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riccigraph/graph.hpp"
#include "riccigraph/linalg.hpp"
#include "riccigraph/rational.hpp"

namespace ricci {

// Rational-valued function on the closed 2-ball of a center vertex; the
// Laplacian, carre du champ, and their iterates at the center depend on
// exactly these values.
struct FunctionOnBall {
    int center = -1;
    std::vector<int> domain;  // sorted ball(center, 2)
    std::vector<Rat> values;

    const Rat& at(int vertex) const;
    bool has(int vertex) const;
};

FunctionOnBall make_function_on_ball(const Graph& g, int center,
                                     const std::function<Rat(int)>& f);
FunctionOnBall constant_function(const Graph& g, int center, const Rat& value);
// 2 at the center, 1 on its neighbors, 0 on the rest of the 2-ball.
FunctionOnBall peak_test_function(const Graph& g, int center);

// Delta f(x) = sum_y m_x(y) f(y) - f(x).
Rat laplacian(const Graph& g, const FunctionOnBall& f, int x);

// Gamma(f,h)(x) = 1/2 sum_y m_x(y) (f(y)-f(x)) (h(y)-h(x)).
Rat gamma(const Graph& g, const FunctionOnBall& f, const FunctionOnBall& h, int x);
Rat gamma(const Graph& g, const FunctionOnBall& f, int x);

// Hf(x) = 1/4 sum_y m_x(y) sum_z m_y(z) (f(x) - 2 f(y) + f(z))^2.
Rat h_form(const Graph& g, const FunctionOnBall& f, int x);

// Gamma_2(f,f)(x) = Hf(x) - Gamma(f,f)(x) + 1/2 (Delta f(x))^2.
Rat gamma2(const Graph& g, const FunctionOnBall& f, int x);

// Same quantity assembled the iterated way, 1/2 { Delta Gamma(f,f)(x)
// - 2 Gamma(f, Delta f)(x) }; exposed for self-verification.
Rat gamma2_iterated(const Graph& g, const FunctionOnBall& f, int x);

// Dimension parameter m in [1, inf]; infinity drops the (1/m)(Delta f)^2 term.
class DimensionParam {
public:
    static DimensionParam finite(const Rat& m);
    static DimensionParam infinite();
    static DimensionParam parse(const std::string& text);  // "inf" or rational >= 1

    bool is_infinite() const { return infinite_; }
    const Rat& value() const;
    std::string to_string() const;

    bool operator==(const DimensionParam&) const = default;

private:
    DimensionParam(bool infinite, Rat value) : infinite_(infinite), value_(std::move(value)) {}
    bool infinite_;
    Rat value_;
};

// Exact quadratic forms over the 2-ball coordinates:
//   Q(f) = Gamma_2(f,f)(x) - (1/m) (Delta f(x))^2,   G(f) = Gamma(f,f)(x).
// CD(m,K) at x means Q - K G is positive semidefinite.
struct CDQuadraticForms {
    int center = -1;
    std::vector<int> domain;  // sorted ball(center, 2)
    DimensionParam m = DimensionParam::infinite();
    RatMat Q;
    RatMat G;

    Rat evaluate_Q(const FunctionOnBall& f) const;
    Rat evaluate_G(const FunctionOnBall& f) const;
};

CDQuadraticForms cd_forms(const Graph& g, int x, const DimensionParam& m);

enum class CDMode { Verify, Optimize };

struct CDResult {
    int center = -1;
    DimensionParam m = DimensionParam::infinite();
    CDMode mode = CDMode::Verify;
    std::optional<Rat> K;        // verify: the tested curvature constant
    bool verdict = false;        // verify: whether CD(m,K) holds at center
    double k_opt = 0.0;          // optimize: inf_f Q(f)/G(f)
    double tolerance = 0.0;      // optimize
    std::optional<FunctionOnBall> witness;  // violating (verify=false) or attaining (optimize)
};

// Exact verdict on Q - K G >= 0, by rational LDL^T on the reduced space
// (gauge f(x) = 0, outer-ball coordinates minimized out by exact Schur
// complement). A violating function is returned when the verdict is false.
CDResult cd_verify(const Graph& g, int x, const DimensionParam& m, const Rat& K);

// K_opt = inf { Q(f)/G(f) : G(f) > 0 } at x, via the reduced generalized
// eigenproblem solved in floating point to tolerance tol, with an exact
// a-posteriori confirmation that CD(m, K_opt - tol) holds.
CDResult cd_optimal_k(const Graph& g, int x, const DimensionParam& m, double tol);

// Closed-form curvature constants K with CD(2, K) at x.
// Degree bound: 2 / D_w(x) - 1 with D_w(x) = max_{y~x} d_y / w_yx.
Rat cd_bound_degree(const Graph& g, int x);
// Triangle-refined bound (unweighted): t(x)/2 - 1,
// t(x) = min_{y~x} (4/d_y + #(x,y)/D(x)).
Rat cd_bound_triangle(const Graph& g, int x);
// Bounds valid when every edge at x has positive curvature (unweighted):
// without k: 5/(2 D(x)) - 1; with kappa >= k > 0:
// 1/2 min_{y~x} (4/d_y + ceil(k (d_x v d_y)) / D(x)) - 1.
Rat cd_bound_positive_curvature(const Graph& g, int x, const std::optional<Rat>& k);
// Weaker closed form under kappa >= k > 0: 2/D(x) + k d_x / (2 D(x)) - 1.
Rat cd_bound_positive_curvature_rough(const Graph& g, int x, const Rat& k);
// Weighted triangle-refined bound: t_w(x)/2 - 1 with
// t_w(x) = min_{y~x} (4 w_xy/d_y
//          + sum_{x1~x, x1~y} min(w_xy/d_y, w_xx1/d_x1) w_x1y / w_xy).
Rat cd_bound_triangle_weighted(const Graph& g, int x);

}  // namespace ricci
