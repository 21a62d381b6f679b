#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "riccigraph/bakry_emery.hpp"
#include "riccigraph/curvature.hpp"
#include "riccigraph/errors.hpp"
#include "riccigraph/families.hpp"
#include "riccigraph/graph.hpp"
#include "riccigraph/measure.hpp"
#include "riccigraph/rational.hpp"
#include "riccigraph/transport.hpp"

namespace py = pybind11;

namespace pybind11::detail {

// mpq_class <-> fractions.Fraction. Loading also accepts ints and "p/q" strings.
template <>
struct type_caster<mpq_class> {
    PYBIND11_TYPE_CASTER(mpq_class, const_name("Fraction"));

    bool load(handle src, bool) {
        try {
            if (isinstance<str>(src)) {
                value = ricci::rat_from_string(std::string(str(src)));
                return true;
            }
            if (hasattr(src, "numerator") && hasattr(src, "denominator")) {
                mpz_class num(std::string(str(src.attr("numerator"))));
                mpz_class den(std::string(str(src.attr("denominator"))));
                if (den == 0) return false;
                mpq_class q(num, den);
                q.canonicalize();
                value = q;
                return true;
            }
        } catch (const std::exception&) {
            return false;
        }
        return false;
    }

    static handle cast(const mpq_class& v, return_value_policy, handle) {
        object fraction = module_::import("fractions").attr("Fraction");
        object num = module_::import("builtins").attr("int")(v.get_num().get_str());
        object den = module_::import("builtins").attr("int")(v.get_den().get_str());
        return fraction(num, den).release();
    }
};

}  // namespace pybind11::detail

namespace {

ricci::DimensionParam dimension_from_py(const py::object& m) {
    if (py::isinstance<py::str>(m)) return ricci::DimensionParam::parse(std::string(py::str(m)));
    if (py::isinstance<py::float_>(m)) {
        double v = m.cast<double>();
        if (std::isinf(v)) return ricci::DimensionParam::infinite();
        throw ricci::InvalidArgumentError(
            "pass the dimension as an int, Fraction, 'inf', or float('inf')");
    }
    return ricci::DimensionParam::finite(m.cast<mpq_class>());
}

}  // namespace

PYBIND11_MODULE(_riccigraph, m) {
    m.doc() = "Exact Ollivier-Ricci curvature and curvature-dimension analysis on graphs";

    py::register_exception<ricci::Error>(m, "RicciError", PyExc_ValueError);

    py::class_<ricci::Neighbor>(m, "Neighbor")
        .def_readonly("to", &ricci::Neighbor::to)
        .def_readonly("weight", &ricci::Neighbor::weight);

    py::class_<ricci::Graph>(m, "Graph")
        .def_property_readonly("vertex_count", &ricci::Graph::vertex_count)
        .def_property_readonly("edge_count", &ricci::Graph::edge_count)
        .def_property_readonly("weighted", &ricci::Graph::is_weighted)
        .def("label", &ricci::Graph::label)
        .def("vertex", &ricci::Graph::vertex)
        .def("labels",
             [](const ricci::Graph& g) {
                 std::vector<std::string> out;
                 for (int v = 0; v < g.vertex_count(); ++v) out.push_back(g.label(v));
                 return out;
             })
        .def("neighbors",
             [](const ricci::Graph& g, int v) {
                 std::vector<std::pair<int, mpq_class>> out;
                 for (const auto& n : g.neighbors(v)) out.emplace_back(n.to, n.weight);
                 return out;
             })
        .def("adjacent", &ricci::Graph::adjacent)
        .def("edge_weight", &ricci::Graph::edge_weight)
        .def("neighbor_count", &ricci::Graph::neighbor_count)
        .def("weighted_degree", &ricci::Graph::weighted_degree)
        .def("edges", &ricci::Graph::edges)
        .def("__eq__", [](const ricci::Graph& a, const ricci::Graph& b) { return a == b; })
        .def("__repr__", [](const ricci::Graph& g) {
            std::ostringstream out;
            out << "Graph(" << g.vertex_count() << " vertices, " << g.edge_count() << " edges"
                << (g.is_weighted() ? ", weighted)" : ")");
            return out.str();
        });

    py::class_<ricci::GraphBuilder>(m, "GraphBuilder")
        .def(py::init<bool>(), py::arg("weighted") = false)
        .def("add_vertex", &ricci::GraphBuilder::add_vertex)
        .def("add_edge",
             py::overload_cast<const std::string&, const std::string&, const mpq_class&>(
                 &ricci::GraphBuilder::add_edge),
             py::arg("u"), py::arg("v"), py::arg("weight") = mpq_class(1))
        .def("build", &ricci::GraphBuilder::build);

    m.def("load_edge_list",
          py::overload_cast<const std::string&, bool>(&ricci::load_edge_list), py::arg("text"),
          py::arg("weighted") = false);
    m.def("serialize_edge_list", &ricci::serialize_edge_list);
    m.def("generate_family", &ricci::generate_family);

    m.def("hop_distance",
          [](const ricci::Graph& g, int x, int y) { return ricci::hop_distance(g, x, y); });
    m.def("ball", &ricci::ball);
    m.def("triangle_count", &ricci::triangle_count);
    m.def("clustering_coefficient", &ricci::clustering_coefficient);
    m.def("connected_components", &ricci::connected_components);

    py::class_<ricci::VertexMeasure>(m, "VertexMeasure")
        .def_readonly("base", &ricci::VertexMeasure::base)
        .def("atoms",
             [](const ricci::VertexMeasure& mu) {
                 std::vector<std::pair<int, mpq_class>> out;
                 for (const auto& a : mu.atoms) out.emplace_back(a.vertex, a.mass);
                 return out;
             })
        .def("mass_at", &ricci::VertexMeasure::mass_at)
        .def("support", &ricci::VertexMeasure::support);

    m.def("random_walk_measure", &ricci::random_walk_measure);
    m.def("make_vertex_measure",
          [](const ricci::Graph& g, int base,
             const std::vector<std::pair<int, mpq_class>>& atoms) {
              std::vector<ricci::Atom> converted;
              converted.reserve(atoms.size());
              for (const auto& [v, mass] : atoms) converted.push_back({v, mass});
              return ricci::make_vertex_measure(g, base, converted);
          });
    m.def("intersection_mass", &ricci::intersection_mass);
    m.def("total_variation_overlap_check", &ricci::total_variation_overlap_check);

    py::class_<ricci::PlanEntry>(m, "PlanEntry")
        .def_readonly("src", &ricci::PlanEntry::src)
        .def_readonly("dst", &ricci::PlanEntry::dst)
        .def_readonly("mass", &ricci::PlanEntry::mass);

    py::class_<ricci::TransportResult>(m, "TransportResult")
        .def_readonly("value", &ricci::TransportResult::value)
        .def_readonly("plan", &ricci::TransportResult::plan)
        .def_readonly("dual", &ricci::TransportResult::dual)
        .def("dual_at", &ricci::TransportResult::dual_at);

    py::class_<ricci::PlanCheck>(m, "PlanCheck")
        .def_readonly("ok", &ricci::PlanCheck::ok)
        .def_readonly("failures", &ricci::PlanCheck::failures);

    m.def("wasserstein1", &ricci::wasserstein1);
    m.def("wasserstein1",
          [](const ricci::Graph& g, int x, int y) {
              return ricci::wasserstein1(g, ricci::random_walk_measure(g, x),
                                         ricci::random_walk_measure(g, y));
          });
    m.def("verify_plan", &ricci::verify_plan);
    m.def("dual_enumeration_oracle",
          py::overload_cast<const ricci::Graph&, const ricci::VertexMeasure&,
                            const ricci::VertexMeasure&, int>(&ricci::dual_enumeration_oracle));
    m.def("dual_enumeration_oracle",
          py::overload_cast<const ricci::Graph&, const ricci::VertexMeasure&,
                            const ricci::VertexMeasure&>(&ricci::dual_enumeration_oracle));
    m.def("pairwise_distance_matrix", &ricci::pairwise_distance_matrix);

    m.def("ricci_curvature", &ricci::ricci_curvature);
    m.def("lower_bound_linyau", &ricci::lower_bound_linyau);
    m.def("lower_bound_triangle", [](const ricci::Graph& g, int x, int y) {
        auto [bound, tag] = ricci::lower_bound_triangle(g, x, y);
        return std::make_pair(bound, ricci::case_tag_name(tag));
    });
    m.def("upper_bound_triangle", &ricci::upper_bound_triangle);
    m.def("min_triangles_for_positive", &ricci::min_triangles_for_positive);

    py::class_<ricci::EdgeCurvatureReport>(m, "EdgeCurvatureReport")
        .def_readonly("x", &ricci::EdgeCurvatureReport::x)
        .def_readonly("y", &ricci::EdgeCurvatureReport::y)
        .def_readonly("distance", &ricci::EdgeCurvatureReport::distance)
        .def_readonly("w1", &ricci::EdgeCurvatureReport::w1)
        .def_readonly("kappa", &ricci::EdgeCurvatureReport::kappa)
        .def_readonly("sharp", &ricci::EdgeCurvatureReport::sharp)
        .def_property_readonly("case_tag",
                               [](const ricci::EdgeCurvatureReport& r) -> py::object {
                                   if (!r.case_tag) return py::none();
                                   return py::str(ricci::case_tag_name(*r.case_tag));
                               })
        .def_readonly("lower_linyau", &ricci::EdgeCurvatureReport::lower_linyau)
        .def_readonly("lower_triangle", &ricci::EdgeCurvatureReport::lower_triangle)
        .def_readonly("upper_triangle", &ricci::EdgeCurvatureReport::upper_triangle)
        .def_readonly("lower_tight", &ricci::EdgeCurvatureReport::lower_tight)
        .def_readonly("upper_tight", &ricci::EdgeCurvatureReport::upper_tight);

    m.def("edge_report", &ricci::edge_report);

    py::class_<ricci::ScalarCurvatureReport>(m, "ScalarCurvatureReport")
        .def_readonly("x", &ricci::ScalarCurvatureReport::x)
        .def_readonly("mean_kappa", &ricci::ScalarCurvatureReport::mean_kappa)
        .def_readonly("clustering", &ricci::ScalarCurvatureReport::clustering)
        .def_readonly("upper", &ricci::ScalarCurvatureReport::upper)
        .def_readonly("lower", &ricci::ScalarCurvatureReport::lower)
        .def_readonly("refined_lower", &ricci::ScalarCurvatureReport::refined_lower);

    m.def("scalar_report", &ricci::scalar_report);

    py::class_<ricci::FunctionOnBall>(m, "FunctionOnBall")
        .def_readonly("center", &ricci::FunctionOnBall::center)
        .def_readonly("domain", &ricci::FunctionOnBall::domain)
        .def_readonly("values", &ricci::FunctionOnBall::values)
        .def("at", &ricci::FunctionOnBall::at);

    m.def("make_function_on_ball",
          [](const ricci::Graph& g, int center, const py::object& values) {
              if (py::isinstance<py::dict>(values)) {
                  auto map = values.cast<std::map<int, mpq_class>>();
                  return ricci::make_function_on_ball(g, center, [&](int v) {
                      auto it = map.find(v);
                      if (it == map.end())
                          throw ricci::DomainMismatchError("no value for vertex " +
                                                           std::to_string(v));
                      return it->second;
                  });
              }
              auto fn = values.cast<std::function<mpq_class(int)>>();
              return ricci::make_function_on_ball(g, center, fn);
          });
    m.def("constant_function", &ricci::constant_function);
    m.def("peak_test_function", &ricci::peak_test_function);

    m.def("laplacian", &ricci::laplacian);
    m.def("gamma",
          py::overload_cast<const ricci::Graph&, const ricci::FunctionOnBall&,
                            const ricci::FunctionOnBall&, int>(&ricci::gamma));
    m.def("gamma", py::overload_cast<const ricci::Graph&, const ricci::FunctionOnBall&, int>(
                       &ricci::gamma));
    m.def("h_form", &ricci::h_form);
    m.def("gamma2", &ricci::gamma2);
    m.def("gamma2_iterated", &ricci::gamma2_iterated);

    py::class_<ricci::CDResult>(m, "CDResult")
        .def_readonly("center", &ricci::CDResult::center)
        .def_property_readonly(
            "mode",
            [](const ricci::CDResult& r) {
                return r.mode == ricci::CDMode::Verify ? "verify" : "optimize";
            })
        .def_readonly("K", &ricci::CDResult::K)
        .def_readonly("verdict", &ricci::CDResult::verdict)
        .def_readonly("k_opt", &ricci::CDResult::k_opt)
        .def_readonly("tolerance", &ricci::CDResult::tolerance)
        .def_readonly("witness", &ricci::CDResult::witness);

    m.def("cd_verify", [](const ricci::Graph& g, int x, const py::object& m_,
                          const mpq_class& K) { return ricci::cd_verify(g, x, dimension_from_py(m_), K); });
    m.def(
        "cd_optimal_k",
        [](const ricci::Graph& g, int x, const py::object& m_, double tol) {
            return ricci::cd_optimal_k(g, x, dimension_from_py(m_), tol);
        },
        py::arg("g"), py::arg("x"), py::arg("m"), py::arg("tol") = 1e-9);

    m.def("cd_bound_degree", &ricci::cd_bound_degree);
    m.def("cd_bound_triangle", &ricci::cd_bound_triangle);
    m.def("cd_bound_positive_curvature",
          [](const ricci::Graph& g, int x, const py::object& k) {
              std::optional<mpq_class> kk;
              if (!k.is_none()) kk = k.cast<mpq_class>();
              return ricci::cd_bound_positive_curvature(g, x, kk);
          },
          py::arg("g"), py::arg("x"), py::arg("k") = py::none());
    m.def("cd_bound_positive_curvature_rough", &ricci::cd_bound_positive_curvature_rough);
    m.def("cd_bound_triangle_weighted", &ricci::cd_bound_triangle_weighted);
}
