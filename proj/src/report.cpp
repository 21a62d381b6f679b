#include "riccigraph/report.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "riccigraph/curvature.hpp"
#include "riccigraph/errors.hpp"
#include "riccigraph/families.hpp"
#include "riccigraph/measure.hpp"
#include "riccigraph/parallel.hpp"
#include "riccigraph/transport.hpp"

namespace ricci {

namespace {

using nlohmann::ordered_json;

std::string csv_quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string bool_name(bool b) { return b ? "true" : "false"; }

Graph load_graph(const RunConfig& config) {
    if (!config.family.empty()) return generate_family(config.family);
    std::ifstream in(config.input_path);
    if (!in) throw Error("cannot open input file '" + config.input_path + "'");
    return load_edge_list(in, config.weighted);
}

// A pair request, possibly unresolved (unknown labels from a pairs file).
struct PairRequest {
    std::string x_label;
    std::string y_label;
    std::optional<std::pair<int, int>> indices;
    std::string error;
};

std::vector<PairRequest> select_pairs(const Graph& g, const RunConfig& config) {
    std::vector<PairRequest> requests;
    auto push = [&](int x, int y) {
        if (g.label(x) > g.label(y)) std::swap(x, y);
        requests.push_back({g.label(x), g.label(y), std::make_pair(x, y), {}});
    };
    switch (config.selector) {
        case PairSelector::Edges:
            for (auto [u, v] : g.edges()) push(u, v);
            break;
        case PairSelector::AllPairs:
            for (int u = 0; u < g.vertex_count(); ++u)
                for (int v = u + 1; v < g.vertex_count(); ++v) push(u, v);
            break;
        case PairSelector::File: {
            std::ifstream in(config.pairs_file);
            if (!in) throw Error("cannot open pairs file '" + config.pairs_file + "'");
            std::string line;
            std::size_t line_no = 0;
            while (std::getline(in, line)) {
                ++line_no;
                if (!line.empty() && line.back() == '\r') line.pop_back();
                if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
                std::istringstream tok(line);
                std::string a, b, extra;
                if (!(tok >> a)) continue;
                if (!(tok >> b) || (tok >> extra))
                    throw ParseError(line_no, "expected two vertex labels");
                auto xi = g.index_of(a);
                auto yi = g.index_of(b);
                if (!xi || !yi) {
                    PairRequest req{a, b, std::nullopt, "unknown vertex label"};
                    if (req.x_label > req.y_label) std::swap(req.x_label, req.y_label);
                    requests.push_back(std::move(req));
                } else {
                    push(*xi, *yi);
                }
            }
            break;
        }
    }
    std::sort(requests.begin(), requests.end(), [](const PairRequest& a, const PairRequest& b) {
        return std::tie(a.x_label, a.y_label) < std::tie(b.x_label, b.y_label);
    });
    return requests;
}

struct ComputedPair {
    PairRequest request;
    std::optional<EdgeCurvatureReport> report;
    std::string error;
};

std::vector<ComputedPair> compute_pairs(const Graph& g, const std::vector<PairRequest>& requests,
                                        int workers) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::size_t> row_of;
    for (std::size_t i = 0; i < requests.size(); ++i)
        if (requests[i].indices) {
            pairs.push_back(*requests[i].indices);
            row_of.push_back(i);
        }
    auto rows = graph_report(g, pairs, workers);
    std::vector<ComputedPair> out(requests.size());
    for (std::size_t i = 0; i < requests.size(); ++i) {
        out[i].request = requests[i];
        out[i].error = requests[i].error;
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        out[row_of[k]].report = rows[k].report;
        out[row_of[k]].error = rows[k].error;
    }
    return out;
}

ReportTable curvature_table(const std::vector<ComputedPair>& pairs) {
    ReportTable table;
    table.columns = {"x", "y", "distance", "w1", "kappa", "kappa_decimal", "error"};
    for (const auto& p : pairs) {
        std::vector<std::string> row(table.columns.size());
        ordered_json j;
        row[0] = p.request.x_label;
        row[1] = p.request.y_label;
        j["x"] = p.request.x_label;
        j["y"] = p.request.y_label;
        if (p.report) {
            row[2] = std::to_string(p.report->distance);
            row[3] = rat_to_string(p.report->w1);
            row[4] = rat_to_string(p.report->kappa);
            row[5] = rat_to_decimal_string(p.report->kappa);
            j["distance"] = p.report->distance;
            j["w1"] = rat_to_string(p.report->w1);
            j["kappa"] = rat_to_string(p.report->kappa);
            j["kappa_decimal"] = rat_to_double(p.report->kappa);
        }
        row[6] = p.error;
        j["error"] = p.error;
        table.rows.push_back(std::move(row));
        table.json_rows.push_back(j.dump());
    }
    return table;
}

ReportTable bounds_table(const Graph& g, const std::vector<ComputedPair>& pairs) {
    ReportTable table;
    table.columns = {"x",           "y",           "d_x",   "d_y",
                     "sharp",       "w1",          "kappa", "kappa_decimal",
                     "lower_linyau", "lower_triangle", "upper_triangle", "case",
                     "lower_tight", "upper_tight", "error"};
    for (const auto& p : pairs) {
        std::vector<std::string> row(table.columns.size());
        ordered_json j;
        row[0] = p.request.x_label;
        row[1] = p.request.y_label;
        j["x"] = p.request.x_label;
        j["y"] = p.request.y_label;
        if (p.report) {
            const auto& r = *p.report;
            row[2] = rat_to_string(g.weighted_degree(r.x));
            row[3] = rat_to_string(g.weighted_degree(r.y));
            row[5] = rat_to_string(r.w1);
            row[6] = rat_to_string(r.kappa);
            row[7] = rat_to_decimal_string(r.kappa);
            j["d_x"] = row[2];
            j["d_y"] = row[3];
            j["w1"] = row[5];
            j["kappa"] = row[6];
            j["kappa_decimal"] = rat_to_double(r.kappa);
            if (r.sharp) {
                row[4] = std::to_string(*r.sharp);
                row[8] = rat_to_string(*r.lower_linyau);
                row[9] = rat_to_string(*r.lower_triangle);
                row[10] = rat_to_string(*r.upper_triangle);
                row[11] = case_tag_name(*r.case_tag);
                row[12] = bool_name(r.lower_tight);
                row[13] = bool_name(r.upper_tight);
                j["sharp"] = *r.sharp;
                j["lower_linyau"] = row[8];
                j["lower_triangle"] = row[9];
                j["upper_triangle"] = row[10];
                j["case"] = row[11];
                j["lower_tight"] = r.lower_tight;
                j["upper_tight"] = r.upper_tight;
            }
        }
        row[14] = p.error;
        j["error"] = p.error;
        table.rows.push_back(std::move(row));
        table.json_rows.push_back(j.dump());
    }
    return table;
}

std::vector<int> sorted_vertices(const Graph& g) {
    std::vector<int> vertices(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) vertices[v] = v;
    std::sort(vertices.begin(), vertices.end(),
              [&](int a, int b) { return g.label(a) < g.label(b); });
    return vertices;
}

ReportTable cd_table(const Graph& g, const RunConfig& config) {
    ReportTable table;
    table.columns = {"x", "d_x", "m", "mode", "k", "verdict", "error"};
    const auto vertices = sorted_vertices(g);
    const bool verify_mode = config.K.has_value();

    struct Row {
        std::optional<CDResult> result;
        std::string error;
    };
    std::vector<Row> rows(vertices.size());
    parallel_for(vertices.size(), config.parallelism, [&](std::size_t i) {
        try {
            if (verify_mode)
                rows[i].result = cd_verify(g, vertices[i], config.m, *config.K);
            else
                rows[i].result = cd_optimal_k(g, vertices[i], config.m, config.tolerance);
        } catch (const Error& e) {
            rows[i].error = e.what();
        }
    });

    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const int x = vertices[i];
        std::vector<std::string> row(table.columns.size());
        ordered_json j;
        row[0] = g.label(x);
        row[1] = rat_to_string(g.weighted_degree(x));
        row[2] = config.m.to_string();
        row[3] = verify_mode ? "verify" : "optimize";
        j["x"] = row[0];
        j["d_x"] = row[1];
        j["m"] = row[2];
        j["mode"] = row[3];
        if (rows[i].result) {
            const CDResult& r = *rows[i].result;
            if (verify_mode) {
                row[4] = rat_to_string(*r.K);
                row[5] = bool_name(r.verdict);
                j["k"] = row[4];
                j["verdict"] = r.verdict;
            } else {
                row[4] = double_to_string(r.k_opt);
                j["k"] = r.k_opt;
                j["tolerance"] = r.tolerance;
            }
            if (r.witness) {
                ordered_json w;
                for (std::size_t p = 0; p < r.witness->domain.size(); ++p)
                    w[g.label(r.witness->domain[p])] = rat_to_string(r.witness->values[p]);
                j["witness"] = std::move(w);
            }
        }
        row[6] = rows[i].error;
        j["error"] = rows[i].error;
        table.rows.push_back(std::move(row));
        table.json_rows.push_back(j.dump());
    }
    return table;
}

ReportTable scalar_table(const Graph& g, const RunConfig& config) {
    ReportTable table;
    table.columns = {"x",     "d_x",   "c",     "mean_kappa", "mean_kappa_decimal",
                     "upper", "lower", "refined_lower", "error"};
    const auto vertices = sorted_vertices(g);

    struct Row {
        std::optional<ScalarCurvatureReport> report;
        std::string error;
    };
    std::vector<Row> rows(vertices.size());
    parallel_for(vertices.size(), config.parallelism, [&](std::size_t i) {
        try {
            rows[i].report = scalar_report(g, vertices[i]);
        } catch (const Error& e) {
            rows[i].error = e.what();
        }
    });

    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::vector<std::string> row(table.columns.size());
        ordered_json j;
        row[0] = g.label(vertices[i]);
        row[1] = rat_to_string(g.weighted_degree(vertices[i]));
        j["x"] = row[0];
        j["d_x"] = row[1];
        if (rows[i].report) {
            const auto& r = *rows[i].report;
            row[2] = rat_to_string(r.clustering);
            row[3] = rat_to_string(r.mean_kappa);
            row[4] = rat_to_decimal_string(r.mean_kappa);
            row[5] = rat_to_string(r.upper);
            row[6] = rat_to_string(r.lower);
            j["c"] = row[2];
            j["mean_kappa"] = row[3];
            j["mean_kappa_decimal"] = rat_to_double(r.mean_kappa);
            j["upper"] = row[5];
            j["lower"] = row[6];
            if (r.refined_lower) {
                row[7] = rat_to_string(*r.refined_lower);
                j["refined_lower"] = row[7];
            }
        }
        row[8] = rows[i].error;
        j["error"] = rows[i].error;
        table.rows.push_back(std::move(row));
        table.json_rows.push_back(j.dump());
    }
    return table;
}

// ---- verify command: the acceptance-style property suite on one input ----

struct PropertyResult {
    std::string name;
    std::string status;  // pass / fail / skip
    std::string detail;
};

// Deterministic small rationals for the Gamma_2 identity property.
Rat pseudo_random_rat(std::mt19937_64& rng) {
    long num = static_cast<long>(rng() % 11) - 5;
    long den = static_cast<long>(rng() % 6) + 1;
    return rat(num, den);
}

std::vector<PropertyResult> run_property_suite(const Graph& g) {
    std::vector<PropertyResult> results;
    auto record = [&](const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass ? "pass" : "fail", detail});
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        results.push_back({name, "skip", why});
    };

    const auto edges = g.edges();

    // measure consistency: overlap identity and unit mass
    {
        bool ok = true;
        std::string detail;
        for (auto [x, y] : edges) {
            auto mx = random_walk_measure(g, x);
            auto my = random_walk_measure(g, y);
            if (mx.total_mass() != 1 || my.total_mass() != 1 ||
                intersection_mass(g, x, y) != total_variation_overlap_check(mx, my)) {
                ok = false;
                detail = "edge " + g.label(x) + "-" + g.label(y);
                break;
            }
        }
        record("measure_consistency", ok, detail);
    }

    // duality certificates on every edge
    {
        bool ok = true;
        std::string detail;
        for (auto [x, y] : edges) {
            auto res = wasserstein1(g, random_walk_measure(g, x), random_walk_measure(g, y));
            auto check = verify_plan(g, random_walk_measure(g, x), random_walk_measure(g, y), res);
            if (!check.ok) {
                ok = false;
                detail = "edge " + g.label(x) + "-" + g.label(y) + ": " + check.failures.front();
                break;
            }
        }
        record("duality_certificates", ok, detail);
    }

    // bound sandwich on every edge
    {
        bool ok = true;
        std::string detail;
        for (auto [x, y] : edges) {
            auto report = edge_report(g, x, y);
            bool sandwich = *report.lower_linyau <= *report.lower_triangle &&
                            *report.lower_triangle <= report.kappa &&
                            report.kappa <= *report.upper_triangle &&
                            *report.upper_triangle <= 1;
            if (!g.is_weighted() && report.case_tag == CaseTag::BNeg &&
                report.kappa != *report.upper_triangle)
                sandwich = false;
            if (!sandwich) {
                ok = false;
                detail = "edge " + g.label(x) + "-" + g.label(y);
                break;
            }
        }
        record("bound_sandwich", ok, detail);
    }

    // oracle equivalence where the joint support is small enough
    {
        bool ok = true;
        bool any = false;
        std::string detail;
        for (auto [x, y] : edges) {
            auto mx = random_walk_measure(g, x);
            auto my = random_walk_measure(g, y);
            try {
                Rat oracle = dual_enumeration_oracle(g, mx, my);
                any = true;
                if (oracle != wasserstein1(g, mx, my).value) {
                    ok = false;
                    detail = "edge " + g.label(x) + "-" + g.label(y);
                    break;
                }
            } catch (const SupportTooLargeError&) {
                continue;
            }
        }
        if (!any)
            skip("oracle_equivalence", "all joint supports exceed the oracle guard");
        else
            record("oracle_equivalence", ok, detail);
    }

    // Gamma_2 assembly vs iterated definition on pseudo-random functions
    {
        bool ok = true;
        std::string detail;
        std::mt19937_64 rng(20240505);
        for (int x = 0; x < g.vertex_count() && ok; ++x) {
            if (g.neighbor_count(x) == 0) continue;
            for (int trial = 0; trial < 5; ++trial) {
                auto f = make_function_on_ball(g, x, [&](int) { return pseudo_random_rat(rng); });
                if (gamma2(g, f, x) != gamma2_iterated(g, f, x)) {
                    ok = false;
                    detail = "vertex " + g.label(x);
                    break;
                }
            }
        }
        record("gamma2_identity", ok, detail);
    }

    // closed-form CD bounds verify exactly at m = 2
    {
        bool ok = true;
        std::string detail;
        const auto m2 = DimensionParam::finite(Rat(2));
        for (int x = 0; x < g.vertex_count() && ok; ++x) {
            if (g.neighbor_count(x) == 0) continue;
            std::vector<Rat> bounds{cd_bound_degree(g, x), cd_bound_triangle_weighted(g, x)};
            if (!g.is_weighted()) {
                bounds.push_back(cd_bound_triangle(g, x));
                std::optional<Rat> min_kappa;
                for (const Neighbor& n : g.neighbors(x)) {
                    Rat k = ricci_curvature(g, x, n.to);
                    if (!min_kappa || k < *min_kappa) min_kappa = k;
                }
                if (min_kappa && *min_kappa > 0) {
                    bounds.push_back(cd_bound_positive_curvature(g, x, std::nullopt));
                    bounds.push_back(cd_bound_positive_curvature(g, x, *min_kappa));
                }
            }
            for (const Rat& k : bounds)
                if (!cd_verify(g, x, m2, k).verdict) {
                    ok = false;
                    detail = "vertex " + g.label(x) + " at K = " + rat_to_string(k);
                    break;
                }
        }
        record("cd_closed_form_bounds", ok, detail);
    }

    // scalar sandwich (unweighted)
    if (g.is_weighted()) {
        skip("scalar_sandwich", "weighted graph");
    } else {
        bool ok = true;
        bool any = false;
        std::string detail;
        for (int x = 0; x < g.vertex_count(); ++x) {
            if (g.neighbor_count(x) < 2) continue;
            any = true;
            auto r = scalar_report(g, x);
            bool holds = r.lower <= r.mean_kappa && r.mean_kappa <= r.upper;
            if (r.refined_lower && *r.refined_lower > r.mean_kappa) holds = false;
            if (!holds) {
                ok = false;
                detail = "vertex " + g.label(x);
                break;
            }
        }
        if (!any)
            skip("scalar_sandwich", "no vertex with degree >= 2");
        else
            record("scalar_sandwich", ok, detail);
    }

    // trees attain the degree-only lower bound
    {
        const std::size_t components = connected_components(g).size();
        const bool acyclic =
            g.edge_count() + components == static_cast<std::size_t>(g.vertex_count());
        if (!acyclic) {
            skip("tree_exactness", "graph has cycles");
        } else {
            bool ok = true;
            std::string detail;
            for (auto [x, y] : edges)
                if (ricci_curvature(g, x, y) != lower_bound_linyau(g, x, y)) {
                    ok = false;
                    detail = "edge " + g.label(x) + "-" + g.label(y);
                    break;
                }
            record("tree_exactness", ok, detail);
        }
    }

    // positive curvature forces small hop diameter (<= 2/k)
    {
        if (edges.empty() || connected_components(g).size() != 1) {
            skip("diameter_consistency", "needs a connected graph with edges");
        } else {
            std::optional<Rat> min_kappa;
            for (auto [x, y] : edges) {
                Rat k = ricci_curvature(g, x, y);
                if (!min_kappa || k < *min_kappa) min_kappa = k;
            }
            if (*min_kappa <= 0) {
                skip("diameter_consistency", "minimum edge curvature is not positive");
            } else {
                int diameter = 0;
                for (int v = 0; v < g.vertex_count(); ++v)
                    for (int u = v + 1; u < g.vertex_count(); ++u)
                        diameter = std::max(diameter, *hop_distance(g, v, u));
                record("diameter_consistency", Rat(diameter) <= 2 / *min_kappa,
                       "diameter " + std::to_string(diameter));
            }
        }
    }

    return results;
}

int run_verify(const Graph& g, const RunConfig& config, std::ostream& out) {
    auto results = run_property_suite(g);
    bool all_ok = true;
    if (config.format == OutputFormat::Json) {
        std::string payload = "[\n";
        for (std::size_t i = 0; i < results.size(); ++i) {
            ordered_json j;
            j["property"] = results[i].name;
            j["status"] = results[i].status;
            j["detail"] = results[i].detail;
            payload += "  " + j.dump();
            payload += i + 1 < results.size() ? ",\n" : "\n";
        }
        payload += "]\n";
        out << payload;
    } else {
        for (const auto& r : results) {
            std::string line = r.status == "pass" ? "PASS" : (r.status == "skip" ? "SKIP" : "FAIL");
            line += " " + r.name;
            if (!r.detail.empty()) line += " (" + r.detail + ")";
            out << line << '\n';
        }
    }
    for (const auto& r : results)
        if (r.status == "fail") all_ok = false;
    return all_ok ? 0 : 1;
}

}  // namespace

std::string serialize_report(const ReportTable& table, OutputFormat format) {
    std::string out;
    if (format == OutputFormat::Csv) {
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out += ',';
            out += csv_quote(table.columns[c]);
        }
        out += '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += csv_quote(row[c]);
            }
            out += '\n';
        }
    } else {
        out += "[\n";
        for (std::size_t i = 0; i < table.json_rows.size(); ++i) {
            out += "  " + table.json_rows[i];
            out += i + 1 < table.json_rows.size() ? ",\n" : "\n";
        }
        out += "]\n";
    }
    return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    // Usage-level validation first.
    if (config.input_path.empty() == config.family.empty()) {
        err << "error: exactly one of --input and --family is required\n";
        return 2;
    }
    if (!(config.tolerance > 0)) {
        err << "error: tolerance must be positive\n";
        return 2;
    }
    if (config.selector == PairSelector::File && config.pairs_file.empty()) {
        err << "error: --pairs file requires --pairs-file\n";
        return 2;
    }
    if (config.parallelism < 1) {
        err << "error: parallelism must be at least 1\n";
        return 2;
    }

    try {
        const Graph g = load_graph(config);
        switch (config.command) {
            case Command::Curvature: {
                auto pairs = compute_pairs(g, select_pairs(g, config), config.parallelism);
                out << serialize_report(curvature_table(pairs), config.format);
                return 0;
            }
            case Command::Bounds: {
                auto pairs = compute_pairs(g, select_pairs(g, config), config.parallelism);
                out << serialize_report(bounds_table(g, pairs), config.format);
                return 0;
            }
            case Command::CD:
                out << serialize_report(cd_table(g, config), config.format);
                return 0;
            case Command::Scalar:
                out << serialize_report(scalar_table(g, config), config.format);
                return 0;
            case Command::Verify:
                return run_verify(g, config, out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace ricci
