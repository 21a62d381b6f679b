#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "riccigraph/rational.hpp"

namespace ricci {

struct Neighbor {
    int to;
    Rat weight;
};

// Immutable undirected simple weighted graph. Adjacency lists are sorted by
// neighbor index; every edge is stored in both directions with equal weight.
// Unweighted graphs carry weight 1 on every edge. Safe to share across threads.
class Graph {
public:
    int vertex_count() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    bool is_weighted() const { return weighted_; }

    const std::string& label(int v) const;
    std::optional<int> index_of(const std::string& label) const;
    // Like index_of but throws InvalidArgumentError on unknown labels.
    int vertex(const std::string& label) const;

    std::span<const Neighbor> neighbors(int v) const;
    bool adjacent(int u, int v) const;
    std::optional<Rat> edge_weight(int u, int v) const;

    // Number of neighbors (the combinatorial degree).
    int neighbor_count(int v) const;
    // d_x = sum of incident edge weights; equals neighbor_count on unweighted graphs.
    const Rat& weighted_degree(int v) const;

    // Edges as (u, v) pairs with u < v.
    std::vector<std::pair<int, int>> edges() const;

    // Label-keyed comparison: same label set, same weighted flag, same
    // labeled edges with equal weights. Internal index order is irrelevant.
    bool operator==(const Graph& other) const;

    void check_vertex(int v) const;

private:
    friend class GraphBuilder;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<Neighbor>> adj_;
    std::vector<Rat> degree_;
    std::size_t edge_count_ = 0;
    bool weighted_ = false;
};

class GraphBuilder {
public:
    explicit GraphBuilder(bool weighted = false) : weighted_(weighted) {}

    int add_vertex(const std::string& label);
    void add_edge(const std::string& u, const std::string& v, const Rat& weight = Rat(1));
    void add_edge(int u, int v, const Rat& weight = Rat(1));

    Graph build();

private:
    bool weighted_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<Neighbor>> adj_;
    std::size_t edge_count_ = 0;
};

// Text edge-list format: one edge per line, "u v" or (weighted) "u v w" with w a
// positive decimal or "p/q" literal; a single token declares an isolated vertex;
// '#' starts a comment. Labels are bound to indices in first-seen order.
Graph load_edge_list(std::istream& in, bool weighted);
Graph load_edge_list(const std::string& text, bool weighted);
std::string serialize_edge_list(const Graph& g);

// Shortest-path edge count; weights never enter the metric. nullopt when y is
// unreachable from x or further than cap.
std::optional<int> hop_distance(const Graph& g, int x, int y,
                                std::optional<int> cap = std::nullopt);

// Closed ball { y : d(x,y) <= r }, sorted by index.
std::vector<int> ball(const Graph& g, int x, int r);

// Number of common neighbors of adjacent x, y.
long triangle_count(const Graph& g, int x, int y);

// Fraction of realized edges among the neighbors of x; needs >= 2 neighbors.
Rat clustering_coefficient(const Graph& g, int x);

struct DegreeSummary {
    std::vector<Rat> d;    // weighted degree
    std::vector<Rat> max_neighbor_degree;          // D(x)  = max_{y~x} d_y
    std::vector<Rat> max_neighbor_degree_weighted; // D_w(x) = max_{y~x} d_y / w_yx
};

DegreeSummary degree_summary(const Graph& g);

std::vector<std::vector<int>> connected_components(const Graph& g);
// Component id per vertex, ids assigned in order of lowest contained index.
std::vector<int> component_ids(const Graph& g);
bool same_component(const Graph& g, int x, int y);

}  // namespace ricci
