#include "riccigraph/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "riccigraph/errors.hpp"

namespace ricci {

const std::string& Graph::label(int v) const {
    check_vertex(v);
    return labels_[v];
}

std::optional<int> Graph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int Graph::vertex(const std::string& label) const {
    auto idx = index_of(label);
    if (!idx) throw InvalidArgumentError("unknown vertex label '" + label + "'");
    return *idx;
}

std::span<const Neighbor> Graph::neighbors(int v) const {
    check_vertex(v);
    return adj_[v];
}

bool Graph::adjacent(int u, int v) const { return edge_weight(u, v).has_value(); }

std::optional<Rat> Graph::edge_weight(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& list = adj_[u];
    auto it = std::lower_bound(list.begin(), list.end(), v,
                               [](const Neighbor& n, int key) { return n.to < key; });
    if (it == list.end() || it->to != v) return std::nullopt;
    return it->weight;
}

int Graph::neighbor_count(int v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
}

const Rat& Graph::weighted_degree(int v) const {
    check_vertex(v);
    return degree_[v];
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < vertex_count(); ++u)
        for (const Neighbor& n : adj_[u])
            if (u < n.to) out.emplace_back(u, n.to);
    return out;
}

bool Graph::operator==(const Graph& other) const {
    if (weighted_ != other.weighted_ || vertex_count() != other.vertex_count() ||
        edge_count_ != other.edge_count_)
        return false;
    for (const auto& label : labels_)
        if (!other.index_.count(label)) return false;
    for (int u = 0; u < vertex_count(); ++u) {
        auto ou = other.index_.find(labels_[u]);
        for (const Neighbor& n : adj_[u]) {
            auto w = other.edge_weight(ou->second, other.vertex(labels_[n.to]));
            if (!w || *w != n.weight) return false;
        }
    }
    return true;
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= vertex_count())
        throw InvalidArgumentError("vertex index " + std::to_string(v) + " out of range");
}

int GraphBuilder::add_vertex(const std::string& label) {
    auto it = index_.find(label);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(labels_.size());
    index_.emplace(label, id);
    labels_.push_back(label);
    adj_.emplace_back();
    return id;
}

void GraphBuilder::add_edge(const std::string& u, const std::string& v, const Rat& weight) {
    int ui = add_vertex(u);
    int vi = add_vertex(v);
    add_edge(ui, vi, weight);
}

void GraphBuilder::add_edge(int u, int v, const Rat& weight) {
    if (u < 0 || v < 0 || u >= static_cast<int>(adj_.size()) || v >= static_cast<int>(adj_.size()))
        throw InvalidArgumentError("edge endpoint out of range");
    if (u == v) throw LoopError("loop at vertex '" + labels_[u] + "'");
    if (weight <= 0)
        throw NonpositiveWeightError("edge '" + labels_[u] + "'-'" + labels_[v] +
                                     "' has nonpositive weight " + rat_to_string(weight));
    if (!weighted_ && weight != 1)
        throw InvalidArgumentError("non-unit weight on unweighted graph");
    for (const Neighbor& n : adj_[u])
        if (n.to == v)
            throw DuplicateEdgeError("duplicate edge '" + labels_[u] + "'-'" + labels_[v] + "'");
    adj_[u].push_back({v, weight});
    adj_[v].push_back({u, weight});
    ++edge_count_;
}

Graph GraphBuilder::build() {
    Graph g;
    g.weighted_ = weighted_;
    g.labels_ = labels_;
    g.index_ = index_;
    g.adj_ = adj_;
    g.edge_count_ = edge_count_;
    for (auto& list : g.adj_)
        std::sort(list.begin(), list.end(),
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
    g.degree_.resize(g.adj_.size(), Rat(0));
    for (std::size_t v = 0; v < g.adj_.size(); ++v)
        for (const Neighbor& n : g.adj_[v]) g.degree_[v] += n.weight;
    return g;
}

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

}  // namespace

Graph load_edge_list(std::istream& in, bool weighted) {
    GraphBuilder builder(weighted);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        try {
            if (tokens.size() == 1) {
                builder.add_vertex(tokens[0]);
            } else if (tokens.size() == 2) {
                builder.add_edge(tokens[0], tokens[1], Rat(1));
            } else if (tokens.size() == 3) {
                if (!weighted)
                    throw InvalidArgumentError("weight given but graph loaded as unweighted");
                builder.add_edge(tokens[0], tokens[1], rat_from_string(tokens[2]));
            } else {
                throw InvalidArgumentError("expected 'u v' or 'u v w'");
            }
        } catch (const DuplicateEdgeError&) {
            throw;
        } catch (const LoopError&) {
            throw;
        } catch (const NonpositiveWeightError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return builder.build();
}

Graph load_edge_list(const std::string& text, bool weighted) {
    std::istringstream in(text);
    return load_edge_list(in, weighted);
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    std::vector<bool> covered(g.vertex_count(), false);
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (const Neighbor& n : g.neighbors(u)) {
            if (u >= n.to) continue;
            covered[u] = covered[n.to] = true;
            out << g.label(u) << ' ' << g.label(n.to);
            if (g.is_weighted()) out << ' ' << rat_to_string(n.weight);
            out << '\n';
        }
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!covered[v] && g.neighbor_count(v) == 0) out << g.label(v) << '\n';
    return out.str();
}

std::optional<int> hop_distance(const Graph& g, int x, int y, std::optional<int> cap) {
    g.check_vertex(x);
    g.check_vertex(y);
    if (x == y) return 0;
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<int> queue{x};
    dist[x] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (cap && dist[u] >= *cap) break;
        for (const Neighbor& n : g.neighbors(u)) {
            if (dist[n.to] >= 0) continue;
            dist[n.to] = dist[u] + 1;
            if (n.to == y) return dist[n.to];
            queue.push_back(n.to);
        }
    }
    return std::nullopt;
}

std::vector<int> ball(const Graph& g, int x, int r) {
    g.check_vertex(x);
    if (r < 0) throw InvalidArgumentError("ball radius must be >= 0");
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<int> queue{x};
    dist[x] = 0;
    std::vector<int> members{x};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (dist[u] >= r) continue;
        for (const Neighbor& n : g.neighbors(u)) {
            if (dist[n.to] >= 0) continue;
            dist[n.to] = dist[u] + 1;
            members.push_back(n.to);
            queue.push_back(n.to);
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

long triangle_count(const Graph& g, int x, int y) {
    if (!g.adjacent(x, y))
        throw NotAdjacentError("vertices '" + g.label(x) + "' and '" + g.label(y) +
                               "' are not adjacent");
    auto a = g.neighbors(x);
    auto b = g.neighbors(y);
    long count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].to < b[j].to)
            ++i;
        else if (a[i].to > b[j].to)
            ++j;
        else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

Rat clustering_coefficient(const Graph& g, int x) {
    long d = g.neighbor_count(x);
    if (d < 2)
        throw DegreeError("clustering coefficient undefined at '" + g.label(x) +
                          "' (needs at least 2 neighbors)");
    long triangles = 0;
    for (const Neighbor& n : g.neighbors(x)) triangles += triangle_count(g, x, n.to);
    return Rat(triangles) / Rat(d * (d - 1));
}

DegreeSummary degree_summary(const Graph& g) {
    DegreeSummary s;
    int n = g.vertex_count();
    s.d.reserve(n);
    s.max_neighbor_degree.assign(n, Rat(0));
    s.max_neighbor_degree_weighted.assign(n, Rat(0));
    for (int v = 0; v < n; ++v) {
        if (g.neighbor_count(v) == 0)
            throw IsolatedVertexError("vertex '" + g.label(v) +
                                      "' is isolated; its random-walk measure is undefined");
        s.d.push_back(g.weighted_degree(v));
    }
    for (int v = 0; v < n; ++v) {
        for (const Neighbor& n2 : g.neighbors(v)) {
            s.max_neighbor_degree[v] = rat_max(s.max_neighbor_degree[v], s.d[n2.to]);
            s.max_neighbor_degree_weighted[v] =
                rat_max(s.max_neighbor_degree_weighted[v], Rat(s.d[n2.to] / n2.weight));
        }
    }
    return s;
}

std::vector<int> component_ids(const Graph& g) {
    std::vector<int> comp(g.vertex_count(), -1);
    int next = 0;
    for (int start = 0; start < g.vertex_count(); ++start) {
        if (comp[start] >= 0) continue;
        comp[start] = next;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (const Neighbor& n : g.neighbors(u))
                if (comp[n.to] < 0) {
                    comp[n.to] = next;
                    queue.push_back(n.to);
                }
        }
        ++next;
    }
    return comp;
}

std::vector<std::vector<int>> connected_components(const Graph& g) {
    auto comp = component_ids(g);
    int blocks = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<int>> out(blocks);
    for (int v = 0; v < g.vertex_count(); ++v) out[comp[v]].push_back(v);
    return out;
}

bool same_component(const Graph& g, int x, int y) {
    g.check_vertex(x);
    g.check_vertex(y);
    return hop_distance(g, x, y).has_value();
}

}  // namespace ricci
