#include "riccigraph/families.hpp"

#include <random>
#include <sstream>
#include <vector>

#include "riccigraph/errors.hpp"

namespace ricci {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

long parse_long(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgumentError("bad " + what + " '" + s + "' in family spec");
    }
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw InvalidArgumentError("bad " + what + " '" + s + "' in family spec");
    }
}

std::string vlabel(long i) { return "v" + std::to_string(i); }

// Uniform in [0,1) from the raw generator; avoids the implementation-defined
// std::uniform_real_distribution so seeds reproduce across platforms.
double unit_double(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

Graph complete(long n) {
    GraphBuilder b;
    for (long i = 0; i < n; ++i) b.add_vertex(vlabel(i));
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j) b.add_edge(vlabel(i), vlabel(j));
    return b.build();
}

Graph cycle(long n) {
    if (n < 3) throw InvalidArgumentError("cycle needs n >= 3");
    GraphBuilder b;
    for (long i = 0; i < n; ++i) b.add_edge(vlabel(i), vlabel((i + 1) % n));
    return b.build();
}

Graph path(long n) {
    if (n < 2) throw InvalidArgumentError("path needs n >= 2");
    GraphBuilder b;
    for (long i = 0; i + 1 < n; ++i) b.add_edge(vlabel(i), vlabel(i + 1));
    return b.build();
}

Graph star(long leaves) {
    if (leaves < 1) throw InvalidArgumentError("star needs at least 1 leaf");
    GraphBuilder b;
    for (long i = 1; i <= leaves; ++i) b.add_edge(vlabel(0), vlabel(i));
    return b.build();
}

Graph random_tree(long n, unsigned long seed) {
    if (n < 1) throw InvalidArgumentError("tree needs n >= 1");
    GraphBuilder b;
    b.add_vertex(vlabel(0));
    std::mt19937_64 rng(seed);
    for (long i = 1; i < n; ++i) b.add_edge(vlabel(rng() % i), vlabel(i));
    return b.build();
}

Graph gnp(long n, double p, unsigned long seed) {
    if (n < 1) throw InvalidArgumentError("gnp needs n >= 1");
    if (p < 0.0 || p > 1.0) throw InvalidArgumentError("gnp needs p in [0,1]");
    GraphBuilder b;
    for (long i = 0; i < n; ++i) b.add_vertex(vlabel(i));
    std::mt19937_64 rng(seed);
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
            if (unit_double(rng) < p) b.add_edge(vlabel(i), vlabel(j));
    return b.build();
}

Graph regular_tree(long degree, long depth) {
    if (degree < 2) throw InvalidArgumentError("regular-tree needs degree >= 2");
    if (depth < 0) throw InvalidArgumentError("regular-tree needs depth >= 0");
    GraphBuilder b;
    b.add_vertex(vlabel(0));
    long next = 1;
    std::vector<long> frontier{0};
    for (long level = 0; level < depth; ++level) {
        std::vector<long> children;
        for (long u : frontier) {
            long fanout = (u == 0) ? degree : degree - 1;
            for (long c = 0; c < fanout; ++c) {
                b.add_edge(vlabel(u), vlabel(next));
                children.push_back(next++);
            }
        }
        frontier = std::move(children);
    }
    return b.build();
}

}  // namespace

Graph generate_family(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw InvalidArgumentError("empty family spec");
    const std::string& kind = parts[0];
    auto need = [&](std::size_t n) {
        if (parts.size() != n)
            throw InvalidArgumentError("family spec '" + spec + "' has wrong arity");
    };
    if (kind == "complete") {
        need(2);
        return complete(parse_long(parts[1], "vertex count"));
    }
    if (kind == "cycle") {
        need(2);
        return cycle(parse_long(parts[1], "vertex count"));
    }
    if (kind == "path") {
        need(2);
        return path(parse_long(parts[1], "vertex count"));
    }
    if (kind == "star") {
        need(2);
        return star(parse_long(parts[1], "leaf count"));
    }
    if (kind == "tree") {
        need(4);
        if (parts[1] != "random")
            throw InvalidArgumentError("unknown tree variant '" + parts[1] + "'");
        return random_tree(parse_long(parts[2], "vertex count"),
                           static_cast<unsigned long>(parse_long(parts[3], "seed")));
    }
    if (kind == "gnp") {
        need(4);
        return gnp(parse_long(parts[1], "vertex count"), parse_double(parts[2], "probability"),
                   static_cast<unsigned long>(parse_long(parts[3], "seed")));
    }
    if (kind == "regular-tree") {
        need(3);
        return regular_tree(parse_long(parts[1], "degree"), parse_long(parts[2], "depth"));
    }
    throw InvalidArgumentError("unknown family '" + kind + "'");
}

}  // namespace ricci
