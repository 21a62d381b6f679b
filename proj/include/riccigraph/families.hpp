#pragma once

#include <string>

#include "riccigraph/graph.hpp"

namespace ricci {

// Named graph families for test corpora and the CLI:
//   complete:n           K_n
//   cycle:n              C_n (n >= 3)
//   path:n               P_n (n >= 2)
//   star:n               center plus n leaves
//   tree:random:n:seed   random tree on n vertices
//   gnp:n:p:seed         Erdos-Renyi G(n,p)
//   regular-tree:d:depth d-regular tree truncated at the given depth
// Vertices are labeled v0..v{n-1}; generation is deterministic per seed.
Graph generate_family(const std::string& spec);

}  // namespace ricci
