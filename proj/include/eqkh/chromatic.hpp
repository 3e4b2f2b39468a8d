#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eqkh/complex.hpp"
#include "eqkh/equivariant.hpp"
#include "eqkh/poly.hpp"
#include "eqkh/table.hpp"

namespace eqkh {

// Simple graph, optionally with a cyclic symmetry given as a vertex
// permutation. Endpoints are 0-based and distinct; edges are sorted pairs.
struct graph_input {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (a, b) with a < b, ascending, no repeats
  std::vector<int> aut;                    // vertex permutation; empty: no symmetry
  int p = 1;                               // declared cyclic order of aut

  int e() const { return static_cast<int>(edges.size()); }
};

// Text format: `V n` once, `E a b` per edge (1-based endpoints), optionally
// `AUT p: v1->w1, v2->w2, ...` ("→" is also accepted; vertices left out stay
// fixed). '#' starts a comment, '/' separates lines. Loops and repeated
// edges are rejected; the permutation must map edges to edges and satisfy
// aut^p = identity.
graph_input parse_graph(const std::string& text);

// The permutation induced on edge indices; throws when an edge image is not
// an edge of the graph.
std::vector<int> edge_permutation(const graph_input& g);

// Enhanced graph states are packed as edge-subset mask << 40 | label bits,
// one bit per connected component of the spanning subgraph, components
// ordered by their smallest vertex; a set bit labels the component x, a
// clear bit labels it 1. Gradings are (i, j) = (edges used, x labels).
struct graph_complex {
  graph_input g;
  graded_complex cx{2, 1};
  std::map<grading, std::vector<std::uint64_t>> basis;

  int state_index(grading gr, std::uint64_t code) const;  // -1 when absent
};

// Builds the chain complex of enhanced graph states. Adding an absent edge
// merges the endpoint components' labels with 1*1 = 1, 1*x = x, x*x = 0
// (term dropped) and keeps all labels when the edge closes a cycle, so the
// differential raises i by one and preserves j.
graph_complex build_graph_complex(const graph_input& g, int cap = 16);

// Transports a packed state along the graph symmetry: the edge subset moves
// by the induced edge permutation and every component carries its label onto
// its image component.
std::uint64_t transport_graph_state(const graph_input& g, std::uint64_t code);

// Compares the Euler characteristic of graph homology, rewritten at
// q = λ - 1, with the chromatic polynomial from deletion-contraction.
struct chromatic_check {
  laurent from_euler;   // Σ (-1)^i q^j dim H^{i,j} at q = λ - 1
  laurent from_delcon;  // independent recursion on the same graph
  bool match = false;
};
chromatic_check chromatic_euler_check(const graph_complex& gc);

struct graph_equivariant_result {
  graph_complex total;
  quotient_complex quot;
  homology_table homology;           // of the full complex
  homology_table quotient_homology;  // of the orbit quotient
  homology_table fixed_dims;         // fixed subspace of the action on homology
  std::vector<grading> mismatches;   // gradings where the last two differ
};
graph_equivariant_result build_graph_equivariant(const graph_input& g, int cap = 16,
                                                 bool allow_even_p = false, int jobs = 1);

}  // namespace eqkh
