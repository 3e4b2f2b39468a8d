#pragma once

#include <map>
#include <utility>
#include <vector>

#include "eqkh/chromatic.hpp"
#include "eqkh/complex.hpp"
#include "eqkh/diagram.hpp"
#include "eqkh/khovanov.hpp"
#include "eqkh/poly.hpp"

namespace eqkh {

// Cross-checking paths that share no elimination or traversal code with the
// main pipeline: circle counts use union-find, ranks use dense bytes, orbit
// counts use the averaging formula.

// State sum in the variable A with unreduced loop weight -A^2 - A^-2 and
// marker weight (-A)^(marker sum).
laurent bracket_statesum(const link_diagram& d);

// Normalizes the state sum by the writhe and rewrites it in q. The result
// equals the graded Euler characteristic of the oriented complex.
laurent jones_from_bracket(const laurent& bracket, int writhe);

struct multigraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based; loops and multi-edges allowed
};

// Chromatic polynomial in λ by memoized deletion-contraction.
laurent chromatic_polynomial(const multigraph& g);

// Homology dimensions recomputed with plain byte-matrix elimination.
// Throws cap_error when any block side exceeds max_block.
std::map<grading, int> dense_homology(const graded_complex& cx, int max_block = 512);

// Orbit counts of enhanced states per grading under the cyclic action,
// via fixed-point averaging over the group. with_k adds the annular weight
// as a third grading axis.
std::map<grading, int> burnside_quotient_dims(const orbit_diagram& od, kh_flavor fl,
                                              int cap = 16, bool with_k = false);

// Orbit counts of enhanced graph states per (i, j) under the vertex
// permutation, via the same averaging formula.
std::map<grading, int> burnside_graph_dims(const graph_input& g, int cap = 16);

}  // namespace eqkh
