#pragma once

#include <random>
#include <utility>
#include <vector>

#include "eqkh/diagram.hpp"

namespace eqkh::gen {

// Tangle of a braid word on the given strands; letter +i (resp. -i) is the
// positive (negative) crossing of strands i, i+1, all strands flowing
// left to right. Flow metadata is filled in, so the result lifts annularly.
tangle braid_tangle(int strands, const std::vector<int>& word);

// Trace closure of the braid word as a classical diagram.
link_diagram braid_closure(int strands, const std::vector<int>& word);

// Gluing of p rotated copies of the braid word, with the rotation action.
orbit_diagram braid_lift(int strands, const std::vector<int>& word, int p,
                         bool annular = false);

std::vector<int> random_word(std::mt19937& rng, int strands, int length);

struct graph_edges {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 1-based endpoints, first < second
};

// Every connected simple graph on 1..max_vertices labeled vertices.
std::vector<graph_edges> connected_graphs(int max_vertices);

// The n-cycle (n >= 3), vertices 1..n.
graph_edges cycle_graph(int n);

}  // namespace eqkh::gen
