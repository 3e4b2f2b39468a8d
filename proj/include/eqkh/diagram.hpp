#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace eqkh {

// One crossing: four arc labels counterclockwise from the incoming under-strand.
// Slot 0 is the incoming under-strand, slot 2 the outgoing one; slots 1,3 carry
// the over-strand. A +1 marker joins slots (0,1) and (2,3); a -1 marker joins
// (0,3) and (1,2).
struct crossing {
  std::array<int, 4> slot{};
};

// Planar link diagram, optionally annular (per-arc signed ray-crossing counts).
struct link_diagram {
  std::vector<crossing> crossings;
  int free_loops = 0;
  bool annular = false;
  std::map<int, int> arc_rays;   // arc label -> signed ray crossings, in scan direction
  std::map<int, int> loop_rays;  // free-loop index (0-based) -> signed ray crossings
  std::map<int, int> forced_dir; // construction-time orientation overrides

  // Derived by finalize():
  std::vector<int> arcs;                          // sorted distinct labels
  std::map<int, std::array<std::array<int, 2>, 2>> occ;  // arc -> two (crossing, slot), scan order
  std::map<int, int> arc_dir;                     // +1: arc flows first occurrence -> second
  bool orientable = false;

  int n() const { return static_cast<int>(crossings.size()); }
  void finalize();  // validates structure, computes occurrences and orientation
};

// Cyclic-group symmetry data: order p plus permutations of crossings, arc
// labels, and free loops that together form a diagram automorphism.
struct cyclic_action {
  int p = 1;
  std::vector<int> crossing_perm;
  std::map<int, int> arc_perm;
  std::vector<int> loop_perm;
};

struct orbit_diagram {
  link_diagram d;
  cyclic_action action;
};

// A Kauffman state's circles. Circles containing arcs come first, ordered by
// smallest contained arc; free loops follow in loop order.
struct resolution {
  std::vector<std::vector<int>> circles;  // arc labels in traversal order; empty for free loops
  std::map<int, int> arc_circle;          // arc label -> circle index
  std::vector<int> loop_circle;           // free-loop index -> circle index
  std::vector<int> winding;               // per circle (zero for non-annular diagrams)
  int sigma = 0;
};

link_diagram parse_diagram(const std::string& text);
orbit_diagram parse_orbit_diagram(const std::string& text);

// Resolves the state whose +1-marker set is plus_mask (bit v = crossing v).
resolution resolve(const link_diagram& d, std::uint32_t plus_mask);
resolution resolve(const link_diagram& d, const std::vector<int>& markers);

// Throws structure_error when the action is not an order-p automorphism.
void check_automorphism(const link_diagram& d, const cyclic_action& a);

std::vector<int> crossing_signs(const link_diagram& d);  // needs orientability
int writhe(const link_diagram& d);

// Open tangle: boundary arcs listed top-to-bottom on each side.
struct tangle {
  std::vector<crossing> crossings;
  std::vector<int> left, right;
  int free_loops = 0;
  // Flow metadata for generated tangles: per crossing, 1 where the strand
  // flows into the crossing at that slot. Needed for annular lifts.
  std::vector<std::array<int, 4>> slot_in;
};

tangle parse_tangle(const std::string& text);

// Glues p rotated copies of t (copy i's right boundary to copy i+1's left) and
// returns the diagram with the rotation action. With annular set, marks ray
// crossings on the copy p-1 -> copy 0 interface; this requires flow metadata
// and strands that cross that interface at most once.
orbit_diagram lift_fundamental_domain(const tangle& t, int p, bool annular = false);

// Removes crossing v by gluing its arcs per the marker's channels.
// Classical diagrams only; ray data does not survive surgery.
struct smoothing_result {
  link_diagram d;
  std::map<int, int> arc_map;   // surviving old arc -> new label (min of its glued chain)
  int new_loops = 0;            // circles closed up by the smoothing, appended as free loops
  std::vector<int> closed_chain_mins;  // smallest arc of each closed-up circle, in append order
};
smoothing_result smooth_crossing(const link_diagram& d, int v, int marker);

// Inserts a curl on the given arc; chirality +1 adds a positive crossing.
// The new crossing is appended last, the host arc keeps its label on the side
// of its first occurrence. Requires an orientable classical diagram.
struct kink_result {
  link_diagram d;
  int new_crossing = 0;
  int loop_arc = 0;          // the curl's little circle
  int continuation_arc = 0;  // fresh label for the host arc's other half
  int host_arc = 0;          // where the curl was inserted
  int chirality = 0;
};
kink_result add_kink(const link_diagram& d, int arc, int chirality);

// Adds one kink on every arc of the given arc's orbit and extends the action.
struct orbit_kink_result {
  orbit_diagram od;
  std::vector<kink_result> steps;  // one per orbit element, in insertion order
};
orbit_kink_result add_kink_orbit(const orbit_diagram& od, int arc, int chirality);

}  // namespace eqkh
