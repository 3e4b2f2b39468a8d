#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "eqkh/complex.hpp"
#include "eqkh/diagram.hpp"
#include "eqkh/f2linalg.hpp"
#include "eqkh/khovanov.hpp"
#include "eqkh/poly.hpp"
#include "eqkh/table.hpp"

namespace eqkh {

// Image of an enhanced state under the diagram automorphism: the marker mask
// moves by the crossing permutation, circle signs follow the induced circle
// permutation.
std::uint64_t transport_state(const link_diagram& d, const cyclic_action& a,
                              std::uint64_t code);

using state_map = std::function<std::uint64_t(std::uint64_t)>;

// Orbit-class complex of a p-periodic complex, together with the chain-level
// maps tying it to the total complex. All matrices are per grading.
struct quotient_complex {
  int p = 1;
  graded_complex cx{2, 1};
  // Lexicographically minimal orbit members, sorted ascending.
  std::map<grading, std::vector<std::uint64_t>> reps;
  std::map<grading, f2_matrix> projection;  // states -> orbit classes
  std::map<grading, f2_matrix> transfer;    // orbit classes -> summed orbits
  std::map<grading, f2_matrix> action;      // the generator's state permutation

  int rep_index(grading g, std::uint64_t code) const;  // -1 when absent
};

// Builds orbit classes and the quotient differential (class of S maps to the
// projection of dS). Validates that transport permutes every graded basis
// bucket with orbit sizes dividing p and that the differential descends;
// throws structure_error otherwise.
quotient_complex build_quotient(const graded_complex& total,
                                const std::map<grading, std::vector<std::uint64_t>>& basis,
                                int p, const state_map& transport);

// Gradings where the action matrices fail to commute with the differential
// (empty for a genuine symmetry).
std::vector<grading> equivariance_violations(const graded_complex& total,
                                             const std::map<grading, f2_matrix>& action);

// Per-grading dimension of ker(phi* - id) on homology, phi* being the map the
// action induces on each homology space.
homology_table fixed_homology_dims(const graded_complex& total,
                                   const std::map<grading, f2_matrix>& action,
                                   int jobs = 1);

// Gradings at which two tables disagree (missing entries count as zero).
std::vector<grading> table_mismatches(const homology_table& a, const homology_table& b);

struct equivariant_result {
  khovanov_complex total;
  quotient_complex quot;
  homology_table homology;           // of the covering diagram
  homology_table quotient_homology;  // the equivariant table
  homology_table fixed_dims;         // fixed subspace of the induced action
  std::vector<grading> mismatches;   // gradings where the previous two differ
  laurent equivariant_jones;         // signed generating polynomial of the equivariant table
};

// Full pipeline on a symmetric diagram. Even group order requires the explicit
// override; the fixed-subspace comparison is then still reported through
// mismatches but carries no guarantee.
equivariant_result build_equivariant(const orbit_diagram& od, kh_flavor fl, int cap = 16,
                                     bool allow_even_p = false, int jobs = 1);

}  // namespace eqkh
