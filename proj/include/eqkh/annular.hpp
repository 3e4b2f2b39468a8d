#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eqkh/complex.hpp"
#include "eqkh/diagram.hpp"
#include "eqkh/equivariant.hpp"
#include "eqkh/khovanov.hpp"
#include "eqkh/table.hpp"

namespace eqkh {

// Enhanced-state complex of an annular diagram, graded by (framed p, framed q,
// essential-circle sign sum k). The differential keeps exactly the k-preserving
// terms of the framed differential.
struct annular_complex {
  link_diagram d;
  graded_complex cx{3, -1};
  std::map<grading, std::vector<std::uint64_t>> basis;  // sorted state codes
  std::vector<std::string> warnings;  // one per circle with |winding| >= 2
  int deleted_terms = 0;              // k-changing terms dropped

  int state_index(grading g, std::uint64_t code) const;  // -1 when absent
};

// Throws structure_error without ray data; caps as the classical builder.
annular_complex build_annular_complex(const link_diagram& d, int cap = 16);

struct annular_equivariant_result {
  annular_complex total;
  quotient_complex quot;
  homology_table homology;           // 3-graded, covering diagram
  homology_table quotient_homology;  // 3-graded equivariant table
  homology_table fixed_dims;
  std::vector<grading> mismatches;
};

// Orbit quotient of the annular complex; k is constant on orbits (validated).
annular_equivariant_result build_annular_equivariant(const orbit_diagram& od, int cap = 16,
                                                     bool allow_even_p = false, int jobs = 1);

}  // namespace eqkh
