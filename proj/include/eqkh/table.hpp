#pragma once

#include <map>
#include <string>
#include <vector>

#include "eqkh/complex.hpp"
#include "eqkh/poly.hpp"

namespace eqkh {

// Nonzero graded dimensions, entries in lexicographic ascending order.
struct homology_table {
  int arity = 2;
  std::vector<std::pair<grading, int>> entries;
  bool operator==(const homology_table&) const = default;
};

homology_table make_table(const std::map<grading, int>& dims, int arity);

// "(0,1):1 (0,-1):1": first axis ascending, later axes descending.
std::string format_table(const homology_table& t);

// {"arity":2,"entries":[{"gradings":[0,-1],"dim":1},...]} ascending; round-trips.
std::string format_json(const homology_table& t);
homology_table parse_table_json(const std::string& text);

// Σ (-1)^{g0} q^{g1} dim over the table's gradings.
laurent euler_polynomial(const std::map<grading, int>& dims);

}  // namespace eqkh
