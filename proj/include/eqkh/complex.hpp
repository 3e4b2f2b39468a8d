#pragma once

#include <array>
#include <map>

#include "eqkh/f2linalg.hpp"

namespace eqkh {

// Grading tuple; unused trailing axes stay zero.
using grading = std::array<int, 3>;

// GF(2) chain complex graded by up to three integers. The differential moves
// axis 0 by `step` (+1 cohomological, -1 homological) and fixes the rest.
class graded_complex {
 public:
  graded_complex(int arity, int step);

  int arity() const { return arity_; }
  int step() const { return step_; }
  grading next(grading g) const { g[0] += step_; return g; }
  grading prev(grading g) const { g[0] -= step_; return g; }

  void set_dim(grading g, int dim);
  void set_diff(grading g, f2_matrix m);  // shape dim(next(g)) x dim(g)

  int dim_at(grading g) const;
  f2_matrix diff_at(grading g) const;  // zero matrix when none was set
  const std::map<grading, int>& dims() const { return dims_; }
  int total_dim() const;

  void check_d2() const;  // throws structure_error when d∘d ≠ 0

  // Homology dimensions per grading (nonzero entries only). jobs > 1 computes
  // ranks concurrently; the result does not depend on the width.
  std::map<grading, int> homology(int jobs = 1) const;

  // ker(d out of g) / im(d into g), with explicit coset representatives.
  f2_quotient homology_space(grading g) const;

 private:
  int rank_out(grading g) const;  // cached rank of the boundary leaving g
  void fill_ranks(int jobs) const;

  int arity_;
  int step_;
  std::map<grading, int> dims_;
  std::map<grading, f2_matrix> diff_;
  mutable std::map<grading, int> rank_cache_;
};

}  // namespace eqkh
