#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace eqkh {

// Bit-packed vector over GF(2).
class f2_vector {
 public:
  f2_vector() = default;
  explicit f2_vector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  f2_vector& operator^=(const f2_vector& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend f2_vector operator^(f2_vector a, const f2_vector& b) { a ^= b; return a; }

  bool is_zero() const {
    for (auto w : w_) if (w) return false;
    return true;
  }
  // Lowest set index, if any; used as the pivot of an echelon row.
  std::optional<std::size_t> leading() const;
  std::size_t popcount() const;
  bool operator==(const f2_vector&) const = default;

  static bool dot(const f2_vector& a, const f2_vector& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Matrix over GF(2); rows are bit-packed. Acts on column vectors: y = m * x.
class f2_matrix {
 public:
  f2_matrix() = default;
  f2_matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), r_(rows, f2_vector(cols)) {}

  static f2_matrix identity(std::size_t n);
  // Builds from (row, col) positions; duplicate positions cancel mod 2.
  static f2_matrix from_entries(std::size_t rows, std::size_t cols,
                                const std::vector<std::pair<std::size_t, std::size_t>>& ones);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return r_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { r_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { r_[r].flip(c); }
  const f2_vector& row(std::size_t r) const { return r_[r]; }
  f2_vector col(std::size_t c) const;

  f2_vector apply(const f2_vector& x) const;
  f2_matrix multiply(const f2_matrix& o) const;
  f2_matrix transpose() const;
  f2_matrix add(const f2_matrix& o) const;
  bool is_zero() const;
  bool operator==(const f2_matrix&) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<f2_vector> r_;
};

std::size_t rank(const f2_matrix& m);
// Basis of {x : m x = 0}; dimension = cols - rank.
std::vector<f2_vector> kernel_basis(const f2_matrix& m);
// Echelon basis of the column space; dimension = rank.
std::vector<f2_vector> image_basis(const f2_matrix& m);

// Subspace maintained in reduced row-echelon form with strictly increasing pivots.
class f2_subspace {
 public:
  explicit f2_subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}
  static f2_subspace span(std::size_t ambient_dim, const std::vector<f2_vector>& gens);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  // Inserts v's residual if independent; returns whether the dimension grew.
  bool insert(f2_vector v);
  // Canonical residual of v modulo the subspace (zero iff v is a member).
  f2_vector reduce(f2_vector v) const;
  bool contains(const f2_vector& v) const { return reduce(v).is_zero(); }
  bool contains(const f2_subspace& o) const;
  const std::vector<f2_vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool operator==(const f2_subspace&) const = default;

 private:
  std::size_t ambient_;
  std::vector<f2_vector> basis_;    // reduced echelon rows
  std::vector<std::size_t> pivots_; // strictly increasing
};

// Coset-representative basis for big/sub, with direct coordinate extraction.
// Representatives are reduced modulo sub and have pairwise distinct leading bits.
class f2_quotient {
 public:
  // Requires sub to be contained in big (checked).
  f2_quotient(const f2_subspace& big, const f2_subspace& sub);

  std::size_t dim() const { return reps_.size(); }
  const std::vector<f2_vector>& representatives() const { return reps_; }
  const f2_subspace& sub() const { return sub_; }
  // Coordinates of v's coset in the representative basis; rejects v outside big + sub.
  f2_vector coordinates(const f2_vector& v) const;

 private:
  f2_subspace sub_;
  std::vector<f2_vector> reps_;      // ascending leading bits
  std::vector<std::size_t> leads_;
};

// Coset representatives extending sub's basis to big's (the quotient dimension count).
std::vector<f2_vector> quotient_basis(const f2_subspace& sub, const f2_subspace& big);

// Matrix of the map induced by m between quotients dom and cod, in their
// representative bases. Rejects maps that do not preserve the filtration.
f2_matrix matrix_of_map_on_quotient(const f2_matrix& m, const f2_quotient& dom,
                                    const f2_quotient& cod);

}  // namespace eqkh
