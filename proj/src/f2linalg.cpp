#include "eqkh/f2linalg.hpp"

#include <algorithm>
#include <bit>

#include "eqkh/errors.hpp"

namespace eqkh {

std::optional<std::size_t> f2_vector::leading() const {
  for (std::size_t k = 0; k * 64 < n_; ++k)
    if (w_[k]) return k * 64 + std::countr_zero(w_[k]);
  return std::nullopt;
}

std::size_t f2_vector::popcount() const {
  std::size_t c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

bool f2_vector::dot(const f2_vector& a, const f2_vector& b) {
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < a.w_.size(); ++k) acc ^= a.w_[k] & b.w_[k];
  return std::popcount(acc) & 1;
}

f2_matrix f2_matrix::identity(std::size_t n) {
  f2_matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

f2_matrix f2_matrix::from_entries(std::size_t rows, std::size_t cols,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& ones) {
  f2_matrix m(rows, cols);
  for (auto& [r, c] : ones) m.flip(r, c);
  return m;
}

f2_vector f2_matrix::col(std::size_t c) const {
  f2_vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.set(r, get(r, c));
  return v;
}

f2_vector f2_matrix::apply(const f2_vector& x) const {
  f2_vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) y.set(r, f2_vector::dot(r_[r], x));
  return y;
}

f2_matrix f2_matrix::multiply(const f2_matrix& o) const {
  f2_matrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    f2_vector acc(o.cols_);
    const f2_vector& row = r_[r];
    for (std::size_t j = 0; j < cols_; ++j)
      if (row.get(j)) acc ^= o.r_[j];
    out.r_[r] = acc;
  }
  return out;
}

f2_matrix f2_matrix::transpose() const {
  f2_matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) out.set(c, r, true);
  return out;
}

f2_matrix f2_matrix::add(const f2_matrix& o) const {
  f2_matrix out = *this;
  for (std::size_t r = 0; r < rows_; ++r) out.r_[r] ^= o.r_[r];
  return out;
}

bool f2_matrix::is_zero() const {
  for (auto& row : r_)
    if (!row.is_zero()) return false;
  return true;
}

namespace {

// Reduced row echelon form of the rows; returns echelon rows + their pivots.
struct echelon {
  std::vector<f2_vector> rows;
  std::vector<std::size_t> pivots;

  // Fully reduces v by the current rows (single ascending pass).
  f2_vector reduce(f2_vector v) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (v.get(pivots[i])) v ^= rows[i];
    return v;
  }

  bool insert(f2_vector v) {
    v = reduce(v);
    auto lead = v.leading();
    if (!lead) return false;
    for (auto& row : rows)
      if (row.get(*lead)) row ^= v;
    auto pos = std::lower_bound(pivots.begin(), pivots.end(), *lead) - pivots.begin();
    pivots.insert(pivots.begin() + pos, *lead);
    rows.insert(rows.begin() + pos, std::move(v));
    return true;
  }
};

echelon row_echelon(const f2_matrix& m) {
  echelon e;
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e;
}

}  // namespace

std::size_t rank(const f2_matrix& m) { return row_echelon(m).rows.size(); }

std::vector<f2_vector> kernel_basis(const f2_matrix& m) {
  echelon e = row_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<f2_vector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    f2_vector v(m.cols());
    v.set(f, true);
    for (std::size_t i = 0; i < e.rows.size(); ++i)
      if (e.rows[i].get(f)) v.set(e.pivots[i], true);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<f2_vector> image_basis(const f2_matrix& m) {
  f2_subspace s(m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) s.insert(m.col(c));
  return s.basis();
}

f2_subspace f2_subspace::span(std::size_t ambient_dim, const std::vector<f2_vector>& gens) {
  f2_subspace s(ambient_dim);
  for (auto& g : gens) s.insert(g);
  return s;
}

bool f2_subspace::insert(f2_vector v) {
  v = reduce(std::move(v));
  auto lead = v.leading();
  if (!lead) return false;
  for (auto& row : basis_)
    if (row.get(*lead)) row ^= v;
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), *lead) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, *lead);
  basis_.insert(basis_.begin() + pos, std::move(v));
  return true;
}

f2_vector f2_subspace::reduce(f2_vector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i])) v ^= basis_[i];
  return v;
}

bool f2_subspace::contains(const f2_subspace& o) const {
  for (auto& row : o.basis_)
    if (!contains(row)) return false;
  return true;
}

f2_quotient::f2_quotient(const f2_subspace& big, const f2_subspace& sub) : sub_(sub) {
  if (!big.contains(sub)) throw structure_error("quotient: sub is not contained in big");
  for (auto& b : big.basis()) {
    f2_vector r = sub_.reduce(b);
    for (std::size_t k = 0; k < reps_.size(); ++k)
      if (r.get(leads_[k])) r ^= reps_[k];
    auto lead = r.leading();
    if (!lead) continue;
    auto pos = std::lower_bound(leads_.begin(), leads_.end(), *lead) - leads_.begin();
    leads_.insert(leads_.begin() + pos, *lead);
    reps_.insert(reps_.begin() + pos, std::move(r));
  }
}

f2_vector f2_quotient::coordinates(const f2_vector& v) const {
  f2_vector r = sub_.reduce(v);
  f2_vector c(reps_.size());
  for (std::size_t k = 0; k < reps_.size(); ++k)
    if (r.get(leads_[k])) {
      c.set(k, true);
      r ^= reps_[k];
    }
  if (!r.is_zero()) throw structure_error("quotient coordinates: vector outside the space");
  return c;
}

std::vector<f2_vector> quotient_basis(const f2_subspace& sub, const f2_subspace& big) {
  return f2_quotient(big, sub).representatives();
}

f2_matrix matrix_of_map_on_quotient(const f2_matrix& m, const f2_quotient& dom,
                                    const f2_quotient& cod) {
  for (auto& b : dom.sub().basis())
    if (!cod.sub().contains(m.apply(b)))
      throw structure_error("induced map: boundaries are not preserved");
  f2_matrix out(cod.dim(), dom.dim());
  for (std::size_t k = 0; k < dom.dim(); ++k) {
    f2_vector y = cod.coordinates(m.apply(dom.representatives()[k]));
    for (std::size_t r = 0; r < cod.dim(); ++r) out.set(r, k, y.get(r));
  }
  return out;
}

}  // namespace eqkh
