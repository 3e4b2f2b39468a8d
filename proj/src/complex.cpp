#include "eqkh/complex.hpp"

#include <thread>
#include <vector>

#include "eqkh/errors.hpp"

namespace eqkh {

graded_complex::graded_complex(int arity, int step) : arity_(arity), step_(step) {
  if (arity < 1 || arity > 3) throw structure_error("grading arity must be 1..3");
  if (step != 1 && step != -1) throw structure_error("differential step must be +1 or -1");
}

void graded_complex::set_dim(grading g, int dim) {
  if (dim < 0) throw structure_error("negative dimension");
  if (dim == 0) { dims_.erase(g); return; }
  dims_[g] = dim;
}

void graded_complex::set_diff(grading g, f2_matrix m) {
  if (m.rows() != static_cast<std::size_t>(dim_at(next(g))) ||
      m.cols() != static_cast<std::size_t>(dim_at(g)))
    throw structure_error("differential block has the wrong shape");
  rank_cache_.erase(g);
  if (m.rows() == 0 || m.cols() == 0) { diff_.erase(g); return; }
  diff_[g] = std::move(m);
}

int graded_complex::dim_at(grading g) const {
  auto it = dims_.find(g);
  return it == dims_.end() ? 0 : it->second;
}

f2_matrix graded_complex::diff_at(grading g) const {
  auto it = diff_.find(g);
  if (it != diff_.end()) return it->second;
  return f2_matrix(dim_at(next(g)), dim_at(g));
}

int graded_complex::total_dim() const {
  int t = 0;
  for (auto& [g, d] : dims_) t += d;
  return t;
}

void graded_complex::check_d2() const {
  for (auto& [g, m] : diff_) {
    auto it = diff_.find(next(g));
    if (it == diff_.end()) continue;
    if (!it->second.multiply(m).is_zero())
      throw structure_error("the differential does not square to zero");
  }
}

int graded_complex::rank_out(grading g) const {
  auto it = diff_.find(g);
  if (it == diff_.end()) return 0;
  auto c = rank_cache_.find(g);
  if (c != rank_cache_.end()) return c->second;
  int r = static_cast<int>(rank(it->second));
  rank_cache_[g] = r;
  return r;
}

void graded_complex::fill_ranks(int jobs) const {
  std::vector<const std::pair<const grading, f2_matrix>*> todo;
  for (auto& kv : diff_)
    if (!rank_cache_.count(kv.first)) todo.push_back(&kv);
  if (todo.empty()) return;
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(todo.size())));
  std::vector<int> ranks(todo.size());
  if (jobs == 1) {
    for (std::size_t i = 0; i < todo.size(); ++i)
      ranks[i] = static_cast<int>(rank(todo[i]->second));
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < todo.size(); i += jobs)
          ranks[i] = static_cast<int>(rank(todo[i]->second));
      });
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < todo.size(); ++i) rank_cache_[todo[i]->first] = ranks[i];
}

std::map<grading, int> graded_complex::homology(int jobs) const {
  fill_ranks(jobs);
  std::map<grading, int> h;
  for (auto& [g, d] : dims_) {
    int v = d - rank_out(g) - rank_out(prev(g));
    if (v < 0) throw structure_error("rank bookkeeping produced a negative dimension");
    if (v > 0) h[g] = v;
  }
  return h;
}

f2_quotient graded_complex::homology_space(grading g) const {
  int d = dim_at(g);
  f2_subspace ker(static_cast<std::size_t>(d));
  for (auto& v : kernel_basis(diff_at(g))) ker.insert(v);
  f2_subspace im(static_cast<std::size_t>(d));
  for (auto& v : image_basis(diff_at(prev(g)))) im.insert(v);
  return f2_quotient(ker, im);
}

}  // namespace eqkh
