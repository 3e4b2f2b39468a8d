#include "eqkh/equivariant.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "eqkh/errors.hpp"

namespace eqkh {

namespace {

int find_code(const std::vector<std::uint64_t>& codes, std::uint64_t code) {
  auto it = std::lower_bound(codes.begin(), codes.end(), code);
  if (it == codes.end() || *it != code) return -1;
  return static_cast<int>(it - codes.begin());
}

struct orbit_info {
  std::vector<std::uint64_t> reps;  // ascending, since buckets are sorted
  std::vector<int> rep_col;         // basis index of each representative
  std::vector<int> class_of;        // basis index -> representative position
  std::vector<int> orbit_size;
};

orbit_info orbits_of_bucket(const std::vector<std::uint64_t>& codes, int p,
                            const state_map& transport) {
  orbit_info o;
  const int n = static_cast<int>(codes.size());
  o.class_of.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (o.class_of[s] >= 0) continue;
    const int cls = static_cast<int>(o.reps.size());
    o.class_of[s] = cls;
    int m = 1;
    std::uint64_t cur = codes[s];
    for (int k = 1; k <= p; ++k) {
      cur = transport(cur);
      if (cur == codes[s]) break;
      const int idx = find_code(codes, cur);
      if (idx < 0) throw structure_error("state transport leaves its grading");
      if (o.class_of[idx] >= 0) throw structure_error("state transport is not a permutation");
      o.class_of[idx] = cls;
      ++m;
    }
    if (cur != codes[s]) throw structure_error("transport orbit does not close in p steps");
    if (p % m != 0) throw structure_error("orbit size does not divide the group order");
    o.reps.push_back(codes[s]);
    o.rep_col.push_back(s);
    o.orbit_size.push_back(m);
  }
  return o;
}

}  // namespace

std::uint64_t transport_state(const link_diagram& d, const cyclic_action& a,
                              std::uint64_t code) {
  const std::uint32_t mask = state_mask(code);
  std::uint32_t mask2 = 0;
  for (int v = 0; v < d.n(); ++v)
    if (mask >> v & 1) mask2 |= std::uint32_t{1} << a.crossing_perm[v];
  const resolution r = resolve(d, mask);
  const resolution r2 = resolve(d, mask2);
  if (r2.circles.size() != r.circles.size())
    throw structure_error("action does not preserve the circle count");
  std::vector<int> loop_of(r.circles.size(), -1);
  for (std::size_t l = 0; l < r.loop_circle.size(); ++l)
    loop_of[r.loop_circle[l]] = static_cast<int>(l);
  const std::uint64_t signs = state_signs(code);
  std::uint64_t signs2 = 0;
  std::uint64_t seen = 0;
  for (std::size_t c = 0; c < r.circles.size(); ++c) {
    int img;
    if (!r.circles[c].empty())
      img = r2.arc_circle.at(a.arc_perm.at(r.circles[c].front()));
    else
      img = r2.loop_circle[a.loop_perm[loop_of[c]]];
    if (seen >> img & 1) throw structure_error("action does not permute the state circles");
    seen |= std::uint64_t{1} << img;
    if (signs >> c & 1) signs2 |= std::uint64_t{1} << img;
  }
  return pack_state(mask2, signs2);
}

int quotient_complex::rep_index(grading g, std::uint64_t code) const {
  auto it = reps.find(g);
  if (it == reps.end()) return -1;
  return find_code(it->second, code);
}

quotient_complex build_quotient(const graded_complex& total,
                                const std::map<grading, std::vector<std::uint64_t>>& basis,
                                int p, const state_map& transport) {
  if (p < 1) throw structure_error("group order must be at least 1");
  for (const auto& [g, dim] : total.dims()) {
    auto it = basis.find(g);
    if ((it == basis.end() ? 0 : static_cast<int>(it->second.size())) != dim)
      throw structure_error("state basis does not match the chain dimensions");
  }

  quotient_complex out;
  out.p = p;
  out.cx = graded_complex(total.arity(), total.step());

  std::map<grading, orbit_info> info;
  for (const auto& [g, codes] : basis) {
    if (codes.empty()) continue;
    if (!std::is_sorted(codes.begin(), codes.end()))
      throw structure_error("state bucket is not sorted");
    info.emplace(g, orbits_of_bucket(codes, p, transport));
  }

  for (const auto& [g, o] : info) {
    const auto& codes = basis.at(g);
    const int n = static_cast<int>(codes.size());
    const int r = static_cast<int>(o.reps.size());
    out.reps[g] = o.reps;
    out.cx.set_dim(g, r);

    std::vector<std::pair<std::size_t, std::size_t>> proj;
    std::vector<std::pair<std::size_t, std::size_t>> act;
    for (int s = 0; s < n; ++s) {
      proj.emplace_back(o.class_of[s], s);
      const int img = find_code(codes, transport(codes[s]));
      act.emplace_back(img, s);
    }
    out.projection[g] = f2_matrix::from_entries(r, n, proj);
    out.action[g] = f2_matrix::from_entries(n, n, act);

    f2_matrix t(n, r);
    for (int s = 0; s < n; ++s) {
      const int cls = o.class_of[s];
      if ((p / o.orbit_size[cls]) % 2 != 0) t.set(s, cls, true);
    }
    out.transfer[g] = std::move(t);
  }

  if (!equivariance_violations(total, out.action).empty())
    throw structure_error("action does not commute with the differential");

  for (const auto& [g, o] : info) {
    const grading h = total.next(g);
    const auto next = info.find(h);
    if (next == info.end()) continue;
    const orbit_info& on = next->second;
    const f2_matrix d = total.diff_at(g);
    std::vector<std::pair<std::size_t, std::size_t>> ones;
    for (std::size_t c = 0; c < o.reps.size(); ++c) {
      const auto col = static_cast<std::size_t>(o.rep_col[c]);
      for (std::size_t row = 0; row < d.rows(); ++row)
        if (d.get(row, col)) ones.emplace_back(on.class_of[row], c);
    }
    f2_matrix dbar = f2_matrix::from_entries(on.reps.size(), o.reps.size(), ones);
    if (out.projection.at(h).multiply(d) != dbar.multiply(out.projection.at(g)))
      throw structure_error("differential does not descend to the orbit classes");
    out.cx.set_diff(g, std::move(dbar));
  }
  return out;
}

std::vector<grading> equivariance_violations(const graded_complex& total,
                                             const std::map<grading, f2_matrix>& action) {
  std::vector<grading> bad;
  for (const auto& [g, dim] : total.dims()) {
    if (dim == 0 || total.dim_at(total.next(g)) == 0) continue;
    const auto ag = action.find(g);
    const auto ah = action.find(total.next(g));
    if (ag == action.end() || ah == action.end())
      throw structure_error("action matrix missing at a populated grading");
    const f2_matrix d = total.diff_at(g);
    if (ah->second.multiply(d) != d.multiply(ag->second)) bad.push_back(g);
  }
  return bad;
}

homology_table fixed_homology_dims(const graded_complex& total,
                                   const std::map<grading, f2_matrix>& action, int jobs) {
  std::map<grading, int> fixed;
  for (const auto& entry : total.homology(jobs)) {
    const grading g = entry.first;
    const f2_quotient hs = total.homology_space(g);
    const f2_matrix phi = matrix_of_map_on_quotient(action.at(g), hs, hs);
    const int dim = static_cast<int>(hs.dim());
    const int fd = dim - static_cast<int>(rank(phi.add(f2_matrix::identity(dim))));
    if (fd > 0) fixed[g] = fd;
  }
  return make_table(fixed, total.arity());
}

std::vector<grading> table_mismatches(const homology_table& a, const homology_table& b) {
  std::map<grading, std::pair<int, int>> cmp;
  for (const auto& e : a.entries) cmp[e.first].first = e.second;
  for (const auto& e : b.entries) cmp[e.first].second = e.second;
  std::vector<grading> bad;
  for (const auto& [g, dims] : cmp)
    if (dims.first != dims.second) bad.push_back(g);
  return bad;
}

equivariant_result build_equivariant(const orbit_diagram& od, kh_flavor fl, int cap,
                                     bool allow_even_p, int jobs) {
  if (od.action.p % 2 == 0 && !allow_even_p)
    throw even_order_error("group order " + std::to_string(od.action.p) +
                           " is even; odd order is a hypothesis of the fixed-subspace "
                           "comparison (pass the override to compute anyway)");

  equivariant_result out;
  out.total = build_khovanov_complex(od.d, fl, cap);
  const state_map transport = [&od](std::uint64_t code) {
    return transport_state(od.d, od.action, code);
  };
  out.quot = build_quotient(out.total.cx, out.total.basis, od.action.p, transport);

  const std::map<grading, int> h = out.total.cx.homology(jobs);
  const std::map<grading, int> hq = out.quot.cx.homology(jobs);
  out.homology = make_table(h, out.total.cx.arity());
  out.quotient_homology = make_table(hq, out.quot.cx.arity());
  out.fixed_dims = fixed_homology_dims(out.total.cx, out.quot.action, jobs);
  out.equivariant_jones = euler_polynomial(hq);
  out.mismatches = table_mismatches(out.quotient_homology, out.fixed_dims);
  return out;
}

}  // namespace eqkh
