#include "eqkh/annular.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <utility>

#include "eqkh/errors.hpp"

namespace eqkh {

int annular_complex::state_index(grading g, std::uint64_t code) const {
  auto it = basis.find(g);
  if (it == basis.end()) return -1;
  auto pos = std::lower_bound(it->second.begin(), it->second.end(), code);
  if (pos == it->second.end() || *pos != code) return -1;
  return static_cast<int>(pos - it->second.begin());
}

annular_complex build_annular_complex(const link_diagram& d, int cap) {
  if (!d.annular) throw structure_error("annular complex needs ray data on the diagram");

  const khovanov_complex flat = build_khovanov_complex(d, kh_flavor::framed, cap);
  annular_complex out;
  out.d = flat.d;

  std::set<std::uint32_t> masks;
  for (const auto& [g2, codes] : flat.basis) {
    for (std::uint64_t code : codes) {
      masks.insert(state_mask(code));
      grading g3 = g2;
      g3[2] = state_k(out.d, code);
      out.basis[g3].push_back(code);
    }
  }
  for (std::uint32_t mask : masks) {
    const resolution r = resolve(out.d, mask);
    for (std::size_t c = 0; c < r.winding.size(); ++c)
      if (std::abs(r.winding[c]) >= 2)
        out.warnings.push_back("resolution " + std::to_string(mask) + ": circle " +
                               std::to_string(c) + " winds " + std::to_string(r.winding[c]) +
                               " times; only essential/trivial is graded");
  }

  for (const auto& [g, codes] : out.basis)
    out.cx.set_dim(g, static_cast<int>(codes.size()));

  for (const auto& [g, codes] : out.basis) {
    const grading h = out.cx.next(g);
    const int rows = out.cx.dim_at(h);
    std::vector<std::pair<std::size_t, std::size_t>> ones;
    for (std::size_t col = 0; col < codes.size(); ++col) {
      for (std::uint64_t target : differential_terms(out.d, codes[col])) {
        if (state_k(out.d, target) != g[2]) {
          ++out.deleted_terms;
          continue;
        }
        const int row = out.state_index(h, target);
        if (row < 0) throw structure_error("annular differential leaves the state basis");
        ones.emplace_back(row, col);
      }
    }
    if (rows > 0)
      out.cx.set_diff(g, f2_matrix::from_entries(rows, codes.size(), ones));
  }
  out.cx.check_d2();
  return out;
}

annular_equivariant_result build_annular_equivariant(const orbit_diagram& od, int cap,
                                                     bool allow_even_p, int jobs) {
  if (od.action.p % 2 == 0 && !allow_even_p)
    throw even_order_error("group order " + std::to_string(od.action.p) +
                           " is even; odd order is a hypothesis of the fixed-subspace "
                           "comparison (pass the override to compute anyway)");

  annular_equivariant_result out;
  out.total = build_annular_complex(od.d, cap);
  const state_map transport = [&od](std::uint64_t code) {
    return transport_state(od.d, od.action, code);
  };
  out.quot = build_quotient(out.total.cx, out.total.basis, od.action.p, transport);
  out.homology = make_table(out.total.cx.homology(jobs), 3);
  out.quotient_homology = make_table(out.quot.cx.homology(jobs), 3);
  out.fixed_dims = fixed_homology_dims(out.total.cx, out.quot.action, jobs);
  out.mismatches = table_mismatches(out.quotient_homology, out.fixed_dims);
  return out;
}

}  // namespace eqkh
