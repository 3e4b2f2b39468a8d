#include "eqkh/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "eqkh/errors.hpp"

namespace eqkh {

namespace {

// How flipping the marker at v (from +1 to -1) rewires the circles of one
// resolution. Exactly one of merge/split happens.
struct flip_data {
  std::uint32_t mask2 = 0;
  bool merge = false;
  int a = -1, b = -1;        // source circles at v (equal for a split)
  int m = -1;                // merge target
  int t1 = -1, t2 = -1;      // split targets
  std::vector<int> corr;     // source circle -> target circle away from v
};

flip_data analyze_flip(const link_diagram& d, const resolution& r, std::uint32_t mask, int v) {
  flip_data f;
  f.mask2 = mask ^ (std::uint32_t{1} << v);
  resolution r2 = resolve(d, f.mask2);

  int arc0 = d.crossings[v].slot[0];
  int arc1 = d.crossings[v].slot[1];
  int arc2 = d.crossings[v].slot[2];
  f.a = r.arc_circle.at(arc0);
  f.b = r.arc_circle.at(arc2);
  f.merge = (f.a != f.b);
  if (f.merge) {
    f.m = r2.arc_circle.at(arc0);
  } else {
    f.t1 = r2.arc_circle.at(arc0);
    f.t2 = r2.arc_circle.at(arc1);
    if (f.t1 == f.t2) throw structure_error("marker flip did not split the circle");
  }

  f.corr.assign(r.circles.size(), -1);
  for (std::size_t c = 0; c < r.circles.size(); ++c) {
    if (static_cast<int>(c) == f.a || static_cast<int>(c) == f.b) continue;
    if (r.circles[c].empty()) continue;  // free loops are matched by index below
    f.corr[c] = r2.arc_circle.at(r.circles[c].front());
  }
  for (std::size_t l = 0; l < r.loop_circle.size(); ++l)
    f.corr[r.loop_circle[l]] = r2.loop_circle[l];
  return f;
}

// Target sign words for one source sign word under the flip; 0, 1 or 2 codes.
void flip_targets(const flip_data& f, std::uint64_t signs, std::vector<std::uint64_t>& out) {
  std::uint64_t base = 0;
  for (std::size_t c = 0; c < f.corr.size(); ++c)
    if (f.corr[c] >= 0 && ((signs >> c) & 1)) base |= std::uint64_t{1} << f.corr[c];

  if (f.merge) {
    bool sa = (signs >> f.a) & 1, sb = (signs >> f.b) & 1;
    if (sa && sb) out.push_back(pack_state(f.mask2, base | (std::uint64_t{1} << f.m)));
    else if (sa || sb) out.push_back(pack_state(f.mask2, base));
  } else {
    if ((signs >> f.a) & 1) {
      out.push_back(pack_state(f.mask2, base | (std::uint64_t{1} << f.t1)));
      out.push_back(pack_state(f.mask2, base | (std::uint64_t{1} << f.t2)));
    } else {
      out.push_back(pack_state(f.mask2, base));
    }
  }
}

grading grade(kh_flavor fl, int w, int n, std::uint32_t mask, int circles, std::uint64_t signs) {
  int sigma = 2 * std::popcount(mask) - n;
  int tau = 2 * std::popcount(signs) - circles;
  if (fl == kh_flavor::oriented)
    return {(w - sigma) / 2, (3 * w - sigma + 2 * tau) / 2, 0};
  return {tau, sigma - 2 * tau, 0};
}

}  // namespace

grading state_grading(const link_diagram& d, std::uint64_t code, kh_flavor fl, int writhe) {
  resolution r = resolve(d, state_mask(code));
  return grade(fl, writhe, d.n(), state_mask(code), static_cast<int>(r.circles.size()),
               state_signs(code));
}

int state_k(const link_diagram& d, std::uint64_t code) {
  resolution r = resolve(d, state_mask(code));
  std::uint64_t signs = state_signs(code);
  int k = 0;
  for (std::size_t c = 0; c < r.circles.size(); ++c)
    if (r.winding[c] != 0) k += ((signs >> c) & 1) ? 1 : -1;
  return k;
}

std::vector<std::uint64_t> differential_terms(const link_diagram& d, std::uint64_t code) {
  std::uint32_t mask = state_mask(code);
  resolution r = resolve(d, mask);
  std::vector<std::uint64_t> out;
  for (int v = 0; v < d.n(); ++v) {
    if (!((mask >> v) & 1)) continue;
    flip_data f = analyze_flip(d, r, mask, v);
    flip_targets(f, state_signs(code), out);
  }
  return out;
}

int khovanov_complex::state_index(grading g, std::uint64_t code) const {
  auto it = basis.find(g);
  if (it == basis.end()) return -1;
  auto pos = std::lower_bound(it->second.begin(), it->second.end(), code);
  if (pos == it->second.end() || *pos != code) return -1;
  return static_cast<int>(pos - it->second.begin());
}

khovanov_complex build_khovanov_complex(const link_diagram& d, kh_flavor fl, int cap) {
  if (cap < 1) throw structure_error("cap must be at least 1");
  const int n = d.n();
  if (n > cap)
    throw cap_error("diagram has " + std::to_string(n) + " crossings, cap is " +
                    std::to_string(cap));
  if (n > 24) throw cap_error("more than 24 crossings cannot be packed");

  khovanov_complex kc;
  kc.d = d;
  kc.flavor = fl;
  kc.writhe = (fl == kh_flavor::oriented) ? eqkh::writhe(d) : 0;
  kc.cx = graded_complex(2, fl == kh_flavor::oriented ? 1 : -1);

  std::uint64_t total_states = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    resolution r = resolve(d, mask);
    int circles = static_cast<int>(r.circles.size());
    if (circles > state_sign_bits) throw cap_error("more than 40 circles cannot be packed");
    total_states += std::uint64_t{1} << circles;
    if (total_states > (std::uint64_t{1} << 22))
      throw cap_error("state space exceeds the build limit");
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << circles); ++signs) {
      grading g = grade(fl, kc.writhe, n, mask, circles, signs);
      kc.basis[g].push_back(pack_state(mask, signs));
    }
  }
  for (auto& [g, codes] : kc.basis) kc.cx.set_dim(g, static_cast<int>(codes.size()));

  std::map<grading, std::vector<std::pair<std::size_t, std::size_t>>> entries;
  std::vector<std::uint64_t> targets;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    if (std::popcount(mask) == 0) continue;
    resolution r = resolve(d, mask);
    int circles = static_cast<int>(r.circles.size());
    std::vector<flip_data> flips;
    for (int v = 0; v < n; ++v)
      if ((mask >> v) & 1) flips.push_back(analyze_flip(d, r, mask, v));
    for (std::uint64_t signs = 0; signs < (std::uint64_t{1} << circles); ++signs) {
      grading g = grade(fl, kc.writhe, n, mask, circles, signs);
      int col = kc.state_index(g, pack_state(mask, signs));
      targets.clear();
      for (auto& f : flips) flip_targets(f, signs, targets);
      for (std::uint64_t t : targets) {
        int row = kc.state_index(kc.cx.next(g), t);
        if (col < 0 || row < 0) throw structure_error("differential left the state basis");
        entries[g].emplace_back(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
      }
    }
  }
  for (auto& [g, ones] : entries) {
    auto m = f2_matrix::from_entries(static_cast<std::size_t>(kc.cx.dim_at(kc.cx.next(g))),
                                     static_cast<std::size_t>(kc.cx.dim_at(g)), ones);
    kc.cx.set_diff(g, std::move(m));
  }
  return kc;
}

namespace {

std::uint32_t drop_bit(std::uint32_t mask, int v) {
  const std::uint32_t low = mask & ((std::uint32_t{1} << v) - 1);
  return low | ((mask >> (v + 1)) << v);
}

// Circle indices of resolve(d, mask) inside the resolution of the smoothed
// diagram at the same state (bit v of mask already matches the smoothing).
std::vector<int> smoothed_circle_map(const link_diagram& d, const smoothing_result& sm,
                                     int v, std::uint32_t mask) {
  const resolution rp = resolve(d, mask);
  const resolution rs = resolve(sm.d, drop_bit(mask, v));
  if (rs.circles.size() != rp.circles.size())
    throw structure_error("smoothing changed the circle count");
  std::vector<int> corr(rp.circles.size(), -1);
  for (int l = 0; l < d.free_loops; ++l) corr[rp.loop_circle[l]] = rs.loop_circle[l];
  for (std::size_t c = 0; c < rp.circles.size(); ++c) {
    if (rp.circles[c].empty()) continue;
    int to = -1;
    for (int a : rp.circles[c]) {
      if (auto it = sm.arc_map.find(a); it != sm.arc_map.end()) {
        to = rs.arc_circle.at(it->second);
        break;
      }
    }
    if (to < 0) {
      const int mn = *std::min_element(rp.circles[c].begin(), rp.circles[c].end());
      const auto pos = std::find(sm.closed_chain_mins.begin(), sm.closed_chain_mins.end(), mn);
      if (pos == sm.closed_chain_mins.end())
        throw structure_error("closed circle not found among the smoothing loops");
      to = rs.loop_circle[d.free_loops +
                          static_cast<int>(pos - sm.closed_chain_mins.begin())];
    }
    corr[c] = to;
  }
  std::uint64_t seen = 0;
  for (int to : corr) {
    if (to < 0 || (seen >> to & 1))
      throw structure_error("circle correspondence is not a bijection");
    seen |= std::uint64_t{1} << to;
  }
  return corr;
}

std::uint64_t map_signs(const std::vector<int>& corr, std::uint64_t signs) {
  std::uint64_t out = 0;
  for (std::size_t c = 0; c < corr.size(); ++c)
    if (signs >> c & 1) out |= std::uint64_t{1} << corr[c];
  return out;
}

}  // namespace

skein_report skein_exactness_check(const link_diagram& d, int v, int cap) {
  if (v < 0 || v >= d.n()) throw structure_error("crossing index out of range");
  const smoothing_result szero = smooth_crossing(d, v, 1);
  const smoothing_result sinf = smooth_crossing(d, v, -1);

  skein_report out;
  out.plus = build_khovanov_complex(d, kh_flavor::framed, cap);
  out.zero = build_khovanov_complex(szero.d, kh_flavor::framed, cap);
  out.inf = build_khovanov_complex(sinf.d, kh_flavor::framed, cap);

  // one cache serves both smoothings: bit v of the mask picks the smoothing,
  // so the key sets cannot collide
  std::map<std::uint32_t, std::vector<int>> corr_cache;
  auto corr_for = [&](const smoothing_result& sm, std::uint32_t mask) -> const std::vector<int>& {
    auto it = corr_cache.find(mask);
    if (it == corr_cache.end())
      it = corr_cache.emplace(mask, smoothed_circle_map(d, sm, v, mask)).first;
    return it->second;
  };

  std::set<grading> keys;
  for (const auto& [g, dim] : out.plus.cx.dims()) keys.insert(g);
  for (const auto& [g, dim] : out.inf.cx.dims()) keys.insert({g[0], g[1] - 1, 0});
  for (const auto& [g, dim] : out.zero.cx.dims()) keys.insert({g[0], g[1] + 1, 0});

  static const std::vector<std::uint64_t> no_states;
  for (const grading& g : keys) {
    const grading gi{g[0], g[1] + 1, 0};
    const grading gz{g[0], g[1] - 1, 0};
    f2_matrix a(out.plus.cx.dim_at(g), out.inf.cx.dim_at(gi));
    f2_matrix b(out.zero.cx.dim_at(gz), out.plus.cx.dim_at(g));
    const auto itb = out.plus.basis.find(g);
    const auto& bucket = (itb == out.plus.basis.end()) ? no_states : itb->second;
    for (std::size_t col = 0; col < bucket.size(); ++col) {
      const std::uint32_t mask = state_mask(bucket[col]);
      const std::uint64_t signs = state_signs(bucket[col]);
      if (mask >> v & 1) {
        const std::uint64_t image =
            pack_state(drop_bit(mask, v), map_signs(corr_for(szero, mask), signs));
        const int row = out.zero.state_index(gz, image);
        if (row < 0) throw structure_error("skein image leaves its grading");
        b.set(row, col, true);
      } else {
        const std::uint64_t source =
            pack_state(drop_bit(mask, v), map_signs(corr_for(sinf, mask), signs));
        const int idx = out.inf.state_index(gi, source);
        if (idx < 0) throw structure_error("skein preimage leaves its grading");
        a.set(col, idx, true);
      }
    }
    out.alpha.emplace(g, std::move(a));
    out.beta.emplace(g, std::move(b));
  }

  for (const grading& g : keys) {
    const grading gi{g[0], g[1] + 1, 0};
    const grading gz{g[0], g[1] - 1, 0};
    const f2_matrix& a = out.alpha.at(g);
    const f2_matrix& b = out.beta.at(g);
    bool ok = rank(a) == a.cols() && rank(b) == b.rows() &&
              a.cols() + b.rows() == a.rows() && b.multiply(a).is_zero();
    const grading ng = out.plus.cx.next(g);
    if (keys.count(ng)) {
      ok = ok && out.plus.cx.diff_at(g).multiply(a) ==
                     out.alpha.at(ng).multiply(out.inf.cx.diff_at(gi));
      ok = ok && out.beta.at(ng).multiply(out.plus.cx.diff_at(g)) ==
                     out.zero.cx.diff_at(gz).multiply(b);
    }
    if (!ok) out.violations.push_back(g);
  }
  return out;
}

std::map<grading, f2_matrix> r1_chain_map(const khovanov_complex& before,
                                          const khovanov_complex& after,
                                          const kink_result& kr) {
  if (before.flavor != kh_flavor::oriented || after.flavor != kh_flavor::oriented)
    throw structure_error("the kink chain map lives on the oriented flavor");
  if (kr.chirality != 1 && kr.chirality != -1)
    throw structure_error("kink record is missing its chirality");
  if (after.d.n() != before.d.n() + 1 || kr.new_crossing != after.d.n() - 1)
    throw structure_error("diagrams do not differ by one appended kink");
  const int v = kr.new_crossing;

  struct kink_corr {
    std::uint32_t mask2 = 0;
    std::vector<int> to;  // before circle -> after circle
    int loop = -1;        // the detached curl circle
    int host = -1;        // before circle carrying the host arc
  };
  std::map<std::uint32_t, kink_corr> cache;
  auto corr_for = [&](std::uint32_t mask) -> const kink_corr& {
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    kink_corr kc;
    kc.mask2 = (kr.chirality == 1) ? (mask | (std::uint32_t{1} << v)) : mask;
    const resolution rb = resolve(before.d, mask);
    const resolution ra = resolve(after.d, kc.mask2);
    if (ra.circles.size() != rb.circles.size() + 1)
      throw structure_error("kink resolution did not detach the curl");
    kc.to.assign(rb.circles.size(), -1);
    for (int l = 0; l < before.d.free_loops; ++l) kc.to[rb.loop_circle[l]] = ra.loop_circle[l];
    for (std::size_t c = 0; c < rb.circles.size(); ++c)
      if (!rb.circles[c].empty()) kc.to[c] = ra.arc_circle.at(rb.circles[c].front());
    kc.loop = ra.arc_circle.at(kr.loop_arc);
    kc.host = rb.arc_circle.at(kr.host_arc);
    std::uint64_t seen = std::uint64_t{1} << kc.loop;
    for (int t : kc.to) {
      if (t < 0 || (seen >> t & 1))
        throw structure_error("kink circle correspondence is not a bijection");
      seen |= std::uint64_t{1} << t;
    }
    return cache.emplace(mask, std::move(kc)).first->second;
  };

  std::map<grading, f2_matrix> h;
  for (const auto& [g, codes] : before.basis) {
    f2_matrix m(after.cx.dim_at(g), codes.size());
    for (std::size_t col = 0; col < codes.size(); ++col) {
      const kink_corr& kc = corr_for(state_mask(codes[col]));
      const std::uint64_t signs = state_signs(codes[col]);
      const std::uint64_t base = map_signs(kc.to, signs);
      std::vector<std::uint64_t> images;
      if (kr.chirality == 1) {
        images.push_back(pack_state(kc.mask2, base));  // curl circle gets -
        if (signs >> kc.host & 1)
          images.push_back(pack_state(
              kc.mask2, (base & ~(std::uint64_t{1} << kc.to[kc.host])) |
                            (std::uint64_t{1} << kc.loop)));
      } else {
        images.push_back(pack_state(kc.mask2, base | (std::uint64_t{1} << kc.loop)));
      }
      for (std::uint64_t img : images) {
        const int row = after.state_index(g, img);
        if (row < 0) throw structure_error("kink image leaves its grading");
        m.set(row, col, true);
      }
    }
    h.emplace(g, std::move(m));
  }

  for (const auto& [g, dim] : before.cx.dims()) {
    const grading ng = before.cx.next(g);
    const f2_matrix lhs = after.cx.diff_at(g).multiply(h.at(g));
    f2_matrix rhs(after.cx.dim_at(ng), dim);
    if (const auto it = h.find(ng); it != h.end())
      rhs = it->second.multiply(before.cx.diff_at(g));
    if (lhs != rhs) throw structure_error("kink map is not a chain map");
  }

  const auto hb = before.cx.homology();
  if (hb != after.cx.homology()) throw structure_error("kink changed the homology table");
  for (const auto& [g, dim] : hb) {
    const f2_quotient qb = before.cx.homology_space(g);
    const f2_quotient qa = after.cx.homology_space(g);
    if (rank(matrix_of_map_on_quotient(h.at(g), qb, qa)) != qb.dim())
      throw structure_error("kink map is not injective on homology");
  }
  return h;
}

}  // namespace eqkh
