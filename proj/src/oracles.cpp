#include "eqkh/oracles.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "eqkh/errors.hpp"

namespace eqkh {

namespace {

// Minimal union-find over int keys, local to the oracle paths.
struct uf_map {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end()) { parent[x] = x; return x; }
    if (it->second == x) return x;
    return it->second = find(it->second);
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

// Circles of one resolution, identified by their smallest arc label. Windings
// come from an end-to-end chase that is written here from scratch.
struct circle_model {
  std::vector<int> reps;          // ascending class minima (arc circles)
  std::map<int, int> arc_rep;     // arc -> class minimum
  std::vector<int> windings;      // aligned with reps, then free loops
  int loops = 0;

  int total() const { return static_cast<int>(reps.size()) + loops; }
  int index_of_rep(int rep) const {
    return static_cast<int>(std::lower_bound(reps.begin(), reps.end(), rep) - reps.begin());
  }
};

circle_model circles_for(const link_diagram& d, std::uint32_t mask, bool with_winding) {
  uf_map u;
  for (int a : d.arcs) u.find(a);
  for (int v = 0; v < d.n(); ++v) {
    bool plus = (mask >> v) & 1;
    const auto& s = d.crossings[v].slot;
    if (plus) { u.unite(s[0], s[1]); u.unite(s[2], s[3]); }
    else      { u.unite(s[0], s[3]); u.unite(s[1], s[2]); }
  }
  std::map<int, int> mins;
  for (int a : d.arcs) {
    int r = u.find(a);
    auto it = mins.find(r);
    if (it == mins.end()) mins[r] = a; else it->second = std::min(it->second, a);
  }
  circle_model cm;
  for (auto& [r, mn] : mins) { (void)r; cm.reps.push_back(mn); }
  std::sort(cm.reps.begin(), cm.reps.end());
  for (int a : d.arcs) cm.arc_rep[a] = mins.at(u.find(a));
  cm.loops = d.free_loops;
  cm.windings.assign(cm.total(), 0);
  for (auto& [l, ray] : d.loop_rays) cm.windings[cm.reps.size() + l] = ray;

  if (with_winding && !d.arc_rays.empty()) {
    // chase arc ends: end (a,1) continues through a channel into some (b,i)
    std::map<std::pair<int, int>, std::pair<int, int>> channel;
    for (int v = 0; v < d.n(); ++v) {
      bool plus = (mask >> v) & 1;
      const auto& s = d.crossings[v].slot;
      int pairs[2][2] = {{0, plus ? 1 : 3}, {2, plus ? 3 : 1}};
      for (auto& pr : pairs) {
        auto end_of = [&](int slot) {
          int a = s[slot];
          int idx = (d.occ.at(a)[0] == std::array<int, 2>{v, slot}) ? 0 : 1;
          return std::pair(a, idx);
        };
        auto e1 = end_of(pr[0]), e2 = end_of(pr[1]);
        channel[e1] = e2;
        channel[e2] = e1;
      }
    }
    std::map<int, int> seen;  // arc -> traversal direction
    for (int start : d.arcs) {
      if (seen.count(start)) continue;
      int wind = 0;
      std::pair<int, int> at{start, 0};  // entering `start` at its first end
      do {
        seen[at.first] = at.second == 0 ? 1 : -1;
        if (auto it = d.arc_rays.find(at.first); it != d.arc_rays.end())
          wind += (at.second == 0 ? it->second : -it->second);
        at = channel.at({at.first, 1 - at.second});
      } while (at != std::pair(start, 0));
      cm.windings[cm.index_of_rep(cm.arc_rep.at(start))] = wind;
    }
  }
  return cm;
}

laurent loop_weight_powers_term(int sigma, int circles, const std::vector<laurent>& delta_pow) {
  laurent marker = laurent::monomial((sigma % 2 == 0) ? 1 : -1, sigma);  // (-A)^σ
  return marker * delta_pow[static_cast<std::size_t>(circles)];
}

using byte_matrix = std::vector<std::vector<std::uint8_t>>;

int byte_rank(byte_matrix m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  int r = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][c]) { pivot = i; break; }
    if (pivot == rows) continue;
    std::swap(m[r], m[pivot]);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != static_cast<std::size_t>(r) && m[i][c])
        for (std::size_t k = c; k < cols; ++k) m[i][k] ^= m[r][k];
    ++r;
  }
  return r;
}

byte_matrix to_bytes(const f2_matrix& m) {
  byte_matrix out(m.rows(), std::vector<std::uint8_t>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.get(i, j) ? 1 : 0;
  return out;
}

}  // namespace

laurent bracket_statesum(const link_diagram& d) {
  const int n = d.n();
  if (n > 24) throw cap_error("state sum limited to 24 crossings");
  int max_circles = static_cast<int>(d.arcs.size()) + d.free_loops + 1;
  laurent delta = laurent::monomial(-1, 2) + laurent::monomial(-1, -2);
  std::vector<laurent> delta_pow{laurent::monomial(1, 0)};
  for (int i = 1; i <= max_circles; ++i) delta_pow.push_back(delta_pow.back() * delta);

  laurent sum;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    circle_model cm = circles_for(d, mask, false);
    int sigma = 2 * std::popcount(mask) - n;
    sum = sum + loop_weight_powers_term(sigma, cm.total(), delta_pow);
  }
  return sum;
}

laurent jones_from_bracket(const laurent& bracket, int writhe) {
  laurent out;
  for (auto& [exp, coeff] : bracket.terms()) {
    int e = exp - 3 * writhe;
    if (e % 2 != 0) throw structure_error("state sum has an odd exponent");
    int half = e / 2;
    out.add_term(-half, (half % 2 == 0) ? coeff : -coeff);
  }
  return out;
}

laurent chromatic_polynomial(const multigraph& g) {
  using key = std::pair<int, std::vector<std::pair<int, int>>>;
  static thread_local std::map<key, laurent> memo;

  std::vector<std::pair<int, int>> edges;
  for (auto& [a, b] : g.edges) {
    if (a < 0 || b < 0 || a >= g.vertices || b >= g.vertices)
      throw structure_error("edge endpoint out of range");
    if (a == b) return laurent();  // a loop kills every coloring
    edges.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  key k{g.vertices, edges};
  if (auto it = memo.find(k); it != memo.end()) return it->second;

  laurent result;
  if (edges.empty()) {
    result = laurent::monomial(1, g.vertices);
  } else {
    auto [a, b] = edges.front();
    multigraph del{g.vertices, {edges.begin() + 1, edges.end()}};

    multigraph con;
    con.vertices = g.vertices - 1;
    for (std::size_t i = 1; i < edges.size(); ++i) {
      auto remap = [&](int v) {
        if (v == b) v = a;
        return v > b ? v - 1 : v;
      };
      con.edges.emplace_back(remap(edges[i].first), remap(edges[i].second));
    }
    result = chromatic_polynomial(del) - chromatic_polynomial(con);
  }
  memo[k] = result;
  return result;
}

std::map<grading, int> dense_homology(const graded_complex& cx, int max_block) {
  std::map<grading, int> h;
  for (auto& [g, dim] : cx.dims()) {
    f2_matrix out_m = cx.diff_at(g);
    f2_matrix in_m = cx.diff_at(cx.prev(g));
    for (auto* m : {&out_m, &in_m})
      if (m->rows() > static_cast<std::size_t>(max_block) ||
          m->cols() > static_cast<std::size_t>(max_block))
        throw cap_error("block too large for the dense path");
    int v = dim - byte_rank(to_bytes(out_m)) - byte_rank(to_bytes(in_m));
    if (v < 0) throw structure_error("dense path produced a negative dimension");
    if (v > 0) h[g] = v;
  }
  return h;
}

std::map<grading, int> burnside_quotient_dims(const orbit_diagram& od, kh_flavor fl, int cap,
                                              bool with_k) {
  const link_diagram& d = od.d;
  const int n = d.n();
  const int p = od.action.p;
  if (n > cap || n > 24) throw cap_error("diagram too large for the averaging oracle");
  int w = (fl == kh_flavor::oriented) ? writhe(d) : 0;
  if (with_k && fl != kh_flavor::framed)
    throw structure_error("the annular weight lives in the framed flavor");

  // permutation powers 0..p-1
  std::vector<std::vector<int>> cperm(p), lperm(p);
  std::vector<std::map<int, int>> aperm(p);
  cperm[0].resize(n);
  std::iota(cperm[0].begin(), cperm[0].end(), 0);
  lperm[0].resize(d.free_loops);
  std::iota(lperm[0].begin(), lperm[0].end(), 0);
  for (int a : d.arcs) aperm[0][a] = a;
  for (int k = 1; k < p; ++k) {
    cperm[k].resize(n);
    for (int v = 0; v < n; ++v) cperm[k][v] = od.action.crossing_perm[cperm[k - 1][v]];
    lperm[k].resize(d.free_loops);
    for (int l = 0; l < d.free_loops; ++l) lperm[k][l] = od.action.loop_perm[lperm[k - 1][l]];
    for (int a : d.arcs) aperm[k][a] = od.action.arc_perm.at(aperm[k - 1].at(a));
  }

  std::map<grading, std::int64_t> fixed_total;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    circle_model cm = circles_for(d, mask, with_k);
    int circles = cm.total();
    if (circles > 62) throw cap_error("too many circles for the averaging oracle");
    int sigma = 2 * std::popcount(mask) - n;

    for (int k = 0; k < p; ++k) {
      std::uint32_t mask_k = 0;
      for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1) mask_k |= std::uint32_t{1} << cperm[k][v];
      if (mask_k != mask) continue;

      // circle permutation induced by the k-th power on this resolution
      std::vector<int> cp(circles);
      for (std::size_t c = 0; c < cm.reps.size(); ++c)
        cp[c] = cm.index_of_rep(cm.arc_rep.at(aperm[k].at(cm.reps[c])));
      for (int l = 0; l < cm.loops; ++l)
        cp[cm.reps.size() + l] = static_cast<int>(cm.reps.size()) + lperm[k][l];

      // cycles; a fixed sign word is constant on each cycle
      std::vector<int> cycle_of(circles, -1);
      std::vector<int> cycle_len, cycle_ess;
      for (int c = 0; c < circles; ++c) {
        if (cycle_of[c] >= 0) continue;
        int id = static_cast<int>(cycle_len.size());
        int len = 0, ess = 0;
        for (int x = c; cycle_of[x] < 0; x = cp[x]) {
          cycle_of[x] = id;
          ++len;
          if (cm.windings[x] != 0) ++ess;
        }
        cycle_len.push_back(len);
        cycle_ess.push_back(ess);
      }
      int ncyc = static_cast<int>(cycle_len.size());
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << ncyc); ++pick) {
        int tau = 0, kk = 0;
        for (int cyc = 0; cyc < ncyc; ++cyc) {
          bool plus = (pick >> cyc) & 1;
          tau += plus ? cycle_len[cyc] : -cycle_len[cyc];
          kk += plus ? cycle_ess[cyc] : -cycle_ess[cyc];
        }
        grading g = (fl == kh_flavor::oriented)
                        ? grading{(w - sigma) / 2, (3 * w - sigma + 2 * tau) / 2, 0}
                        : grading{tau, sigma - 2 * tau, 0};
        if (with_k) g[2] = kk;
        fixed_total[g] += 1;
      }
    }
  }

  std::map<grading, int> out;
  for (auto& [g, total] : fixed_total) {
    if (total % p != 0) throw structure_error("averaging did not divide evenly");
    if (total / p > 0) out[g] = static_cast<int>(total / p);
  }
  return out;
}

std::map<grading, int> burnside_graph_dims(const graph_input& g, int cap) {
  const int ne = g.e();
  const int nv = g.vertices;
  const int p = g.p;
  if (ne > cap || ne > 24) throw cap_error("graph too large for the averaging oracle");
  if (static_cast<int>(g.aut.size()) != nv) throw structure_error("the graph carries no symmetry");

  // vertex and edge permutation powers 0..p-1
  std::vector<std::vector<int>> vperm(p), eperm(p);
  vperm[0].resize(nv);
  std::iota(vperm[0].begin(), vperm[0].end(), 0);
  eperm[0].resize(ne);
  std::iota(eperm[0].begin(), eperm[0].end(), 0);
  std::vector<int> estep(ne);
  for (int e = 0; e < ne; ++e) {
    std::pair<int, int> img{g.aut[g.edges[e].first], g.aut[g.edges[e].second]};
    if (img.first > img.second) std::swap(img.first, img.second);
    auto it = std::find(g.edges.begin(), g.edges.end(), img);
    if (it == g.edges.end()) throw structure_error("the symmetry does not map edges to edges");
    estep[e] = static_cast<int>(it - g.edges.begin());
  }
  for (int k = 1; k < p; ++k) {
    vperm[k].resize(nv);
    for (int v = 0; v < nv; ++v) vperm[k][v] = g.aut[vperm[k - 1][v]];
    eperm[k].resize(ne);
    for (int e = 0; e < ne; ++e) eperm[k][e] = estep[eperm[k - 1][e]];
  }

  std::map<grading, std::int64_t> fixed_total;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << ne); ++mask) {
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    for (int e = 0; e < ne; ++e)
      if ((mask >> e) & 1) parent[find(g.edges[e].first)] = find(g.edges[e].second);
    std::vector<int> roots;
    for (int v = 0; v < nv; ++v)
      if (find(v) == v) roots.push_back(v);
    int i = std::popcount(mask);

    for (int k = 0; k < p; ++k) {
      std::uint32_t mask_k = 0;
      for (int e = 0; e < ne; ++e)
        if ((mask >> e) & 1) mask_k |= std::uint32_t{1} << eperm[k][e];
      if (mask_k != mask) continue;

      // cycles of the induced permutation on components (tracked by root)
      std::map<int, int> cycle_of;
      std::vector<int> cycle_len;
      for (int r : roots) {
        if (cycle_of.count(r)) continue;
        int id = static_cast<int>(cycle_len.size());
        int len = 0;
        for (int x = r; !cycle_of.count(x); x = find(vperm[k][x])) {
          cycle_of[x] = id;
          ++len;
        }
        cycle_len.push_back(len);
      }
      int ncyc = static_cast<int>(cycle_len.size());
      for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << ncyc); ++pick) {
        int j = 0;
        for (int cyc = 0; cyc < ncyc; ++cyc)
          if ((pick >> cyc) & 1) j += cycle_len[cyc];
        fixed_total[{i, j, 0}] += 1;
      }
    }
  }

  std::map<grading, int> out;
  for (auto& [gr, total] : fixed_total) {
    if (total % p != 0) throw structure_error("averaging did not divide evenly");
    if (total / p > 0) out[gr] = static_cast<int>(total / p);
  }
  return out;
}

}  // namespace eqkh
