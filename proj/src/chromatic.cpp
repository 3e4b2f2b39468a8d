#include "eqkh/chromatic.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "eqkh/errors.hpp"
#include "eqkh/f2linalg.hpp"
#include "eqkh/oracles.hpp"

namespace eqkh {

namespace {

constexpr int label_bits = 40;

std::uint64_t pack(std::uint32_t mask, std::uint64_t labels) {
  return (std::uint64_t{mask} << label_bits) | labels;
}

std::uint32_t mask_of(std::uint64_t code) {
  return static_cast<std::uint32_t>(code >> label_bits);
}

std::uint64_t labels_of(std::uint64_t code) {
  return code & ((std::uint64_t{1} << label_bits) - 1);
}

grading state_grading(std::uint32_t mask, std::uint64_t labels) {
  return {std::popcount(mask), std::popcount(labels), 0};
}

// Connected components of the spanning subgraph, indexed by smallest vertex.
struct component_data {
  std::vector<int> comp_of;  // vertex -> component index
  int count = 0;
};

component_data components(const graph_input& g, std::uint32_t mask) {
  std::vector<int> parent(g.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int e = 0; e < g.e(); ++e) {
    if (!((mask >> e) & 1)) continue;
    int a = find(g.edges[e].first);
    int b = find(g.edges[e].second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);  // roots stay minimal
  }
  component_data cd;
  cd.comp_of.assign(g.vertices, -1);
  for (int v = 0; v < g.vertices; ++v) {
    int r = find(v);
    if (cd.comp_of[r] < 0) cd.comp_of[r] = cd.count++;
    cd.comp_of[v] = cd.comp_of[r];
  }
  return cd;
}

// Label bits after adding one edge; false when x*x kills the term.
bool merged_labels(const graph_input& g, const component_data& before,
                   const component_data& after, std::uint64_t labels, std::uint64_t& out) {
  out = 0;
  std::uint64_t done = 0;
  for (int v = 0; v < g.vertices; ++v) {
    int k = before.comp_of[v];
    if ((done >> k) & 1) continue;
    done |= std::uint64_t{1} << k;
    if (!((labels >> k) & 1)) continue;
    int nk = after.comp_of[v];
    if ((out >> nk) & 1) return false;  // two x labels met
    out |= std::uint64_t{1} << nk;
  }
  return true;
}

void check_graph_symmetry(const graph_input& g) {
  if (static_cast<int>(g.aut.size()) != g.vertices)
    throw structure_error("vertex map has the wrong size");
  if (g.p < 1) throw structure_error("group order must be at least 1");
  std::vector<bool> hit(g.aut.size(), false);
  for (int v : g.aut) {
    if (v < 0 || v >= g.vertices || hit[v]) throw structure_error("vertex map is not a permutation");
    hit[v] = true;
  }
  std::vector<int> cur(g.vertices);
  std::iota(cur.begin(), cur.end(), 0);
  for (int t = 0; t < g.p; ++t)
    for (int v = 0; v < g.vertices; ++v) cur[v] = g.aut[cur[v]];
  for (int v = 0; v < g.vertices; ++v)
    if (cur[v] != v) throw structure_error("vertex map order does not divide the group order");
  edge_permutation(g);  // edges must map to edges
}

std::vector<std::vector<std::string>> graph_lines(const std::string& text) {
  std::string pre;
  for (std::size_t i = 0; i < text.size();) {
    if (text.compare(i, 3, "\xe2\x86\x92") == 0) {  // "→"
      pre += ' ';
      i += 3;
      continue;
    }
    if (text.compare(i, 2, "->") == 0) {
      pre += ' ';
      i += 2;
      continue;
    }
    char ch = text[i++];
    pre += (ch == ',' || ch == ':') ? ' ' : ch;
  }
  std::string clean;
  bool comment = false;
  for (char ch : pre) {
    if (ch == '#') comment = true;
    if (ch == '\n') comment = false;
    if (ch == '/') ch = '\n';  // inline separator
    clean += comment ? (ch == '\n' ? '\n' : ' ') : ch;
  }
  std::vector<std::vector<std::string>> lines;
  std::istringstream all(clean);
  std::string line;
  while (std::getline(all, line)) {
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

int parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw parse_error(std::string("expected an integer for ") + what + ", got '" + s + "'");
  }
  if (used != s.size())
    throw parse_error(std::string("expected an integer for ") + what + ", got '" + s + "'");
  return v;
}

}  // namespace

graph_input parse_graph(const std::string& text) {
  graph_input g;
  bool has_v = false;
  bool has_aut = false;
  std::vector<std::pair<int, int>> raw_edges;
  std::vector<std::pair<int, int>> aut_pairs;
  for (auto& toks : graph_lines(text)) {
    const std::string& kw = toks[0];
    if (kw == "V") {
      if (toks.size() != 2) throw parse_error("V expects one argument");
      if (has_v) throw parse_error("duplicate V line");
      has_v = true;
      g.vertices = parse_int(toks[1], "vertex count");
      if (g.vertices < 0) throw parse_error("vertex count must be nonnegative");
    } else if (kw == "E") {
      if (toks.size() != 3) throw parse_error("E expects two arguments");
      raw_edges.emplace_back(parse_int(toks[1], "edge endpoint"),
                             parse_int(toks[2], "edge endpoint"));
    } else if (kw == "AUT") {
      if (has_aut) throw parse_error("duplicate AUT line");
      has_aut = true;
      if (toks.size() < 2) throw parse_error("AUT expects a group order");
      g.p = parse_int(toks[1], "group order");
      if (g.p < 1) throw parse_error("group order must be at least 1");
      if ((toks.size() - 2) % 2 != 0) throw parse_error("AUT expects vertex pairs");
      for (std::size_t k = 2; k + 1 < toks.size(); k += 2)
        aut_pairs.emplace_back(parse_int(toks[k], "vertex"), parse_int(toks[k + 1], "vertex"));
    } else {
      throw parse_error("unknown keyword '" + kw + "'");
    }
  }
  if (!has_v) throw parse_error("graph file needs a V line");

  for (auto [a, b] : raw_edges) {
    if (a < 1 || b < 1 || a > g.vertices || b > g.vertices)
      throw parse_error("edge endpoint out of range");
    if (a == b) throw parse_error("loops are not allowed");
    g.edges.emplace_back(std::min(a, b) - 1, std::max(a, b) - 1);
  }
  std::sort(g.edges.begin(), g.edges.end());
  if (std::adjacent_find(g.edges.begin(), g.edges.end()) != g.edges.end())
    throw parse_error("repeated edges are not allowed");

  if (has_aut) {
    g.aut.resize(g.vertices);
    std::iota(g.aut.begin(), g.aut.end(), 0);
    std::vector<bool> mapped(g.vertices, false);
    for (auto [v, w] : aut_pairs) {
      if (v < 1 || w < 1 || v > g.vertices || w > g.vertices)
        throw parse_error("AUT vertex out of range");
      if (mapped[v - 1]) throw parse_error("AUT maps vertex " + std::to_string(v) + " twice");
      mapped[v - 1] = true;
      g.aut[v - 1] = w - 1;
    }
    check_graph_symmetry(g);
  }
  return g;
}

std::vector<int> edge_permutation(const graph_input& g) {
  if (static_cast<int>(g.aut.size()) != g.vertices)
    throw structure_error("the graph carries no symmetry");
  std::vector<int> out(g.e());
  for (int e = 0; e < g.e(); ++e) {
    std::pair<int, int> img{g.aut[g.edges[e].first], g.aut[g.edges[e].second]};
    if (img.first > img.second) std::swap(img.first, img.second);
    auto it = std::lower_bound(g.edges.begin(), g.edges.end(), img);
    if (it == g.edges.end() || *it != img)
      throw structure_error("the symmetry does not map edges to edges");
    out[e] = static_cast<int>(it - g.edges.begin());
  }
  return out;
}

int graph_complex::state_index(grading gr, std::uint64_t code) const {
  auto it = basis.find(gr);
  if (it == basis.end()) return -1;
  auto pos = std::lower_bound(it->second.begin(), it->second.end(), code);
  if (pos == it->second.end() || *pos != code) return -1;
  return static_cast<int>(pos - it->second.begin());
}

graph_complex build_graph_complex(const graph_input& g, int cap) {
  if (cap < 1) throw structure_error("cap must be at least 1");
  const int ne = g.e();
  if (ne > cap)
    throw cap_error("graph has " + std::to_string(ne) + " edges, cap is " + std::to_string(cap));
  if (ne > 24) throw cap_error("more than 24 edges cannot be packed");
  if (g.vertices > label_bits) throw cap_error("more than 40 vertices cannot be packed");

  graph_complex gc;
  gc.g = g;

  std::uint64_t total_states = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << ne); ++mask) {
    component_data cd = components(g, mask);
    total_states += std::uint64_t{1} << cd.count;
    if (total_states > (std::uint64_t{1} << 22))
      throw cap_error("state space exceeds the build limit");
    for (std::uint64_t labels = 0; labels < (std::uint64_t{1} << cd.count); ++labels)
      gc.basis[state_grading(mask, labels)].push_back(pack(mask, labels));
  }
  for (auto& [gr, codes] : gc.basis) gc.cx.set_dim(gr, static_cast<int>(codes.size()));

  std::map<grading, std::vector<std::pair<std::size_t, std::size_t>>> entries;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << ne); ++mask) {
    component_data cd = components(g, mask);
    std::vector<int> absent;
    std::vector<component_data> grown;
    for (int e = 0; e < ne; ++e) {
      if ((mask >> e) & 1) continue;
      absent.push_back(e);
      grown.push_back(components(g, mask | (std::uint32_t{1} << e)));
    }
    for (std::uint64_t labels = 0; labels < (std::uint64_t{1} << cd.count); ++labels) {
      grading gr = state_grading(mask, labels);
      int col = gc.state_index(gr, pack(mask, labels));
      for (std::size_t a = 0; a < absent.size(); ++a) {
        std::uint64_t nlabels = 0;
        if (!merged_labels(g, cd, grown[a], labels, nlabels)) continue;
        std::uint32_t nmask = mask | (std::uint32_t{1} << absent[a]);
        int row = gc.state_index(gc.cx.next(gr), pack(nmask, nlabels));
        if (col < 0 || row < 0) throw structure_error("differential left the state basis");
        entries[gr].emplace_back(static_cast<std::size_t>(row), static_cast<std::size_t>(col));
      }
    }
  }
  for (auto& [gr, ent] : entries) {
    grading ng = gc.cx.next(gr);
    gc.cx.set_diff(gr, f2_matrix::from_entries(static_cast<std::size_t>(gc.cx.dim_at(ng)),
                                               static_cast<std::size_t>(gc.cx.dim_at(gr)), ent));
  }
  return gc;
}

std::uint64_t transport_graph_state(const graph_input& g, std::uint64_t code) {
  std::vector<int> eperm = edge_permutation(g);
  std::uint32_t mask = mask_of(code);
  std::uint64_t labels = labels_of(code);
  std::uint32_t nmask = 0;
  for (int e = 0; e < g.e(); ++e)
    if ((mask >> e) & 1) nmask |= std::uint32_t{1} << eperm[e];
  component_data cd = components(g, mask);
  component_data ncd = components(g, nmask);
  if (cd.count != ncd.count) throw structure_error("the symmetry changed the component count");
  std::uint64_t nlabels = 0;
  std::uint64_t done = 0;
  std::uint64_t seen = 0;
  for (int v = 0; v < g.vertices; ++v) {
    int k = cd.comp_of[v];
    if ((done >> k) & 1) continue;
    done |= std::uint64_t{1} << k;
    int nk = ncd.comp_of[g.aut[v]];
    if ((seen >> nk) & 1) throw structure_error("component correspondence is not a bijection");
    seen |= std::uint64_t{1} << nk;
    if ((labels >> k) & 1) nlabels |= std::uint64_t{1} << nk;
  }
  return pack(nmask, nlabels);
}

chromatic_check chromatic_euler_check(const graph_complex& gc) {
  chromatic_check out;
  out.from_euler = euler_polynomial(gc.cx.homology()).substitute_affine(1, -1);
  multigraph mg;
  mg.vertices = gc.g.vertices;
  mg.edges = gc.g.edges;
  out.from_delcon = chromatic_polynomial(mg);
  out.match = out.from_euler == out.from_delcon;
  return out;
}

graph_equivariant_result build_graph_equivariant(const graph_input& g, int cap, bool allow_even_p,
                                                 int jobs) {
  check_graph_symmetry(g);
  if (g.p % 2 == 0 && !allow_even_p)
    throw even_order_error("group order " + std::to_string(g.p) +
                           " is even; odd order is a hypothesis of the fixed-subspace "
                           "comparison (pass the override to compute anyway)");
  graph_equivariant_result out;
  out.total = build_graph_complex(g, cap);
  out.quot = build_quotient(out.total.cx, out.total.basis, g.p,
                            [&g](std::uint64_t code) { return transport_graph_state(g, code); });
  out.homology = make_table(out.total.cx.homology(jobs), 2);
  out.quotient_homology = make_table(out.quot.cx.homology(jobs), 2);
  out.fixed_dims = fixed_homology_dims(out.total.cx, out.quot.action, jobs);
  out.mismatches = table_mismatches(out.quotient_homology, out.fixed_dims);
  return out;
}

}  // namespace eqkh
