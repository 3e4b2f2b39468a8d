#include "eqkh/annular.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "doctest.h"
#include "eqkh/errors.hpp"
#include "eqkh/oracles.hpp"
#include "support/gen.hpp"

using namespace eqkh;

namespace {

std::map<grading, int> to_map(const homology_table& t) {
  return {t.entries.begin(), t.entries.end()};
}

// Euler characteristic of the annular chain spaces in the bracket variable,
// split by the annular weight.
std::map<int, laurent> bracket_euler_by_k(const annular_complex& c) {
  std::map<int, laurent> out;
  for (const auto& [g, dim] : c.cx.dims())
    out[g[2]].add_term(4 * g[0] + g[1],
                       ((g[0] + g[1]) % 2 == 0 ? 1 : -1) * std::int64_t{dim});
  return out;
}

laurent total_bracket_euler(const annular_complex& c) {
  laurent sum;
  for (const auto& [k, e] : bracket_euler_by_k(c)) sum = sum + e;
  return sum;
}

std::map<std::array<int, 2>, int> forget_k(const std::map<grading, int>& dims) {
  std::map<std::array<int, 2>, int> out;
  for (const auto& [g, dim] : dims) out[{g[0], g[1]}] += dim;
  return out;
}

}  // namespace

TEST_CASE("crossingless annular circles") {
  auto essential = build_annular_complex(parse_diagram("O\nRAYO 1 1\n"));
  const std::map<grading, int> want_z{{{1, -2, 1}, 1}, {{-1, 2, -1}, 1}};
  CHECK(essential.cx.dims() == want_z);
  CHECK(essential.cx.homology() == want_z);
  CHECK(essential.warnings.empty());
  CHECK(essential.deleted_terms == 0);

  auto mixed = build_annular_complex(parse_diagram("O\nO\nRAYO 1 1\n"));
  const std::map<grading, int> want_mixed{
      {{2, -4, 1}, 1}, {{0, 0, 1}, 1}, {{0, 0, -1}, 1}, {{-2, 4, -1}, 1}};
  CHECK(mixed.cx.dims() == want_mixed);

  auto z2 = build_annular_complex(parse_diagram("O\nO\nRAYO 1 1\nRAYO 2 1\n"));
  const std::map<grading, int> want_z2{{{2, -4, 2}, 1}, {{0, 0, 0}, 2}, {{-2, 4, -2}, 1}};
  CHECK(z2.cx.dims() == want_z2);
  CHECK(z2.cx.homology() == want_z2);

  CHECK_THROWS_AS(build_annular_complex(parse_diagram("O\n")), structure_error);
}

TEST_CASE("one-crossing annular unknot") {
  auto d = parse_diagram("X 1 2 2 1\nRAY 1 1\nRAY 2 1\n");
  auto a = build_annular_complex(d);
  const std::map<grading, int> want_chain{{{2, -5, 2}, 1},
                                          {{1, -1, 0}, 1},
                                          {{0, -1, 0}, 2},
                                          {{-1, 3, 0}, 1},
                                          {{-2, 3, -2}, 1}};
  CHECK(a.cx.dims() == want_chain);
  CHECK(a.deleted_terms == 1);
  CHECK(a.warnings.empty());
  const std::map<grading, int> want_h{
      {{2, -5, 2}, 1}, {{0, -1, 0}, 1}, {{-1, 3, 0}, 1}, {{-2, 3, -2}, 1}};
  CHECK(a.cx.homology() == want_h);

  auto flat = build_khovanov_complex(d, kh_flavor::framed);
  CHECK(forget_k(a.cx.dims()) == forget_k(flat.cx.dims()));
  CHECK(total_bracket_euler(a) == bracket_statesum(d));

  // all circles trivial: the annular complex is the framed one at k = 0
  auto disk = build_annular_complex(parse_diagram("X 1 2 2 1\nRAY 1 0\nRAY 2 0\n"));
  CHECK(disk.deleted_terms == 0);
  std::map<grading, int> classical;
  for (const auto& [g, dim] :
       build_khovanov_complex(parse_diagram("X 1 2 2 1\n"), kh_flavor::framed).cx.homology())
    classical[{g[0], g[1], 0}] += dim;
  CHECK(disk.cx.homology() == classical);
}

TEST_CASE("adjoined trivial circle scales each annular weight slice") {
  auto base = build_annular_complex(parse_diagram("X 1 2 2 1\nRAY 1 1\nRAY 2 1\n"));
  auto plus = build_annular_complex(parse_diagram("X 1 2 2 1\nO\nRAY 1 1\nRAY 2 1\n"));
  laurent delta;
  delta.add_term(2, -1);
  delta.add_term(-2, -1);
  auto be = bracket_euler_by_k(base);
  auto pe = bracket_euler_by_k(plus);
  CHECK(pe.size() == be.size());
  for (const auto& [k, e] : be) CHECK(pe.at(k) == delta * e);
}

TEST_CASE("multiply wound circles warn but stay essential") {
  auto a = build_annular_complex(parse_diagram("O\nRAYO 1 2\n"));
  CHECK(a.warnings.size() == 1);
  const std::map<grading, int> want{{{1, -2, 1}, 1}, {{-1, 2, -1}, 1}};
  CHECK(a.cx.dims() == want);

  auto b = build_annular_complex(parse_diagram("X 1 2 2 1\nRAY 1 1\nRAY 2 -1\n"));
  CHECK(b.warnings.size() == 1);
  CHECK(b.deleted_terms == 3);
  CHECK(b.cx.homology() == b.cx.dims());
}

TEST_CASE("annular equivariant circles") {
  auto od = parse_orbit_diagram(
      "O\nO\nO\nRAYO 1 1\nRAYO 2 1\nRAYO 3 1\nSYM 3\nMAPO 1 2\nMAPO 2 3\nMAPO 3 1\n");
  auto r = build_annular_equivariant(od);
  const std::map<grading, int> want{
      {{3, -6, 3}, 1}, {{1, -2, 1}, 1}, {{-1, 2, -1}, 1}, {{-3, 6, -3}, 1}};
  const std::map<grading, int> want_total{
      {{3, -6, 3}, 1}, {{1, -2, 1}, 3}, {{-1, 2, -1}, 3}, {{-3, 6, -3}, 1}};
  CHECK(r.quot.cx.dims() == want);
  CHECK(to_map(r.quotient_homology) == want);
  CHECK(to_map(r.homology) == want_total);
  CHECK(to_map(r.fixed_dims) == want);
  CHECK(r.mismatches.empty());
  CHECK(r.quot.cx.dims() == burnside_quotient_dims(od, kh_flavor::framed, 16, true));

  auto od1 = parse_orbit_diagram("O\nRAYO 1 1\nSYM 1\n");
  auto r1 = build_annular_equivariant(od1);
  CHECK(to_map(r1.quotient_homology) == to_map(r1.homology));
  CHECK(r1.mismatches.empty());

  auto even = parse_orbit_diagram("O\nO\nRAYO 1 1\nRAYO 2 1\nSYM 2\nMAPO 1 2\nMAPO 2 1\n");
  CHECK_THROWS_AS(build_annular_equivariant(even), even_order_error);
  auto re = build_annular_equivariant(even, 16, true);
  const std::map<grading, int> want_even{{{2, -4, 2}, 1}, {{0, 0, 0}, 1}, {{-2, 4, -2}, 1}};
  CHECK(re.quot.cx.dims() == want_even);
}

TEST_CASE("rotation lifts agree across a symmetric second move") {
  auto small = build_annular_equivariant(gen::braid_lift(2, {1}, 3, true));
  auto big = build_annular_equivariant(gen::braid_lift(2, {1, 1, -1}, 3, true));
  CHECK(to_map(small.quotient_homology) == to_map(big.quotient_homology));
  CHECK(to_map(small.homology) == to_map(big.homology));
  CHECK(small.mismatches.empty());
  CHECK(big.mismatches.empty());

  auto flat = build_khovanov_complex(small.total.d, kh_flavor::framed);
  CHECK(forget_k(small.total.cx.dims()) == forget_k(flat.cx.dims()));
  CHECK(total_bracket_euler(small.total) == bracket_statesum(small.total.d));
  CHECK(small.quot.cx.dims() ==
        burnside_quotient_dims(gen::braid_lift(2, {1}, 3, true), kh_flavor::framed, 16, true));
}
