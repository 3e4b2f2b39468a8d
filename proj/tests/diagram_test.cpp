#include "eqkh/diagram.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"
#include "eqkh/errors.hpp"

using namespace eqkh;

namespace {

const char* kTrefoilLeft = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3\n";
const char* kTrefoilRight = "X 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\n";
const char* kTrefoilRightSym =
    "X 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\nSYM 3\nMAP 1 2\nMAP 2 3\nMAP 3 1\n";

bool same_shape(const link_diagram& a, const link_diagram& b) {
  if (a.free_loops != b.free_loops || a.n() != b.n()) return false;
  for (int c = 0; c < a.n(); ++c)
    if (a.crossings[c].slot != b.crossings[c].slot) return false;
  return true;
}

}  // namespace

TEST_CASE("parsing basics") {
  auto d = parse_diagram("X 1 4 2 3\nX 3 6 4 5\nX 5 2 6 1\n");
  CHECK(d.n() == 3);
  CHECK(d.arcs.size() == 6);
  CHECK(d.free_loops == 0);

  auto slash = parse_diagram("X 1 4 2 3 / X 3 6 4 5 / X 5 2 6 1 # a comment / hiding here");
  CHECK(same_shape(d, slash));

  auto loops = parse_diagram("O\nO\n# nothing else\n");
  CHECK(loops.n() == 0);
  CHECK(loops.free_loops == 2);
  CHECK(writhe(loops) == 0);

  CHECK_THROWS_AS(parse_diagram("X 1 1 1 2\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("X 1 2 3 4\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("X 1 2 2\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("X 1 2 2 1\nLEFT 1\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("Y 1 2 2 1\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("X 1 2 2 x\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("X 0 1 1 0\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("O\nRAYO 2 1\n"), parse_error);
  CHECK_THROWS_AS(parse_diagram("X 1 2 2 1\nRAY 3 1\n"), parse_error);
}

TEST_CASE("writhe and crossing signs") {
  CHECK(writhe(parse_diagram(kTrefoilLeft)) == -3);
  CHECK(writhe(parse_diagram(kTrefoilRight)) == 3);
  CHECK(writhe(parse_diagram("X 1 1 2 2\n")) == 1);
  CHECK(writhe(parse_diagram("X 1 2 2 1\n")) == -1);
  CHECK(writhe(parse_diagram("X 2 2 3 1\nX 3 4 4 1\n")) == 0);

  auto signs = crossing_signs(parse_diagram(kTrefoilRight));
  CHECK(signs == std::vector<int>{1, 1, 1});
}

TEST_CASE("resolutions of the trefoil") {
  auto left = parse_diagram(kTrefoilLeft);
  auto right = parse_diagram(kTrefoilRight);

  CHECK(resolve(left, 0u).circles.size() == 2);
  CHECK(resolve(left, 7u).circles.size() == 3);
  CHECK(resolve(right, 7u).circles.size() == 2);
  CHECK(resolve(right, 0u).circles.size() == 3);
  CHECK(resolve(right, 0u).sigma == -3);
  CHECK(resolve(right, 7u).sigma == 3);
  CHECK(resolve(right, 5u).sigma == 1);

  for (std::uint32_t m = 0; m < 8; ++m) {
    auto r = resolve(right, m);
    std::size_t total = 0;
    for (auto& c : r.circles) total += c.size();
    CHECK(total == 6);  // every arc in exactly one circle
    for (int a : right.arcs) CHECK(r.arc_circle.count(a));
  }

  // adjacent states differ by one circle
  for (std::uint32_t m = 0; m < 8; ++m)
    for (int v = 0; v < 3; ++v) {
      auto a = resolve(right, m).circles.size();
      auto b = resolve(right, m ^ (1u << v)).circles.size();
      CHECK(((a == b + 1) || (b == a + 1)));
    }

  auto marked = resolve(right, std::vector<int>{1, -1, 1});
  CHECK(marked.sigma == 1);
  CHECK_THROWS_AS(resolve(right, std::vector<int>{1, 1}), structure_error);
  CHECK_THROWS_AS(resolve(right, std::vector<int>{1, 0, 1}), structure_error);
}

TEST_CASE("annular resolutions track winding") {
  auto d = parse_diagram("X 1 2 2 1\nRAY 1 1\nRAY 2 1\n");
  CHECK(d.annular);

  auto plus = resolve(d, 1u);
  REQUIRE(plus.circles.size() == 1);
  CHECK(plus.winding[0] == 0);

  auto minus = resolve(d, 0u);
  REQUIRE(minus.circles.size() == 2);
  CHECK(minus.winding[0] == 1);
  CHECK(minus.winding[1] == 1);

  auto z = parse_diagram("O\nRAYO 1 1\n");
  auto rz = resolve(z, 0u);
  REQUIRE(rz.circles.size() == 1);
  CHECK(rz.winding[0] == 1);
  CHECK(rz.loop_circle == std::vector<int>{0});
}

TEST_CASE("orbit diagram parsing") {
  auto od = parse_orbit_diagram(kTrefoilRightSym);
  CHECK(od.action.p == 3);
  CHECK(od.action.crossing_perm == std::vector<int>{1, 2, 0});
  for (int a = 1; a <= 6; ++a) CHECK(od.action.arc_perm.at(a) == (a + 1) % 6 + 1);

  auto unlink = parse_orbit_diagram("O\nO\nO\nSYM 3\nMAPO 1 2\nMAPO 2 3\nMAPO 3 1\n");
  CHECK(unlink.d.free_loops == 3);
  CHECK(unlink.action.loop_perm == std::vector<int>{1, 2, 0});

  // identity defaults: a fixed diagram under p = 1
  auto id = parse_orbit_diagram("X 1 1 2 2\nSYM 1\n");
  CHECK(id.action.crossing_perm == std::vector<int>{0});

  CHECK_THROWS_AS(parse_orbit_diagram(kTrefoilLeft), parse_error);
  CHECK_THROWS_AS(parse_orbit_diagram("O\nSYM 3\nMAPO 1 5\n"), parse_error);
  // partial map that is not a permutation
  CHECK_THROWS_AS(
      parse_orbit_diagram("X 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\nSYM 3\nMAP 1 2\n"),
      structure_error);
  // wrong order
  CHECK_THROWS_AS(
      parse_orbit_diagram("X 4 2 5 1\nX 6 4 1 3\nX 2 6 3 5\nSYM 2\nMAP 1 2\nMAP 2 3\nMAP 3 1\n"),
      structure_error);
}

TEST_CASE("kink insertion and removal") {
  auto base = parse_diagram(kTrefoilLeft);
  for (int arc : base.arcs)
    for (int ch : {1, -1}) {
      auto k = add_kink(base, arc, ch);
      CHECK(k.d.n() == base.n() + 1);
      CHECK(writhe(k.d) == writhe(base) + ch);

      // the marker that straightens the curl restores the diagram exactly
      auto flat = smooth_crossing(k.d, k.new_crossing, -ch);
      CHECK(same_shape(flat.d, base));
      CHECK(flat.new_loops == 0);
      CHECK(flat.arc_map.at(k.continuation_arc) == arc);

      // the other marker pinches off a little circle
      auto split = smooth_crossing(k.d, k.new_crossing, ch);
      CHECK(split.d.n() == base.n());
      CHECK(split.d.free_loops == base.free_loops + 1);
      CHECK(split.new_loops == 1);
      for (int c = 0; c < base.n(); ++c)
        CHECK(split.d.crossings[c].slot == base.crossings[c].slot);
    }

  auto twisted = add_kink(parse_diagram("X 1 1 2 2\n"), 1, -1);
  CHECK(writhe(twisted.d) == 0);

  CHECK_THROWS_AS(add_kink(base, 99, 1), structure_error);
  CHECK_THROWS_AS(add_kink(parse_diagram("X 1 2 2 1\nRAY 1 1\nRAY 2 1\n"), 1, 1),
                  structure_error);
}

TEST_CASE("kinks along a whole orbit") {
  auto od = parse_orbit_diagram(kTrefoilRightSym);
  for (int ch : {1, -1}) {
    auto ok = add_kink_orbit(od, 1, ch);
    CHECK(ok.steps.size() == 3);
    CHECK(ok.od.d.n() == 6);
    CHECK(writhe(ok.od.d) == 3 + 3 * ch);
    CHECK(ok.od.action.crossing_perm.size() == 6);
    // removing the three curls again gives back the trefoil
    link_diagram cur = ok.od.d;
    for (int j = 2; j >= 0; --j) cur = smooth_crossing(cur, 3 + j, -ch).d;
    CHECK(same_shape(cur, od.d));
  }
}

TEST_CASE("tangle parsing") {
  auto t = parse_tangle("X 1 3 4 2\nLEFT 1 2\nRIGHT 3 4\n");
  CHECK(t.crossings.size() == 1);
  CHECK(t.left == std::vector<int>{1, 2});
  CHECK(t.right == std::vector<int>{3, 4});

  CHECK_THROWS_AS(parse_tangle("X 1 3 4 2\nLEFT 1 2\nRIGHT 3 5\n"), parse_error);
  CHECK_THROWS_AS(parse_tangle("X 1 3 4 2\nLEFT 1\nRIGHT 3 4 2\n"), parse_error);
  CHECK_THROWS_AS(parse_tangle("O\nRAY 1 1\nLEFT\nRIGHT\n"), parse_error);
  CHECK_THROWS_AS(parse_tangle("O\nSYM 2\nLEFT\nRIGHT\n"), parse_error);
}

TEST_CASE("lifting a fundamental domain") {
  tangle sigma1 = parse_tangle("X 1 3 4 2\nLEFT 1 2\nRIGHT 3 4\n");
  sigma1.slot_in = {{1, 0, 0, 1}};

  // p = 1 closes the tangle: one positive curl
  auto closure = lift_fundamental_domain(sigma1, 1);
  CHECK(closure.d.n() == 1);
  CHECK(writhe(closure.d) == 1);
  CHECK(closure.d.crossings[0].slot[0] == closure.d.crossings[0].slot[1]);
  CHECK(closure.d.crossings[0].slot[2] == closure.d.crossings[0].slot[3]);

  // p = 3 gives the positive trefoil with the rotation action
  auto tre = lift_fundamental_domain(sigma1, 3);
  CHECK(tre.d.n() == 3);
  CHECK(tre.action.p == 3);
  CHECK(tre.action.crossing_perm == std::vector<int>{1, 2, 0});
  CHECK(writhe(tre.d) == 3);
  CHECK(resolve(tre.d, 7u).circles.size() == 2);
  CHECK(resolve(tre.d, 0u).circles.size() == 3);

  // annular lift marks the seam: both strands pierce it once
  auto ann = lift_fundamental_domain(sigma1, 3, true);
  CHECK(ann.d.annular);
  REQUIRE(ann.d.arc_rays.size() == 2);
  for (auto& [arc, ray] : ann.d.arc_rays) {
    CHECK(ann.d.forced_dir.at(arc) == ray);
    CHECK((ray == 1 || ray == -1));
  }

  // a single straight strand closes into the core circle
  tangle strand = parse_tangle("LEFT 1\nRIGHT 1\n");
  auto core = lift_fundamental_domain(strand, 3, true);
  CHECK(core.d.n() == 0);
  CHECK(core.d.free_loops == 1);
  CHECK(core.d.loop_rays.at(0) == 1);
  CHECK(core.action.loop_perm == std::vector<int>{0});

  // two strands that trade places close into one loop winding twice
  tangle swap = parse_tangle("LEFT 1 2\nRIGHT 2 1\n");
  auto dbl = lift_fundamental_domain(swap, 3, true);
  CHECK(dbl.d.free_loops == 1);
  CHECK(dbl.d.loop_rays.at(0) == 2);

  // tangle loops are copied p times and cycled
  tangle looped = parse_tangle("O\nLEFT 1\nRIGHT 1\n");
  auto lifted = lift_fundamental_domain(looped, 3);
  CHECK(lifted.d.free_loops == 4);
  CHECK(lifted.action.loop_perm == std::vector<int>{1, 2, 0, 3});
}

TEST_CASE("smoothing keeps remote crossings intact") {
  auto d = parse_diagram(kTrefoilRight);
  for (int v = 0; v < 3; ++v)
    for (int marker : {1, -1}) {
      auto s = smooth_crossing(d, v, marker);
      CHECK(s.d.n() == 2);
      // circle count matches the resolution picture restricted to v
      auto before = resolve(d, marker == 1 ? (1u << v) : 0u);
      (void)before;
      for (auto& [old_arc, new_arc] : s.arc_map) {
        CHECK(s.d.occ.count(new_arc));
        CHECK(new_arc <= old_arc);
      }
    }
  CHECK_THROWS_AS(smooth_crossing(d, 3, 1), structure_error);
  CHECK_THROWS_AS(smooth_crossing(d, 0, 0), structure_error);
}
