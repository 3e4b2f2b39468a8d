#include "eqkh/cli.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "eqkh/table.hpp"

namespace {

using namespace eqkh;

std::string data(const std::string& name) {
  return std::string(EQKH_TEST_DATA_DIR) + "/" + name;
}

struct cli_run {
  int code = 0;
  std::string out;
  std::string err;
};

cli_run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  cli_run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("kh prints the homology table and polynomial") {
  auto r = run({"kh", data("unknot.dgm")});
  CHECK(r.code == 0);
  CHECK(r.out == "homology: (0,1):1 (0,-1):1\njones: q+q^-1\n");
  CHECK(r.err.empty());

  auto framed = run({"kh", data("unknot.dgm"), "--flavor", "framed"});
  CHECK(framed.code == 0);
  CHECK(contains(framed.out, "euler: "));

  auto tref = run({"kh", data("trefoil.dgm")});
  CHECK(tref.code == 0);
  CHECK(contains(tref.out, "homology: (0,3):1 (0,1):1 (2,7):1 (2,5):1 (3,9):1 (3,7):1\n"));
  CHECK(contains(tref.out, "jones: -q^9+q^5+q^3+q\n"));
}

TEST_CASE("kheq prints the equivariant data") {
  auto r = run({"kheq", data("trefoil_sym.dgm")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "total: (0,3):1 (0,1):1 (2,7):1 (2,5):1 (3,9):1 (3,7):1\n"));
  CHECK(contains(r.out, "equivariant: (0,3):1 (0,1):1 (2,7):1 (2,5):1 (3,9):1 (3,7):1\n"));
  CHECK(contains(r.out, "jones_g: -q^9+q^5+q^3+q\n"));
  CHECK(contains(r.out, "fixed-subspace check: PASS\n"));

  auto unlink = run({"kheq", data("unlink3_sym.dgm")});
  CHECK(unlink.code == 0);
  CHECK(contains(unlink.out, "total: (0,3):1 (0,1):3 (0,-1):3 (0,-3):1\n"));
  CHECK(contains(unlink.out, "equivariant: (0,3):1 (0,1):1 (0,-1):1 (0,-3):1\n"));
  CHECK(contains(unlink.out, "jones_g: q^3+q+q^-1+q^-3\n"));

  auto plain = run({"kheq", data("trefoil.dgm")});
  CHECK(plain.code == 1);  // no SYM line
  CHECK(contains(plain.err, "SYM"));
}

TEST_CASE("even group orders exit with the dedicated code") {
  auto gated = run({"kheq", data("unlink2_sym2.dgm")});
  CHECK(gated.code == 4);
  CHECK(contains(gated.err, "odd order is a hypothesis"));

  auto forced = run({"kheq", data("unlink2_sym2.dgm"), "--allow-even-p"});
  CHECK(forced.code == 0);
  CHECK(contains(forced.out, "fixed-subspace check: SKIP (even group order)\n"));

  auto graph_gated = run({"grapheq", data("p2_swap.gr")});
  CHECK(graph_gated.code == 4);
  auto graph_forced = run({"grapheq", data("p2_swap.gr"), "--allow-even-p"});
  CHECK(graph_forced.code == 0);
  CHECK(contains(graph_forced.out, "fixed-subspace check: SKIP (even group order)\n"));
}

TEST_CASE("json output round-trips and is identical across workers") {
  auto r = run({"kh", data("trefoil.dgm"), "--format", "json"});
  CHECK(r.code == 0);
  auto obj = nlohmann::json::parse(r.out);
  CHECK(obj["jones"] == "-q^9+q^5+q^3+q");
  homology_table expected = make_table({{{0, 1, 0}, 1},
                                        {{0, 3, 0}, 1},
                                        {{2, 5, 0}, 1},
                                        {{2, 7, 0}, 1},
                                        {{3, 7, 0}, 1},
                                        {{3, 9, 0}, 1}},
                                       2);
  CHECK(parse_table_json(obj["homology"].dump()) == expected);

  auto wide = run({"kh", data("trefoil.dgm"), "--format", "json", "--jobs", "4"});
  CHECK(wide.out == r.out);

  auto eq = run({"kheq", data("trefoil_sym.dgm"), "--format", "json"});
  CHECK(eq.code == 0);
  auto eobj = nlohmann::json::parse(eq.out);
  CHECK(eobj["fixed-subspace check"] == "PASS");
  CHECK(parse_table_json(eobj["equivariant"].dump()) == expected);
  auto eq4 = run({"kheq", data("trefoil_sym.dgm"), "--format", "json", "--jobs", "3"});
  CHECK(eq4.out == eq.out);

  auto ver = run({"verify", data("trefoil_sym.dgm"), "--format", "json"});
  CHECK(ver.code == 0);
  auto vobj = nlohmann::json::parse(ver.out);
  for (auto& c : vobj["checks"]) CHECK(c["status"] != "FAIL");
}

TEST_CASE("annular command prints three-axis tables") {
  auto r = run({"annular", data("annular_unknot.dgm")});
  CHECK(r.code == 0);
  CHECK(r.out == "homology: (-2,3,-2):1 (-1,3,0):1 (0,-1,0):1 (2,-5,2):1\n");

  auto sym = run({"annular", data("annular_circles_sym.dgm")});
  CHECK(sym.code == 0);
  CHECK(contains(sym.out, "equivariant: (-3,6,-3):1 (-1,2,-1):1 (1,-2,1):1 (3,-6,3):1\n"));
  CHECK(contains(sym.out, "fixed-subspace check: PASS\n"));

  auto dry = run({"annular", data("trefoil.dgm")});
  CHECK(dry.code == 1);  // no ray data
}

TEST_CASE("graph commands print homology and the euler check") {
  auto r = run({"graph", data("p2.gr")});
  CHECK(r.code == 0);
  CHECK(r.out == "homology: (0,2):1 (0,1):1\nchromatic: λ^2-λ\neuler check: PASS\n");

  auto eq = run({"grapheq", data("edgeless3_rot.gr")});
  CHECK(eq.code == 0);
  CHECK(contains(eq.out, "equivariant: (0,3):1 (0,2):1 (0,1):1 (0,0):1\n"));
  CHECK(contains(eq.out, "fixed-subspace check: PASS\n"));

  auto tri = run({"grapheq", data("triangle_rot.gr")});
  CHECK(tri.code == 0);
  CHECK(contains(tri.out, "euler check: PASS\n"));
  CHECK(contains(tri.out, "fixed-subspace check: PASS\n"));

  auto plain = run({"grapheq", data("p2.gr")});
  CHECK(plain.code == 1);  // no AUT line
}

TEST_CASE("verify runs the suite and reports by exit code") {
  for (const char* name : {"unknot.dgm", "trefoil.dgm", "trefoil_sym.dgm", "unlink3_sym.dgm",
                           "annular_unknot.dgm", "annular_circles_sym.dgm", "p2.gr",
                           "triangle_rot.gr", "edgeless3_rot.gr"}) {
    auto r = run({"verify", data(name)});
    CAPTURE(name);
    CHECK(r.code == 0);
    CHECK(!contains(r.out, "FAIL"));
    CHECK(contains(r.out, "PASS"));
  }
  auto even = run({"verify", data("unlink2_sym2.dgm"), "--allow-even-p"});
  CHECK(even.code == 0);
  CHECK(contains(even.out, "SKIP (even group order)"));
}

TEST_CASE("cli failure modes map to exit codes") {
  CHECK(run({"kh", data("broken.dgm")}).code == 1);
  CHECK(run({"kh", data("missing.dgm")}).code == 1);
  CHECK(run({"kh", data("trefoil.dgm"), "--cap", "2"}).code == 2);
  CHECK(run({"kh", data("unknot.dgm"), "--format", "xml"}).code == 1);
  CHECK(run({"nope", data("unknot.dgm")}).code == 1);
  CHECK(run({}).code == 1);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "kh"));
}

#ifdef EQKH_CLI_PATH
TEST_CASE("the standalone binary behaves like the library entry") {
  std::string cmd = std::string(EQKH_CLI_PATH) + " kh " + data("unknot.dgm") + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string got;
  char buf[256];
  while (fgets(buf, sizeof buf, pipe)) got += buf;
  CHECK(pclose(pipe) == 0);
  CHECK(got == "homology: (0,1):1 (0,-1):1\njones: q+q^-1\n");

  std::string bad = std::string(EQKH_CLI_PATH) + " kheq " + data("unlink2_sym2.dgm") +
                    " 2>/dev/null";
  FILE* pipe2 = popen(bad.c_str(), "r");
  REQUIRE(pipe2 != nullptr);
  while (fgets(buf, sizeof buf, pipe2)) {
  }
  int status = pclose(pipe2);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 4);
}
#endif
