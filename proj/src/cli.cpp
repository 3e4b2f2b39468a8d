#include "eqkh/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "eqkh/annular.hpp"
#include "eqkh/chromatic.hpp"
#include "eqkh/equivariant.hpp"
#include "eqkh/errors.hpp"
#include "eqkh/khovanov.hpp"
#include "eqkh/oracles.hpp"
#include "eqkh/table.hpp"

namespace eqkh {

namespace {

using nlohmann::json;

struct run_config {
  std::string input;
  kh_flavor flavor = kh_flavor::oriented;
  bool json_out = false;
  int cap = 16;
  bool allow_even_p = false;
  int jobs = 1;
};

int default_cap() {
  if (const char* env = std::getenv("EQKH_CAP")) {
    try {
      std::size_t used = 0;
      int v = std::stoi(env, &used);
      if (used == std::string(env).size() && v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 16;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// First whitespace token of any line, with '#' comments and '/' separators
// handled as in the file formats.
bool has_keyword(const std::string& text, const std::string& kw) {
  std::string clean;
  bool comment = false;
  for (char ch : text) {
    if (ch == '#') comment = true;
    if (ch == '\n') comment = false;
    if (ch == '/') ch = '\n';
    clean += comment ? (ch == '\n' ? '\n' : ' ') : ch;
  }
  std::istringstream all(clean);
  std::string line;
  while (std::getline(all, line)) {
    std::istringstream ls(line);
    std::string first;
    if (ls >> first && first == kw) return true;
  }
  return false;
}

bool looks_like_graph(const std::string& text) {
  return has_keyword(text, "V") || has_keyword(text, "AUT");
}

// Renders one result object as labeled lines or as a single JSON document.
class emitter {
 public:
  emitter(std::ostream& out, bool as_json) : out_(out), as_json_(as_json) {}

  void field(const std::string& key, const homology_table& t) {
    if (as_json_)
      obj_[key] = json::parse(format_json(t));
    else
      out_ << key << ": " << format_table(t) << "\n";
  }
  void field(const std::string& key, const std::string& value) {
    if (as_json_)
      obj_[key] = value;
    else
      out_ << key << ": " << value << "\n";
  }
  void flush() {
    if (as_json_) out_ << obj_.dump(2) << "\n";
  }

 private:
  std::ostream& out_;
  bool as_json_;
  json obj_;
};

std::string comparison_status(int p, const std::vector<grading>& mismatches) {
  if (p % 2 == 0) return "SKIP (even group order)";
  return mismatches.empty() ? "PASS" : "FAIL";
}

int cmd_kh(const run_config& cfg, std::ostream& out) {
  auto d = parse_diagram(read_file(cfg.input));
  auto kc = build_khovanov_complex(d, cfg.flavor, cfg.cap);
  auto dims = kc.cx.homology(cfg.jobs);
  emitter em(out, cfg.json_out);
  em.field("homology", make_table(dims, 2));
  em.field(cfg.flavor == kh_flavor::oriented ? "jones" : "euler",
           euler_polynomial(dims).to_string());
  em.flush();
  return 0;
}

int cmd_kheq(const run_config& cfg, std::ostream& out) {
  auto od = parse_orbit_diagram(read_file(cfg.input));
  auto res = build_equivariant(od, cfg.flavor, cfg.cap, cfg.allow_even_p, cfg.jobs);
  emitter em(out, cfg.json_out);
  em.field("total", res.homology);
  em.field("equivariant", res.quotient_homology);
  em.field("fixed", res.fixed_dims);
  em.field(cfg.flavor == kh_flavor::oriented ? "jones_g" : "euler_g",
           res.equivariant_jones.to_string());
  em.field("fixed-subspace check", comparison_status(od.action.p, res.mismatches));
  em.flush();
  return 0;
}

int cmd_annular(const run_config& cfg, std::ostream& out, std::ostream& err) {
  std::string text = read_file(cfg.input);
  emitter em(out, cfg.json_out);
  if (has_keyword(text, "SYM")) {
    auto od = parse_orbit_diagram(text);
    auto res = build_annular_equivariant(od, cfg.cap, cfg.allow_even_p, cfg.jobs);
    for (auto& w : res.total.warnings) err << "warning: " << w << "\n";
    em.field("total", res.homology);
    em.field("equivariant", res.quotient_homology);
    em.field("fixed", res.fixed_dims);
    em.field("fixed-subspace check", comparison_status(od.action.p, res.mismatches));
  } else {
    auto ac = build_annular_complex(parse_diagram(text), cfg.cap);
    for (auto& w : ac.warnings) err << "warning: " << w << "\n";
    em.field("homology", make_table(ac.cx.homology(cfg.jobs), 3));
  }
  em.flush();
  return 0;
}

int cmd_graph(const run_config& cfg, std::ostream& out) {
  auto g = parse_graph(read_file(cfg.input));
  auto gc = build_graph_complex(g, cfg.cap);
  auto ck = chromatic_euler_check(gc);
  emitter em(out, cfg.json_out);
  em.field("homology", make_table(gc.cx.homology(cfg.jobs), 2));
  em.field("chromatic", ck.from_euler.to_string("λ"));
  em.field("euler check", ck.match ? "PASS" : "FAIL");
  em.flush();
  return 0;
}

int cmd_grapheq(const run_config& cfg, std::ostream& out) {
  auto g = parse_graph(read_file(cfg.input));
  auto res = build_graph_equivariant(g, cfg.cap, cfg.allow_even_p, cfg.jobs);
  auto ck = chromatic_euler_check(res.total);
  emitter em(out, cfg.json_out);
  em.field("total", res.homology);
  em.field("equivariant", res.quotient_homology);
  em.field("fixed", res.fixed_dims);
  em.field("chromatic", ck.from_euler.to_string("λ"));
  em.field("euler check", ck.match ? "PASS" : "FAIL");
  em.field("fixed-subspace check", comparison_status(g.p, res.mismatches));
  em.flush();
  return 0;
}

// Collected PASS/FAIL/SKIP lines for the verify command.
struct check_log {
  std::ostream& out;
  bool as_json = false;
  json checks = json::array();
  bool failed = false;

  void add(const std::string& name, const std::string& status) {
    if (as_json)
      checks.push_back({{"name", name}, {"status", status}});
    else
      out << name << ": " << status << "\n";
    if (status == "FAIL") failed = true;
  }
  void result(const std::string& name, bool ok) { add(name, ok ? "PASS" : "FAIL"); }
  void flush() {
    if (as_json) out << json{{"checks", checks}}.dump(2) << "\n";
  }
};

template <typename F>
bool passes(F&& f) {
  try {
    f();
    return true;
  } catch (const structure_error&) {
    return false;
  }
}

// π t = id for odd p (zero for even), action and transfer commute with the
// differentials on both sides.
bool transfer_identities(const graded_complex& total, const quotient_complex& q) {
  for (auto& [g, proj] : q.projection) {
    const f2_matrix& t = q.transfer.at(g);
    f2_matrix pt = proj.multiply(t);
    f2_matrix expect = (q.p % 2 == 1) ? f2_matrix::identity(pt.rows())
                                      : f2_matrix(pt.rows(), pt.cols());
    if (!(pt == expect)) return false;

    grading ng = total.next(g);
    auto up = q.projection.find(ng);
    if (up == q.projection.end()) continue;
    f2_matrix d = total.diff_at(g);
    f2_matrix dbar = q.cx.diff_at(g);
    if (!(up->second.multiply(d) == dbar.multiply(proj))) return false;
    if (!(d.multiply(t) == q.transfer.at(ng).multiply(dbar))) return false;
  }
  return true;
}

void verify_diagram(const std::string& text, const run_config& cfg, check_log& log,
                    std::ostream& err) {
  std::optional<orbit_diagram> od;
  if (has_keyword(text, "SYM")) od = parse_orbit_diagram(text);
  link_diagram d = od ? od->d : parse_diagram(text);

  auto co = build_khovanov_complex(d, kh_flavor::oriented, cfg.cap);
  auto cf = build_khovanov_complex(d, kh_flavor::framed, cfg.cap);
  log.result("oriented differential squares to zero", passes([&] { co.cx.check_d2(); }));
  log.result("framed differential squares to zero", passes([&] { cf.cx.check_d2(); }));

  auto dims = co.cx.homology(cfg.jobs);
  log.result("euler matches the normalized bracket",
             euler_polynomial(dims) == jones_from_bracket(bracket_statesum(d), writhe(d)));

  try {
    bool ok = dense_homology(co.cx) == dims && dense_homology(cf.cx) == cf.cx.homology(cfg.jobs);
    log.result("dense and sparse homology agree", ok);
  } catch (const cap_error&) {
    log.add("dense and sparse homology agree", "SKIP (dense cap)");
  }

  if (d.n() == 0) {
    log.add("skein sequences are exact", "SKIP (no crossings)");
  } else {
    link_diagram classical = d;
    classical.annular = false;
    classical.arc_rays.clear();
    classical.loop_rays.clear();
    bool ok = true;
    for (int v = 0; v < classical.n(); ++v)
      ok = ok && skein_exactness_check(classical, v, cfg.cap).violations.empty();
    log.result("skein sequences are exact", ok);
  }

  if (od) {
    for (kh_flavor fl : {kh_flavor::oriented, kh_flavor::framed}) {
      std::string label = fl == kh_flavor::oriented ? "oriented " : "framed ";
      auto res = build_equivariant(*od, fl, cfg.cap, cfg.allow_even_p, cfg.jobs);
      log.result(label + "orbit transfer identities hold",
                 transfer_identities(res.total.cx, res.quot));
      log.result(label + "burnside count equals the quotient dimensions",
                 burnside_quotient_dims(*od, fl, cfg.cap) == res.quot.cx.dims());
      if (od->action.p % 2 == 1)
        log.result(label + "fixed subspace matches the quotient homology",
                   res.mismatches.empty());
      else
        log.add(label + "fixed subspace matches the quotient homology",
                "SKIP (even group order)");
    }
  }

  if (d.annular) {
    auto ac = build_annular_complex(d, cfg.cap);
    for (auto& w : ac.warnings) err << "warning: " << w << "\n";
    log.result("annular differential squares to zero", passes([&] { ac.cx.check_d2(); }));
    std::map<grading, int> folded;
    for (auto& [g3, dim] : ac.cx.dims()) folded[{g3[0], g3[1], 0}] += dim;
    log.result("annular weights split the framed complex", folded == cf.cx.dims());
    laurent lhs;
    for (auto& [g3, dim] : ac.cx.dims())
      lhs.add_term(4 * g3[0] + g3[1], ((g3[0] + g3[1]) % 2 == 0) ? dim : -dim);
    log.result("annular euler matches the bracket", lhs == bracket_statesum(d));
    if (od) {
      auto ares = build_annular_equivariant(*od, cfg.cap, cfg.allow_even_p, cfg.jobs);
      log.result("annular orbit transfer identities hold",
                 transfer_identities(ares.total.cx, ares.quot));
      log.result("annular burnside count equals the quotient dimensions",
                 burnside_quotient_dims(*od, kh_flavor::framed, cfg.cap, true) ==
                     ares.quot.cx.dims());
      if (od->action.p % 2 == 1)
        log.result("annular fixed subspace matches the quotient homology",
                   ares.mismatches.empty());
      else
        log.add("annular fixed subspace matches the quotient homology",
                "SKIP (even group order)");
    }
  }
}

void verify_graph(const std::string& text, const run_config& cfg, check_log& log) {
  auto g = parse_graph(text);
  auto gc = build_graph_complex(g, cfg.cap);
  log.result("graph differential squares to zero", passes([&] { gc.cx.check_d2(); }));
  log.result("euler matches deletion-contraction", chromatic_euler_check(gc).match);
  try {
    log.result("dense and sparse homology agree",
               dense_homology(gc.cx) == gc.cx.homology(cfg.jobs));
  } catch (const cap_error&) {
    log.add("dense and sparse homology agree", "SKIP (dense cap)");
  }
  if (!g.aut.empty()) {
    auto res = build_graph_equivariant(g, cfg.cap, cfg.allow_even_p, cfg.jobs);
    log.result("orbit transfer identities hold", transfer_identities(res.total.cx, res.quot));
    log.result("burnside count equals the quotient dimensions",
               burnside_graph_dims(g, cfg.cap) == res.quot.cx.dims());
    if (g.p % 2 == 1)
      log.result("fixed subspace matches the quotient homology", res.mismatches.empty());
    else
      log.add("fixed subspace matches the quotient homology", "SKIP (even group order)");
  }
}

int cmd_verify(const run_config& cfg, std::ostream& out, std::ostream& err) {
  std::string text = read_file(cfg.input);
  check_log log{out, cfg.json_out};
  if (looks_like_graph(text))
    verify_graph(text, cfg, log);
  else
    verify_diagram(text, cfg, log, err);
  log.flush();
  return log.failed ? 3 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"equivariant homology of symmetric links and graphs"};
  app.require_subcommand(1);

  run_config cfg;
  cfg.cap = default_cap();
  std::string flavor = "oriented";
  std::string format = "table";

  auto* kh = app.add_subcommand("kh", "homology of a link diagram");
  auto* kheq = app.add_subcommand("kheq", "equivariant homology of a symmetric diagram");
  auto* annular = app.add_subcommand("annular", "annular homology of a diagram with rays");
  auto* graph = app.add_subcommand("graph", "chromatic graph homology");
  auto* grapheq = app.add_subcommand("grapheq", "equivariant chromatic graph homology");
  auto* verify = app.add_subcommand("verify", "run the verification suite on one input");

  for (auto* sub : {kh, kheq, annular, graph, grapheq, verify}) {
    sub->add_option("input", cfg.input, "input file")->required();
    sub->add_option("--format", format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--cap", cfg.cap, "crossing/edge cap (default EQKH_CAP or 16)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--jobs", cfg.jobs, "parallel homology workers")
        ->check(CLI::PositiveNumber);
  }
  for (auto* sub : {kh, kheq})
    sub->add_option("--flavor", flavor, "oriented or framed")
        ->check(CLI::IsMember({"oriented", "framed"}));
  for (auto* sub : {kheq, annular, grapheq, verify})
    sub->add_flag("--allow-even-p", cfg.allow_even_p, "compute even group orders anyway");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  cfg.flavor = flavor == "framed" ? kh_flavor::framed : kh_flavor::oriented;
  cfg.json_out = format == "json";

  try {
    if (kh->parsed()) return cmd_kh(cfg, out);
    if (kheq->parsed()) return cmd_kheq(cfg, out);
    if (annular->parsed()) return cmd_annular(cfg, out, err);
    if (graph->parsed()) return cmd_graph(cfg, out);
    if (grapheq->parsed()) return cmd_grapheq(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
  } catch (const parse_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const cap_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const even_order_error& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  } catch (const structure_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace eqkh
