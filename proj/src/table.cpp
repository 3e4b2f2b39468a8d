#include "eqkh/table.hpp"

#include <algorithm>
#include <sstream>

#include "eqkh/errors.hpp"
#include "json.hpp"

namespace eqkh {

homology_table make_table(const std::map<grading, int>& dims, int arity) {
  homology_table t;
  t.arity = arity;
  for (auto& [g, d] : dims)
    if (d != 0) t.entries.emplace_back(g, d);
  std::sort(t.entries.begin(), t.entries.end());
  return t;
}

std::string format_table(const homology_table& t) {
  auto sorted = t.entries;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) {
    if (a.first[0] != b.first[0]) return a.first[0] < b.first[0];
    if (a.first[1] != b.first[1]) return a.first[1] > b.first[1];
    return a.first[2] > b.first[2];
  });
  std::ostringstream out;
  for (std::size_t e = 0; e < sorted.size(); ++e) {
    if (e) out << ' ';
    out << '(';
    for (int a = 0; a < t.arity; ++a) out << (a ? "," : "") << sorted[e].first[a];
    out << "):" << sorted[e].second;
  }
  return out.str();
}

std::string format_json(const homology_table& t) {
  nlohmann::ordered_json j;
  j["arity"] = t.arity;
  j["entries"] = nlohmann::ordered_json::array();
  for (auto& [g, d] : t.entries) {
    nlohmann::ordered_json e;
    e["gradings"] = std::vector<int>(g.begin(), g.begin() + t.arity);
    e["dim"] = d;
    j["entries"].push_back(std::move(e));
  }
  return j.dump();
}

homology_table parse_table_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("bad table JSON: ") + e.what());
  }
  homology_table t;
  if (!j.contains("arity") || !j.contains("entries"))
    throw parse_error("table JSON needs 'arity' and 'entries'");
  t.arity = j["arity"].get<int>();
  if (t.arity < 1 || t.arity > 3) throw parse_error("table arity out of range");
  for (auto& e : j["entries"]) {
    auto gs = e["gradings"].get<std::vector<int>>();
    if (static_cast<int>(gs.size()) != t.arity)
      throw parse_error("table entry has the wrong number of gradings");
    grading g{0, 0, 0};
    std::copy(gs.begin(), gs.end(), g.begin());
    t.entries.emplace_back(g, e["dim"].get<int>());
  }
  return t;
}

laurent euler_polynomial(const std::map<grading, int>& dims) {
  laurent p;
  for (auto& [g, d] : dims) {
    int sign = (g[0] % 2 == 0) ? 1 : -1;
    p = p + laurent::monomial(sign * static_cast<std::int64_t>(d), g[1]);
  }
  return p;
}

}  // namespace eqkh
