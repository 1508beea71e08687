#include "ltl4c/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace ltl4c {

run_report make_report(const pipeline& p, double elapsed_seconds) {
  run_report r;
  r.verdict = p.verdict();
  for (auto& n : p.snapshot())
    if (!n.leaf)
      r.nodes.push_back(std::move(n));
  r.events = p.events_processed();
  r.elapsed_seconds = elapsed_seconds;
  r.threads = p.threads();
  return r;
}

std::string path_text(const value_vector& path, const symbol_table& symbols) {
  std::string out = "<";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i)
      out += ',';
    out += symbols.name(path[i]);
  }
  out += '>';
  return out;
}

namespace {

std::string counts_text(const truth_vector& v) {
  // Lattice order, top first.
  return fmt::format("T={} Tc={} Tp={} Fp={} Fc={} F={}", v[verdict6::top],
                     v[verdict6::currently_true], v[verdict6::presumably_true],
                     v[verdict6::presumably_false], v[verdict6::currently_false],
                     v[verdict6::bottom]);
}

} // namespace

std::string format_tree(const std::vector<node_snapshot>& nodes, const symbol_table& symbols) {
  std::string out;
  for (const auto& n : nodes) {
    if (n.leaf)
      out += fmt::format("{} leaf {}{}\n", path_text(n.path, symbols), token(n.b),
                         n.settled ? " settled" : "");
    else
      out += fmt::format("{} [{}] {} {}{}\n", path_text(n.path, symbols), pretty_print(*n.quant),
                         counts_text(n.v), token(n.b), n.settled ? " settled" : "");
  }
  return out;
}

std::string format_human(const run_report& r, const symbol_table& symbols) {
  std::string out = fmt::format("verdict: {} ({})\nevents: {}\nelapsed: {:.6f} s\nthreads: {}\n",
                                token(r.verdict), symbol_of(r.verdict), r.events,
                                r.elapsed_seconds, r.threads);
  if (!r.nodes.empty()) {
    out += "nodes:\n";
    out += format_tree(r.nodes, symbols);
  }
  return out;
}

std::string format_json(const run_report& r, const symbol_table& symbols) {
  using nlohmann::json;
  json nodes = json::array();
  for (const auto& n : r.nodes) {
    json path = json::array();
    for (auto s : n.path)
      path.push_back(symbols.name(s));
    json counts = json::object();
    for (auto v : all_verdicts6)
      counts[std::string(token(v))] = n.v[v];
    nodes.push_back({{"path", std::move(path)},
                     {"quantifier", pretty_print(*n.quant)},
                     {"counts", std::move(counts)},
                     {"verdict", token(n.b)},
                     {"settled", n.settled}});
  }
  json doc = {{"schema_version", report_schema_version},
              {"verdict", token(r.verdict)},
              {"events", r.events},
              {"elapsed_seconds", r.elapsed_seconds},
              {"threads", r.threads},
              {"nodes", std::move(nodes)}};
  return doc.dump();
}

} // namespace ltl4c
