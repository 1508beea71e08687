// Command-line frontend: check, stream, explain, gen, bench.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ltl4c/generator.hpp"
#include "ltl4c/pipeline.hpp"
#include "ltl4c/report.hpp"

namespace {

using namespace ltl4c;
using clock_type = std::chrono::steady_clock;

constexpr int exit_failure_usage = 2;

enum class output_format { human, json_lines };

// Effective settings after merging config file, environment and flags.
struct settings {
  std::size_t threads = 1;
  std::size_t batch_size = 65536;
  std::size_t batch_latency_ms = 100;
  output_format format = output_format::human;
  malformed_policy on_malformed = malformed_policy::abort;
  std::uint64_t seed = 1;
  std::vector<std::string> numeric_keys;
};

// Raw flag values; only applied when the flag was given.
struct flags {
  std::size_t threads = 1;
  std::size_t batch_size = 65536;
  std::size_t batch_latency_ms = 100;
  std::string format = "human";
  std::string on_malformed = "abort";
  std::uint64_t seed = 1;
  std::string numeric_keys;
  std::string config;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

output_format parse_format(const std::string& s) {
  if (s == "human")
    return output_format::human;
  if (s == "json-lines")
    return output_format::json_lines;
  throw error("unknown format '" + s + "' (expected human or json-lines)");
}

malformed_policy parse_policy(const std::string& s) {
  if (s == "skip")
    return malformed_policy::skip;
  if (s == "abort")
    return malformed_policy::abort;
  throw error("unknown malformed-record policy '" + s + "' (expected skip or abort)");
}

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || text.empty())
    throw error(std::string("invalid ") + what + " '" + text + "'");
  return static_cast<std::size_t>(v);
}

settings resolve(const CLI::App& cmd, const flags& f) {
  settings s;
  if (!f.config.empty()) {
    auto doc = nlohmann::json::parse(read_file(f.config), nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
      throw error("config " + f.config + " is not a JSON object");
    s.threads = doc.value("threads", s.threads);
    s.batch_size = doc.value("batch_size", s.batch_size);
    s.batch_latency_ms = doc.value("batch_latency_ms", s.batch_latency_ms);
    if (doc.contains("format"))
      s.format = parse_format(doc["format"].get<std::string>());
    if (doc.contains("on_malformed"))
      s.on_malformed = parse_policy(doc["on_malformed"].get<std::string>());
    s.seed = doc.value("seed", s.seed);
    if (doc.contains("numeric_keys"))
      s.numeric_keys = doc["numeric_keys"].get<std::vector<std::string>>();
  }
  if (const char* env = std::getenv("LTL4C_THREADS"); env && *env)
    s.threads = parse_count(env, "LTL4C_THREADS");

  auto given = [&](const char* name) {
    const auto* opt = cmd.get_option_no_throw(name);
    return opt && opt->count() > 0;
  };
  if (given("--threads"))
    s.threads = f.threads;
  if (given("--batch-size"))
    s.batch_size = f.batch_size;
  if (given("--batch-latency-ms"))
    s.batch_latency_ms = f.batch_latency_ms;
  if (given("--format"))
    s.format = parse_format(f.format);
  if (given("--on-malformed"))
    s.on_malformed = parse_policy(f.on_malformed);
  if (given("--seed"))
    s.seed = f.seed;
  if (given("--numeric-keys"))
    s.numeric_keys = split_list(f.numeric_keys);
  if (s.threads == 0)
    throw error("thread count must be positive");
  return s;
}

void add_common(CLI::App* cmd, flags& f) {
  cmd->add_option("--threads", f.threads, "Worker threads (including the caller)");
  cmd->add_option("--format", f.format, "Output format: human or json-lines");
  cmd->add_option("--numeric-keys", f.numeric_keys,
                  "Comma-separated guard keys whose values sort numerically");
  cmd->add_option("--config", f.config, "JSON file with default settings");
}

void add_ingest(CLI::App* cmd, flags& f) {
  cmd->add_option("--on-malformed", f.on_malformed, "Malformed records: skip or abort");
}

property load_property(const std::string& path) { return parse_property(read_file(path)); }

ingest_options ingest_settings(const settings& s) {
  ingest_options o;
  o.on_malformed = s.on_malformed;
  o.warn = [](const ingest_error& e) { fmt::print(stderr, "warning: {}\n", e.what()); };
  return o;
}

pipeline_options pipeline_settings(const settings& s) {
  pipeline_options o;
  o.threads = s.threads;
  o.numeric_keys = s.numeric_keys;
  return o;
}

trace load_trace(const std::string& path, bool strace, std::shared_ptr<symbol_table> symbols,
                 const settings& s) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path, std::ios::binary);
    if (!file)
      throw error("cannot open " + path);
    in = &file;
  }
  if (strace)
    return ingest_strace(*in, std::move(symbols));
  return ingest(*in, std::move(symbols), ingest_settings(s));
}

void print_report(const run_report& r, const symbol_table& symbols, output_format format) {
  if (format == output_format::json_lines)
    fmt::print("{}\n", format_json(r, symbols));
  else
    fmt::print("{}", format_human(r, symbols));
}

int cmd_check(const settings& s, const std::string& property_path, const std::string& trace_path,
              bool strace) {
  const auto p = load_property(property_path);
  auto symbols = std::make_shared<symbol_table>();
  pipeline pipe(p, pipeline_settings(s), symbols);
  const auto u = load_trace(trace_path, strace, symbols, s);
  const auto start = clock_type::now();
  run_offline(pipe, u);
  const std::chrono::duration<double> elapsed = clock_type::now() - start;
  const auto report = make_report(pipe, elapsed.count());
  print_report(report, *symbols, s.format);
  return exit_code(report.verdict);
}

int cmd_stream(const settings& s, const std::string& property_path) {
  const auto p = load_property(property_path);
  pipeline pipe(p, pipeline_settings(s));
  batch_policy policy;
  policy.max_events = s.batch_size;
  policy.max_latency = std::chrono::milliseconds(s.batch_latency_ms);
  std::uint64_t batches = 0;
  run_online(pipe, std::cin, policy, ingest_settings(s), [&](const batch_result& r) {
    batches = r.batch;
    if (s.format == output_format::json_lines)
      fmt::print("{}\n", nlohmann::json{{"batch", r.batch},
                                        {"events", r.events},
                                        {"total_events", r.total_events},
                                        {"verdict", token(r.verdict)}}
                             .dump());
    else
      fmt::print("batch {} events {} total {} verdict {}\n", r.batch, r.events, r.total_events,
                 token(r.verdict));
    std::fflush(stdout);
  });
  if (s.format == output_format::json_lines)
    fmt::print("{}\n", nlohmann::json{{"summary", true},
                                      {"batches", batches},
                                      {"events", pipe.events_processed()},
                                      {"verdict", token(pipe.verdict())}}
                           .dump());
  else
    fmt::print("summary batches {} events {} verdict {}\n", batches, pipe.events_processed(),
               token(pipe.verdict()));
  return exit_code(pipe.verdict());
}

int cmd_explain(const settings& s, const std::string& property_path,
                const std::string& trace_path) {
  const auto p = load_property(property_path);
  auto symbols = std::make_shared<symbol_table>();
  pipeline pipe(p, pipeline_settings(s), symbols);
  if (!trace_path.empty())
    run_offline(pipe, load_trace(trace_path, false, symbols, s));
  fmt::print("property: {}\n", pretty_print(p));
  fmt::print("monitor:\n{}", pipe.fsm().dump());
  fmt::print("tree:\n{}", format_tree(pipe.snapshot(), *symbols));
  fmt::print("verdict: {}\n", token(pipe.verdict()));
  return exit_code(pipe.verdict());
}

struct gen_flags {
  std::string shape = "socket";
  std::uint64_t events = 16384;
  std::uint64_t objects = 100;
  double faulty = 0.02;
  std::string output;
};

void add_gen(CLI::App* cmd, gen_flags& g, flags& f) {
  cmd->add_option("--shape", g.shape, "socket, chunk or cache");
  cmd->add_option("--events", g.events, "Number of events");
  cmd->add_option("--objects", g.objects, "Number of distinct objects");
  cmd->add_option("--faulty", g.faulty, "Fraction of misbehaving objects")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", f.seed, "Random seed");
}

gen_options gen_settings(const gen_flags& g, const settings& s) {
  gen_options o;
  auto shape = parse_shape(g.shape);
  if (!shape)
    throw error("unknown shape '" + g.shape + "'");
  o.shape = *shape;
  o.events = g.events;
  o.objects = g.objects;
  o.seed = s.seed;
  o.faulty = g.faulty;
  return o;
}

int cmd_gen(const settings& s, const gen_flags& g) {
  const auto options = gen_settings(g, s);
  if (g.output.empty() || g.output == "-") {
    std::ios::sync_with_stdio(false);
    write_trace(options, std::cout);
    std::cout.flush();
  } else {
    std::ofstream out(g.output, std::ios::binary);
    if (!out)
      throw error("cannot write " + g.output);
    write_trace(options, out);
  }
  return 0;
}

int cmd_bench(const settings& s, const gen_flags& g, const std::string& property_path,
              const std::string& thread_list, std::size_t repeat) {
  const auto options = gen_settings(g, s);
  const auto p = property_path.empty() ? parse_property(sample_property(options.shape))
                                       : load_property(property_path);
  auto symbols = std::make_shared<symbol_table>();
  const auto u = generate_trace(options, symbols);
  auto fsm = std::make_shared<const monitor_fsm>(synthesize_monitor(p.body));
  fmt::print("{:>8} {:>12} {:>14} {}\n", "threads", "seconds", "events/sec", "verdict");
  for (const auto& item : split_list(thread_list)) {
    const auto threads = parse_count(item, "thread count");
    double best = 0;
    verdict6 v{};
    for (std::size_t r = 0; r < std::max<std::size_t>(repeat, 1); ++r) {
      auto opts = pipeline_settings(s);
      opts.threads = threads;
      pipeline pipe(p, fsm, opts, symbols);
      const auto start = clock_type::now();
      v = run_offline(pipe, u);
      const std::chrono::duration<double> elapsed = clock_type::now() - start;
      if (r == 0 || elapsed.count() < best)
        best = elapsed.count();
    }
    fmt::print("{:>8} {:>12.4f} {:>14.0f} {}\n", threads, best,
               static_cast<double>(u.size()) / best, token(v));
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runtime verification of LTL properties with counting quantifiers"};
  app.require_subcommand(1);
  flags f;
  gen_flags g;
  std::string property_path, trace_path, thread_list = "1,2,4,8";
  std::size_t repeat = 3;
  bool strace = false;

  auto* check = app.add_subcommand("check", "Check a trace file against a property");
  check->add_option("property", property_path, "Property file")->required();
  check->add_option("trace", trace_path, "Trace file (newline-delimited JSON, - for stdin)")
      ->required();
  check->add_flag("--strace", strace, "Read the trace as strace output (best effort)");
  add_common(check, f);
  add_ingest(check, f);

  auto* stream = app.add_subcommand("stream", "Check records read from standard input");
  stream->add_option("property", property_path, "Property file")->required();
  stream->add_option("--batch-size", f.batch_size, "Maximum events per batch");
  stream->add_option("--batch-latency-ms", f.batch_latency_ms,
                     "Maximum wait before a partial batch is evaluated");
  add_common(stream, f);
  add_ingest(stream, f);

  auto* explain = app.add_subcommand("explain", "Dump the monitor and the instance tree");
  explain->add_option("property", property_path, "Property file")->required();
  explain->add_option("trace", trace_path, "Trace file");
  add_common(explain, f);
  add_ingest(explain, f);

  auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
  add_gen(gen, g, f);
  gen->add_option("-o,--output", g.output, "Output file (default stdout)");
  gen->add_option("--config", f.config, "JSON file with default settings");

  auto* bench = app.add_subcommand("bench", "Time offline checks on a generated trace");
  bench->add_option("property", property_path, "Property file (default: one fitting the shape)");
  add_gen(bench, g, f);
  bench->add_option("--thread-list", thread_list, "Comma-separated thread counts");
  bench->add_option("--repeat", repeat, "Runs per thread count; the best is reported");
  bench->add_option("--numeric-keys", f.numeric_keys, "Guard keys that sort numerically");
  bench->add_option("--config", f.config, "JSON file with default settings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_failure_usage;
  }

  try {
    CLI::App* cmd = app.get_subcommands().front();
    const auto s = resolve(*cmd, f);
    if (cmd == check)
      return cmd_check(s, property_path, trace_path, strace);
    if (cmd == stream)
      return cmd_stream(s, property_path);
    if (cmd == explain)
      return cmd_explain(s, property_path, trace_path);
    if (cmd == gen)
      return cmd_gen(s, g);
    return cmd_bench(s, g, property_path, thread_list, repeat);
  } catch (const parse_error& e) {
    fmt::print(stderr, "{}: {}\n", property_path, e.what());
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
  }
  return exit_failure_usage;
}
